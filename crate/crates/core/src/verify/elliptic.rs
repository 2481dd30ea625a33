//! Elliptic curves over small prime fields: reduction from Q, full point
//! enumeration, group structure and discrete logarithms.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::PrimeField;
use crate::error::{Error, Result};
use crate::genus_one::{EcPoint, RationalCurve, RationalPoint, Weierstrass};

pub type FpCurve = Weierstrass<PrimeField>;
pub type FpPoint = EcPoint<u64>;

/// Reduction of a Weierstrass model modulo an odd prime of good reduction
/// (`p` divides no denominator of the coefficients and not `Δ`).
pub fn reduce_curve(e: &RationalCurve, p: u64) -> Result<FpCurve> {
    if p < 3 {
        return Err(Error::BadReduction(p));
    }
    let f = PrimeField::new(p);
    let red = |q: &crate::arith::Rational| q.mod_p(p).ok_or(Error::BadReduction(p));
    let (a2, a4, a6) = (red(&e.a2)?, red(&e.a4)?, red(&e.a6)?);
    let ep = Weierstrass::new(f, a2, a4, a6);
    if ep.discriminant() == 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(ep)
}

/// Image of a rational point under reduction; points whose `x` has `p` in
/// the denominator reduce to the identity.
pub fn reduce_point(pt: &RationalPoint, p: u64) -> FpPoint {
    let (x, y) = pt.as_ref()?;
    let xr = x.mod_p(p)?;
    let yr = y.mod_p(p).expect("y is p-integral when x is");
    Some((xr, yr))
}

/// All affine points, sorted.
pub fn enumerate_points(e: &FpCurve) -> Vec<(u64, u64)> {
    let p = e.ctx.modulus();
    let mut out = Vec::new();
    for x in 0..p {
        let r = e.rhs(&x);
        if r == 0 {
            out.push((x, 0));
        } else if let Some(s) = e.ctx.sqrt(r) {
            let t = p - s;
            out.push((x, s.min(t)));
            out.push((x, s.max(t)));
        }
    }
    out
}

/// Column operations are tracked so that coordinates can be moved to the
/// diagonal basis: returns the diagonal, `V` and `V^{-1}` with `U A V = D`.
fn smith(mut a: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let t = a.len();
    let ident = |n: usize| (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect::<Vec<_>>()).collect::<Vec<_>>();
    let mut v = ident(t);
    let mut vinv = ident(t);
    for s in 0..t {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in s..t {
                for j in s..t {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(s, bi);
            if bj != s {
                for row in a.iter_mut() {
                    row.swap(s, bj);
                }
                for row in v.iter_mut() {
                    row.swap(s, bj);
                }
                vinv.swap(s, bj);
            }
            let mut clean = true;
            for i in s + 1..t {
                let q = a[i][s].div_euclid(a[s][s]);
                if q != 0 {
                    for j in 0..t {
                        a[i][j] -= q * a[s][j];
                    }
                }
                clean &= a[i][s] == 0;
            }
            for j in s + 1..t {
                let q = a[s][j].div_euclid(a[s][s]);
                if q != 0 {
                    for i in 0..t {
                        a[i][j] -= q * a[i][s];
                        v[i][j] -= q * v[i][s];
                    }
                    for k in 0..t {
                        vinv[s][k] += q * vinv[j][k];
                    }
                }
                clean &= a[s][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (s + 1..t).flat_map(|i| (s + 1..t).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % a[s][s] != 0);
            match bad {
                None => break,
                Some((i, _)) => {
                    for j in 0..t {
                        a[s][j] += a[i][j];
                    }
                }
            }
        }
        if a[s][s] < 0 {
            for j in 0..t {
                a[s][j] = -a[s][j];
            }
        }
    }
    ((0..t).map(|i| a[i][i]).collect(), v, vinv)
}

/// `E(F_p) ≅ Z/n_1 × ... × Z/n_r` with `n_{i+1} | n_i`, with a point table
/// giving discrete logarithms in the basis of the listed generators.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub prime: u64,
    pub order: u64,
    pub invariants: Vec<u64>,
    pub generators: Vec<FpPoint>,
    curve: FpCurve,
    /// Coefficients with respect to the raw generators found while building.
    table: HashMap<FpPoint, Vec<i64>>,
    /// Change of basis to the invariant-factor coordinates, as `(V, moduli)`
    /// restricted to the non-trivial factors.
    v: Vec<Vec<i128>>,
    keep: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub prime: u64,
    pub order: u64,
    pub invariants: Vec<u64>,
}

impl GroupData {
    pub fn new(curve: &FpCurve) -> Self {
        let pts = enumerate_points(curve);
        let order = pts.len() as u64 + 1;
        let mut table: HashMap<FpPoint, Vec<i64>> = HashMap::with_capacity(order as usize);
        table.insert(None, vec![]);
        let mut raw_gens: Vec<FpPoint> = Vec::new();
        let mut rels: Vec<Vec<i64>> = Vec::new();
        for &pt in &pts {
            if table.len() as u64 == order {
                break;
            }
            let r = Some(pt);
            if table.contains_key(&r) {
                continue;
            }
            let idx = raw_gens.len();
            let mut m = 1i64;
            let mut mult = r;
            while !table.contains_key(&mult) {
                mult = curve.add(&mult, &r);
                m += 1;
            }
            let mut rel = table[&mult].iter().map(|c| -c).collect::<Vec<_>>();
            rel.resize(idx, 0);
            rel.push(m);
            for c in table.values_mut() {
                c.push(0);
            }
            for row in rels.iter_mut() {
                row.push(0);
            }
            rels.push(rel);
            raw_gens.push(r);
            let old: Vec<(FpPoint, Vec<i64>)> = table.iter().map(|(k, v)| (*k, v.clone())).collect();
            let mut shift = r;
            for s in 1..m {
                for (q, c) in &old {
                    let mut c2 = c.clone();
                    c2[idx] = s;
                    table.insert(curve.add(q, &shift), c2);
                }
                shift = curve.add(&shift, &r);
            }
        }
        debug_assert_eq!(table.len() as u64, order);
        let t = raw_gens.len();
        // rels[j] · R = O; the relation module is the row span
        let a: Vec<Vec<i128>> = rels.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let (diag, v, vinv) = smith(a);
        let mut keep: Vec<usize> = (0..t).filter(|&i| diag[i] != 1).collect();
        keep.sort_by(|&i, &j| diag[j].cmp(&diag[i]));
        let invariants = keep.iter().map(|&i| diag[i] as u64).collect();
        let generators = keep
            .iter()
            .map(|&i| {
                (0..t).fold(None, |acc, j| {
                    let k = vinv[i][j].rem_euclid(order as i128) as i64;
                    curve.add(&acc, &curve.mul(&raw_gens[j], k))
                })
            })
            .collect();
        GroupData { prime: curve.ctx.modulus(), order, invariants, generators, curve: curve.clone(), table, v, keep }
    }

    pub fn structure(&self) -> GroupStructure {
        GroupStructure { prime: self.prime, order: self.order, invariants: self.invariants.clone() }
    }

    pub fn curve(&self) -> &FpCurve {
        &self.curve
    }

    /// Coordinates of `pt` in the basis `generators`, reduced modulo the
    /// invariant factors.
    pub fn dlog(&self, pt: &FpPoint) -> Option<Vec<u64>> {
        let c = self.table.get(pt)?;
        Some(
            self.keep
                .iter()
                .zip(&self.invariants)
                .map(|(&col, &n)| {
                    let s: i128 = c.iter().enumerate().map(|(j, &cj)| cj as i128 * self.v[j][col]).sum();
                    s.rem_euclid(n as i128) as u64
                })
                .collect(),
        )
    }

    /// `Σ dlog_i g_i`.
    pub fn from_dlog(&self, coords: &[u64]) -> FpPoint {
        self.generators.iter().zip(coords).fold(None, |acc, (g, &c)| self.curve.add(&acc, &self.curve.mul(g, c as i64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn curve(p: u64, a2: u64, a4: u64, a6: u64) -> FpCurve {
        Weierstrass::new(PrimeField::new(p), a2, a4, a6)
    }

    #[test]
    fn y2_x3_plus_x_mod_5() {
        let e = curve(5, 0, 1, 0);
        assert_eq!(enumerate_points(&e), vec![(0, 0), (2, 0), (3, 0)]);
        let g = GroupData::new(&e);
        assert_eq!(g.order, 4);
        assert_eq!(g.invariants, vec![2, 2]);
    }

    /// Orders of all points by repeated addition.
    fn brute_orders(e: &FpCurve) -> Vec<u64> {
        enumerate_points(e)
            .into_iter()
            .map(|pt| {
                let mut q = Some(pt);
                let mut n = 1;
                while q.is_some() {
                    q = e.add(&q, &Some(pt));
                    n += 1;
                }
                n
            })
            .collect()
    }

    #[test]
    fn structure_and_logs_are_consistent() {
        for &(p, a2, a4, a6) in &[(101u64, 0, 1, 0), (103, 2, 3, 7), (97, 0, 0, 7), (61, 5, 1, 9), (7, 0, 6, 0)] {
            let e = curve(p, a2, a4, a6);
            if e.discriminant() == 0 {
                continue;
            }
            let g = GroupData::new(&e);
            assert_eq!(g.invariants.iter().product::<u64>(), g.order);
            for w in g.invariants.windows(2) {
                assert_eq!(w[0] % w[1], 0);
            }
            // exponent equals the maximal point order
            let maxord = brute_orders(&e).into_iter().max().unwrap_or(1);
            assert_eq!(g.invariants.first().copied().unwrap_or(1), maxord);
            for pt in enumerate_points(&e) {
                let c = g.dlog(&Some(pt)).unwrap();
                assert_eq!(g.from_dlog(&c), Some(pt));
            }
            assert_eq!(g.dlog(&None).unwrap(), vec![0; g.invariants.len()]);
        }
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        // y^2 = x^3 - 2 x + 1 ... use a curve with a known rational point
        let e = RationalCurve::new(crate::arith::RationalField, Rational::from(0), Rational::from(-2), Rational::from(5));
        let p1 = Some((Rational::from(1), Rational::from(2)));
        let p2 = e.mul(&p1, 3);
        for p in [7u64, 11, 13, 17] {
            let Ok(ep) = reduce_curve(&e, p) else { continue };
            let r1 = reduce_point(&p1, p);
            assert!(ep.contains(&r1));
            assert_eq!(reduce_point(&p2, p), ep.mul(&r1, 3));
        }
        assert_eq!(reduce_curve(&e, 2), Err(Error::BadReduction(2)));
    }
}
