//! Irreducible characters modulo a prime by simultaneous diagonalization of
//! the class-multiplication matrices (Dixon's method).

use serde::Serialize;

use super::character::PermCharacter;
use super::group::FiniteGroup;
use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};
use crate::verify::primes::is_prime;

/// Largest group order for which the table is computed.
pub const CHAR_TABLE_CAP: usize = 2000;

/// Irreducible characters reduced modulo `p`, where `p ≡ 1 mod exp(G)` and
/// `p > 2 sqrt|G|`, so that degrees and multiplicities lift uniquely.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTableModP {
    pub p: u64,
    pub degrees: Vec<u64>,
    /// `values[i][c] = χ_i(g_c) mod p`.
    pub values: Vec<Vec<u64>>,
    #[serde(skip)]
    class_sizes: Vec<u64>,
    #[serde(skip)]
    inverse_class: Vec<usize>,
    #[serde(skip)]
    order: u64,
}

fn inv(a: u64, p: u64) -> u64 {
    inv_mod(a, p).expect("unit modulo p")
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    let t = mul_mod(f, rows[r][j], p);
                    rows[k][j] = sub_mod(rows[k][j], t, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space of an `m × m` matrix.
fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let m = a.first().map_or(0, Vec::len);
    let pivots = rref(&mut a, p);
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; m];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI − M)` via reduction to Hessenberg form,
/// coefficients from the constant term up.
fn charpoly(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = mul_mod(u, h[m][j], p);
                h[i][j] = sub_mod(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[m] = (row[m] + t) % p;
            }
        }
    }
    // polys[k] = charpoly of the leading k × k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        // (x − h[k-1][k-1]) polys[k-1]
        for (j, &c) in polys[k - 1].iter().enumerate() {
            next[j + 1] = (next[j + 1] + c) % p;
            next[j] = sub_mod(next[j], mul_mod(c, h[k - 1][k - 1], p), p);
        }
        let mut t = 1u64;
        for i in 1..k {
            t = mul_mod(t, h[k - i][k - i - 1], p);
            let coef = mul_mod(t, h[k - i - 1][k - 1], p);
            for (j, &c) in polys[k - i - 1].iter().enumerate() {
                next[j] = sub_mod(next[j], mul_mod(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Smallest prime `p ≡ 1 mod e` with `p >= lower`.
fn table_prime(e: u64, lower: u64) -> u64 {
    let mut p = e * (lower / e) + 1;
    while p < lower || !is_prime(p) {
        p += e;
    }
    p
}

impl CharacterTableModP {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        Self::with_min_prime(g, 0)
    }

    /// Same, with the prime at least `min_p`.
    pub fn with_min_prime(g: &FiniteGroup, min_p: u64) -> Result<Self> {
        let order = g.order();
        if order > CHAR_TABLE_CAP {
            return Err(Error::GroupTooLarge { order, cap: CHAR_TABLE_CAP });
        }
        let r = g.num_classes();
        let lower = (2.0 * (order as f64).sqrt()).ceil() as u64 + 1;
        let p = table_prime(g.exponent() as u64, lower.max(min_p).max(3));
        // a[i][j][k] = #{x ∈ C_i : x^{-1} g_k ∈ C_j}
        let mut a = vec![vec![vec![0u64; r]; r]; r];
        for k in 0..r {
            let gk = g.class_rep(k);
            for (xi, x) in g.elements().iter().enumerate() {
                let y = x.inverse().then(gk);
                let j = g.class_of(&y).expect("closed");
                a[g.class_of_index(xi)][j][k] += 1;
            }
        }
        // split F_p^r into common eigenspaces of the matrices A_i
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
        for ai in a.iter() {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for mut basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                let piv = rref(&mut basis, p);
                let m = basis.len();
                let images: Vec<Vec<u64>> = basis
                    .iter()
                    .map(|b| (0..r).map(|j| (0..r).fold(0u64, |acc, k| (acc + mul_mod(ai[j][k] % p, b[k], p)) % p)).collect())
                    .collect();
                // restricted matrix: column s holds the coordinates of A b_s
                let mat: Vec<Vec<u64>> = (0..m).map(|t| (0..m).map(|s| images[s][piv[t]]).collect()).collect();
                let cp = charpoly(mat.clone(), p);
                let mut covered = 0;
                for lam in 0..p {
                    if eval(&cp, lam, p) != 0 {
                        continue;
                    }
                    let shifted: Vec<Vec<u64>> = (0..m).map(|t| (0..m).map(|s| if s == t { sub_mod(mat[t][s], lam, p) } else { mat[t][s] }).collect()).collect();
                    let ns = nullspace(shifted, p);
                    covered += ns.len();
                    let sub: Vec<Vec<u64>> = ns
                        .iter()
                        .map(|c| (0..r).map(|j| (0..m).fold(0u64, |acc, s| (acc + mul_mod(c[s], basis[s][j], p)) % p)).collect())
                        .collect();
                    next.push(sub);
                }
                if covered != m {
                    return Err(Error::InvalidParameters(format!("class algebra did not diagonalize modulo {p}")));
                }
            }
            spaces = next;
        }
        if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
            return Err(Error::InvalidParameters(format!("character table did not split modulo {p}")));
        }
        let id = g.class_of_index(0);
        let class_sizes: Vec<u64> = (0..r).map(|c| g.class_size(c) as u64).collect();
        let inverse_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();
        let ord = order as u64 % p;
        let mut degrees = Vec::new();
        let mut values: Vec<Vec<u64>> = Vec::new();
        for s in &spaces {
            let w = &s[0];
            let inv0 = inv(w[id], p);
            let omega: Vec<u64> = w.iter().map(|&x| mul_mod(x, inv0, p)).collect();
            let denom = (0..r).fold(0u64, |acc, k| {
                let t = mul_mod(mul_mod(omega[k], omega[inverse_class[k]], p), inv(class_sizes[k] % p, p), p);
                (acc + t) % p
            });
            let d2 = mul_mod(ord, inv(denom, p), p);
            let d = (1..).take_while(|d| d * d <= order as u64).find(|d| d * d % p == d2).ok_or_else(|| Error::InvalidParameters(format!("no degree lifts modulo {p}")))?;
            degrees.push(d);
            values.push((0..r).map(|k| mul_mod(mul_mod(d, omega[k], p), inv(class_sizes[k] % p, p), p)).collect());
        }
        // trivial character first, then by degree
        let mut idx: Vec<usize> = (0..r).collect();
        idx.sort_by_key(|&i| (degrees[i], values[i].iter().any(|&v| v != 1), values[i].clone()));
        let degrees = idx.iter().map(|&i| degrees[i]).collect();
        let values = idx.iter().map(|&i| values[i].clone()).collect();
        Ok(CharacterTableModP { p, degrees, values, class_sizes, inverse_class, order: order as u64 })
    }

    /// `⟨χ, ψ_i⟩` lifted to `(−p/2, p/2)`; the character must be integral
    /// modulo `p` and indexed by the classes of the table's group.
    pub fn multiplicity(&self, chi: &PermCharacter, i: usize) -> Result<i64> {
        let p = self.p;
        let mut s = 0u64;
        for (c, v) in chi.values().iter().enumerate() {
            let v = v.mod_p(p).ok_or_else(|| Error::InvalidParameters(format!("character value {v} not integral at {p}")))?;
            let t = mul_mod(mul_mod(self.class_sizes[c] % p, v, p), self.values[i][self.inverse_class[c]], p);
            s = (s + t) % p;
        }
        let m = mul_mod(s, inv(self.order % p, p), p);
        Ok(if m > p / 2 { m as i64 - p as i64 } else { m as i64 })
    }

    pub fn decompose(&self, chi: &PermCharacter) -> Result<Vec<i64>> {
        (0..self.degrees.len()).map(|i| self.multiplicity(chi, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::galois_modules::character::perm_character;

    fn sorted_degrees(name: &str) -> Vec<u64> {
        let g = FiniteGroup::parse(name).unwrap();
        let mut d = CharacterTableModP::new(&g).unwrap().degrees;
        d.sort_unstable();
        d
    }

    #[test]
    fn known_degrees() {
        assert_eq!(sorted_degrees("S3"), vec![1, 1, 2]);
        assert_eq!(sorted_degrees("S4"), vec![1, 1, 2, 3, 3]);
        assert_eq!(sorted_degrees("A5"), vec![1, 3, 3, 4, 5]);
        assert_eq!(sorted_degrees("S5"), vec![1, 1, 4, 4, 5, 5, 6]);
        assert_eq!(sorted_degrees("C5"), vec![1; 5]);
        assert_eq!(sorted_degrees("D4"), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn orthogonality_mod_p() {
        for name in ["S4", "A5", "W3", "D5", "A4"] {
            let g = FiniteGroup::parse(name).unwrap();
            let t = CharacterTableModP::new(&g).unwrap();
            let p = t.p;
            let sumsq: u64 = t.degrees.iter().map(|d| d * d).sum();
            assert_eq!(sumsq, g.order() as u64, "{name}");
            for i in 0..t.degrees.len() {
                for j in 0..t.degrees.len() {
                    let s = (0..g.num_classes()).fold(0u64, |acc, c| {
                        (acc + mul_mod(mul_mod(g.class_size(c) as u64, t.values[i][c], p), t.values[j][g.inverse_class(c)], p)) % p
                    });
                    assert_eq!(s, if i == j { g.order() as u64 % p } else { 0 }, "{name} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn permutation_character_decompositions() {
        let g = Arc::new(FiniteGroup::symmetric(4).unwrap());
        let t = CharacterTableModP::new(&g).unwrap();
        let nat = perm_character(&g, &g.stabilizer(&[3]).unwrap()).unwrap();
        let m = t.decompose(&nat).unwrap();
        // trivial plus the 3-dimensional standard representation
        assert_eq!(m[0], 1);
        assert_eq!(m.iter().sum::<i64>(), 2);
        let reg = perm_character(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(t.decompose(&reg).unwrap(), t.degrees.iter().map(|&d| d as i64).collect::<Vec<_>>());
    }

    #[test]
    fn too_large() {
        let g = FiniteGroup::symmetric(7).unwrap();
        assert!(matches!(CharacterTableModP::new(&g), Err(Error::GroupTooLarge { .. })));
    }
}
