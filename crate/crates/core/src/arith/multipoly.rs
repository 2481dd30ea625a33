use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{QAlgebra, Rational, Ring};
use crate::error::{Error, Result};

/// Maximum number of variables in a [`MultiPoly`].
pub const MAX_VARS: usize = 16;
const MAX_EXP: u32 = 127;
const HIGH_BITS: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

/// Exponent vector packed one byte per variable, variable 0 in the most
/// significant byte, so integer order is lexicographic order.
type Monomial = u128;

fn pack(exps: &[u32]) -> Monomial {
    assert!(exps.len() <= MAX_VARS, "too many variables");
    exps.iter().enumerate().fold(0u128, |acc, (i, &e)| {
        assert!(e <= MAX_EXP, "exponent {e} out of range");
        acc | ((e as u128) << (8 * (MAX_VARS - 1 - i)))
    })
}

fn unpack(m: Monomial, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|i| ((m >> (8 * (MAX_VARS - 1 - i))) & 0xff) as u32).collect()
}

#[inline]
fn mono_mul(a: Monomial, b: Monomial) -> Monomial {
    let s = a + b;
    assert!(s & HIGH_BITS == 0, "exponent overflow in monomial product");
    s
}

/// Sparse multivariate polynomial over Q in positional variables.
///
/// Variables are identified by index only; names are attached when
/// serializing. A polynomial with `nvars == 0` is a constant and combines
/// with polynomials of any arity. Equality compares terms only, since the
/// packed monomials do not depend on the arity.
#[derive(Clone)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// One serialized term: `{"exps": [...], "coef": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exps: Vec<u32>,
    pub coef: Rational,
}

impl MultiPoly {
    pub fn zero_in(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        let mut p = Self::zero_in(nvars);
        if !Ring::is_zero(&c) {
            p.terms.insert(0, c);
        }
        p
    }

    /// The variable with index `i` among `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, Rational::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero_in(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector arity");
            p.add_term(pack(&e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Rational)> + '_ {
        self.terms.iter().map(move |(m, c)| (unpack(*m, self.nvars), c))
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms().map(|(exps, c)| Term { exps, coef: c.clone() }).collect()
    }

    pub fn from_term_list(nvars: usize, terms: &[Term]) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::Parse(format!("at most {MAX_VARS} variables are supported")));
        }
        for t in terms {
            if t.exps.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, got: t.exps.len() });
            }
            if t.exps.iter().any(|&e| e > MAX_EXP) {
                return Err(Error::Parse("exponent out of range".into()));
            }
        }
        Ok(Self::from_terms(nvars, terms.iter().map(|t| (t.exps.clone(), t.coef.clone()))))
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if Ring::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if Ring::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn common_arity(&self, other: &Self) -> usize {
        match (self.nvars, other.nvars) {
            (a, b) if a == b => a,
            (0, b) => b,
            (a, 0) => a,
            (a, b) if self.terms.keys().all(|&m| m == 0) || other.terms.keys().all(|&m| m == 0) => a.max(b),
            (a, b) => panic!("arity mismatch between multivariate polynomials ({a} vs {b})"),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn substitute(&self, assignment: &[Rational]) -> Result<Rational> {
        if self.nvars != 0 && assignment.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: assignment.len() });
        }
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; self.nvars];
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let exps = unpack(*m, self.nvars);
            let mut t = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul(&assignment[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitute polynomials for the variables (ring homomorphism
    /// `Q[v_0..v_k] -> Q[w]`).
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if self.nvars != 0 && images.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: images.len() });
        }
        let target = images.iter().map(|p| p.nvars).max().unwrap_or(0);
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::constant(Rational::one(), target)]; self.nvars];
        let mut acc = MultiPoly::zero_in(target);
        for (m, c) in &self.terms {
            let exps = unpack(*m, self.nvars);
            let mut t = MultiPoly::constant(c.clone(), target);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Human-readable form with variables named `{prefix}{index + offset}`.
    pub fn to_string_with(&self, prefix: &str, offset: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (exps, c)) in self.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("{prefix}{}", i + offset) } else { format!("{prefix}{}^{e}", i + offset) })
                .collect();
            if vars.is_empty() || !a.is_one() {
                out.push_str(&a.to_string());
                if !vars.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&vars.join("*"));
        }
        out
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero_in(0)
    }
    fn one() -> Self {
        MultiPoly::constant(Rational::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }
    fn add(&self, rhs: &Self) -> Self {
        let nvars = self.common_arity(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = MultiPoly { nvars, terms: big.terms.clone() };
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let nvars = self.common_arity(rhs);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return MultiPoly::zero_in(nvars);
        }
        if self.terms.len() == 1 || rhs.terms.len() == 1 {
            let (single, other) = if self.terms.len() == 1 { (self, rhs) } else { (rhs, self) };
            let (&sm, sc) = single.terms.iter().next().unwrap();
            let terms = other.terms.iter().map(|(m, c)| (mono_mul(*m, sm), c.mul(sc))).collect();
            return MultiPoly { nvars, terms };
        }
        let mut acc: HashMap<Monomial, num_rational::BigRational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca.as_big() * cb.as_big();
                match acc.entry(mono_mul(*ma, *mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += prod;
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .map(|(m, c)| (m, Rational::from_big(c)))
            .collect();
        MultiPoly { nvars, terms }
    }
    fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }
    fn from_i64(n: i64) -> Self {
        MultiPoly::constant(Rational::from(n), 0)
    }
    fn div_small(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let kq = Rational::new(1, k);
        Some(self.scale(&kq))
    }
    fn characteristic() -> u64 {
        0
    }
}

impl QAlgebra for MultiPoly {
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone(), 0)
    }
    fn scale(&self, q: &Rational) -> Self {
        if Ring::is_zero(q) {
            return MultiPoly::zero_in(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c.mul(q))).collect() }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("z", 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize, n: usize) -> MultiPoly {
        MultiPoly::var(i, n)
    }

    #[test]
    fn substitute_examples() {
        // z1 z2 + 1 at (2, 3) -> 7
        let p = z(0, 2).mul(&z(1, 2)).add(&MultiPoly::one());
        assert_eq!(p.substitute(&[Rational::from(2), Rational::from(3)]).unwrap(), Rational::from(7));
        // z1^2 at (0, ...) -> 0
        let p = z(0, 3).square();
        assert_eq!(p.substitute(&[Rational::zero(), Rational::from(5), Rational::from(1)]).unwrap(), Rational::zero());
        // m0 m3 - m1^2 at (1, 2, 3, 4) -> 0
        let p = z(0, 4).mul(&z(3, 4)).sub(&z(1, 4).square());
        let at: Vec<Rational> = (1..=4).map(Rational::from).collect();
        assert_eq!(p.substitute(&at).unwrap(), Rational::zero());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let p = z(0, 2);
        assert_eq!(p.substitute(&[Rational::one()]), Err(Error::ArityMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = z(0, 2).add(&z(1, 2));
        let q = p.sub(&z(1, 2));
        assert_eq!(q, z(0, 2));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&p).num_terms(), 0);
    }

    #[test]
    fn constants_promote() {
        let p = z(0, 3).add(&MultiPoly::from_i64(2));
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.substitute(&[Rational::from(1), Rational::zero(), Rational::zero()]).unwrap(), Rational::from(3));
    }

    #[test]
    fn compose_is_substitution_of_polynomials() {
        // (v0 + v1)^2 with v0 = w0 w1, v1 = 1 - w0
        let v = (z(0, 2).add(&z(1, 2))).square();
        let imgs = [z(0, 2).mul(&z(1, 2)), MultiPoly::one().sub(&z(0, 2))];
        let c = v.compose(&imgs).unwrap();
        let at = [Rational::from(3), Rational::from(-2)];
        let direct = {
            let w0 = &at[0];
            let w1 = &at[1];
            let s = w0.mul(w1).add(&Rational::one().sub(w0));
            s.square()
        };
        assert_eq!(c.substitute(&at).unwrap(), direct);
    }

    #[test]
    fn term_serialization() {
        let p = z(0, 2).mul(&z(1, 2)).scale(&Rational::new(1, 2));
        let js = serde_json::to_string(&p.to_terms()).unwrap();
        assert_eq!(js, r#"[{"exps":[1,1],"coef":"1/2"}]"#);
        let back = MultiPoly::from_term_list(2, &serde_json::from_str::<Vec<Term>>(&js).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
