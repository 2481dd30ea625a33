//! Dense polynomials over a prime field with a run-time modulus, and the
//! distinct-degree factorization used for Frobenius cycle types.

use crate::arith::{Rational, UniPoly};
use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Polynomial over `F_p`, coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimeFieldPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = PrimeFieldPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    pub fn from_i64s(p: u64, cs: &[i64]) -> Self {
        Self::new(p, cs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
    }

    /// Reduction of a rational polynomial. Fails when `p` divides a
    /// denominator or the leading coefficient.
    pub fn from_rational(f: &UniPoly<Rational>, p: u64) -> Result<Self> {
        let cs = f.coeffs().iter().map(|c| c.mod_p(p).ok_or(Error::BadReduction(p))).collect::<Result<Vec<_>>>()?;
        let g = Self::new(p, cs);
        if g.degree() != f.degree() {
            return Err(Error::BadReduction(p));
        }
        Ok(g)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn eval(&self, a: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, a, self.p) + c) % self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, cs)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut cs = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                cs[i + j] = (cs[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, cs)
    }

    pub fn derivative(&self) -> Self {
        let cs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p)).collect();
        Self::new(self.p, cs)
    }

    pub fn make_monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).expect("nonzero leading coefficient");
                Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero");
        let inv = inv_mod(d.coeffs[dd], self.p).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(self.p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = mul_mod(r[k], inv, self.p);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = (r[idx] + self.p - mul_mod(c, dc, self.p)) % self.p;
            }
        }
        r.truncate(dd);
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn is_separable(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

/// Degrees of the irreducible factors of a separable `f` over `F_p`, sorted
/// in decreasing order.
pub fn ddf_cycle_type(f: &PrimeFieldPoly) -> Result<Vec<usize>> {
    let p = f.modulus();
    let deg = f.degree().ok_or(Error::ConstantPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_separable() {
        return Err(Error::InseparableModP(p));
    }
    let x = PrimeFieldPoly::x(p);
    let mut rest = f.make_monic();
    let mut frob = x.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while let Some(r) = rest.degree() {
        if r == 0 {
            break;
        }
        i += 1;
        if r < 2 * i {
            out.push(r);
            break;
        }
        frob = frob.pow_mod(p, &rest);
        let g = rest.gcd(&frob.sub(&x));
        if let Some(gd) = g.degree().filter(|&gd| gd > 0) {
            out.extend(std::iter::repeat_n(i, gd / i));
            rest = rest.div_rem(&g).0;
            frob = frob.rem(&rest);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Factor degrees by trial division with every monic polynomial of
    /// degree at most `deg / 2`, smallest degree first.
    pub(super) fn brute_force_degrees(f: &PrimeFieldPoly) -> Vec<usize> {
        let p = f.modulus();
        let mut rest = f.make_monic();
        let mut out = Vec::new();
        let mut k = 1;
        while rest.degree().unwrap() >= 2 * k {
            let count = p.pow(k as u32);
            let mut found = false;
            for idx in 0..count {
                let mut cs = Vec::with_capacity(k + 1);
                let mut v = idx;
                for _ in 0..k {
                    cs.push(v % p);
                    v /= p;
                }
                cs.push(1);
                let g = PrimeFieldPoly::new(p, cs);
                let (q, r) = rest.div_rem(&g);
                if r.is_zero() {
                    out.push(k);
                    rest = q;
                    found = true;
                    break;
                }
            }
            if !found {
                k += 1;
            }
        }
        if rest.degree().unwrap() > 0 {
            out.push(rest.degree().unwrap());
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    fn ct(p: u64, cs: &[i64]) -> Vec<usize> {
        ddf_cycle_type(&PrimeFieldPoly::from_i64s(p, cs)).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(ct(5, &[1, 0, 1]), vec![1, 1]);
        assert_eq!(ct(7, &[1, 0, 1]), vec![2]);
        assert_eq!(ct(3, &[1, 0, 0, 0, 1]), vec![2, 2]);
        assert_eq!(brute_force_degrees(&PrimeFieldPoly::from_i64s(3, &[1, 0, 0, 0, 1])), vec![2, 2]);
    }

    #[test]
    fn inseparable_is_rejected() {
        let f = PrimeFieldPoly::from_i64s(5, &[1, 2, 1]);
        assert_eq!(ddf_cycle_type(&f), Err(Error::InseparableModP(5)));
    }

    #[test]
    fn exhaustive_small_fields() {
        for &(p, deg) in &[(3u64, 4usize), (5, 3), (7, 3), (3, 5)] {
            let total = p.pow(deg as u32);
            for idx in 0..total {
                let mut cs = Vec::new();
                let mut v = idx;
                for _ in 0..deg {
                    cs.push(v % p);
                    v /= p;
                }
                cs.push(1);
                let f = PrimeFieldPoly::new(p, cs);
                if !f.is_separable() {
                    continue;
                }
                assert_eq!(ddf_cycle_type(&f).unwrap(), brute_force_degrees(&f), "{f:?}");
            }
        }
    }

    #[test]
    fn reduction_of_rationals() {
        let f = UniPoly::new(vec![Rational::new(1, 3), Rational::from(0), Rational::from(1)]);
        assert_eq!(PrimeFieldPoly::from_rational(&f, 3), Err(Error::BadReduction(3)));
        let g = PrimeFieldPoly::from_rational(&f, 5).unwrap();
        assert_eq!(g.coeffs(), &[2, 0, 1]);
        let h = UniPoly::new(vec![Rational::from(1), Rational::from(5)]);
        assert_eq!(PrimeFieldPoly::from_rational(&h, 5), Err(Error::BadReduction(5)));
    }

    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn ddf_matches_brute_force(p in 3u64..50, cs in proptest::collection::vec(0u64..50, 1..=6)) {
            proptest::prop_assume!(is_prime(p));
            let mut cs = cs;
            cs.push(1);
            let f = PrimeFieldPoly::new(p, cs);
            proptest::prop_assume!(f.is_separable());
            proptest::prop_assert_eq!(ddf_cycle_type(&f).unwrap(), brute_force_degrees(&f));
        }
    }
}
