use std::fmt::Debug;

use super::zp::{inv_mod, mul_mod, pow_mod};
use super::{Field, Rational, Ring};

/// A field whose parameters are only known at run time.
pub trait FieldContext: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl FieldContext for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        Ring::is_zero(a)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Ring::add(a, b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Ring::sub(a, b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Ring::mul(a, b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        Ring::neg(a)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        Field::inv(a)
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from(n)
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// The prime field `F_p` for an odd machine-word prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime; primality is the caller's responsibility.
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "modulus out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Legendre symbol style test; zero counts as a square.
    pub fn is_square(&self, a: u64) -> bool {
        a.is_multiple_of(self.p) || self.p == 2 || pow_mod(a, (self.p - 1) / 2, self.p) == 1
    }

    /// A square root by Tonelli-Shanks, if one exists.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if p == 2 {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        if p % 4 == 3 {
            return Some(pow_mod(a, (p + 1) / 4, p));
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(r)
    }
}

impl FieldContext for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.p)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        q.mod_p(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tonelli_shanks_all_residues() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 113, 257] {
            let f = PrimeField::new(p);
            for a in 0..p {
                match f.sqrt(a) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a, "p={p} a={a}"),
                    None => assert!(!f.is_square(a)),
                }
            }
        }
    }
}
