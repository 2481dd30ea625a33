use std::fmt;

use super::{Field, Ring};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo `p` via the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

/// Element of the prime field `Z/PZ` with the modulus fixed at compile time.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub fn new(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Ring for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn one() -> Self {
        Zp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Zp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Zp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Zp(mul_mod(self.0, rhs.0, P))
    }
    fn neg(&self) -> Self {
        Zp((P - self.0) % P)
    }
    fn from_i64(n: i64) -> Self {
        Zp::new(n)
    }
    fn div_small(&self, k: u32) -> Option<Self> {
        inv_mod(k as u64 % P, P).map(|i| Zp(mul_mod(self.0, i, P)))
    }
    fn characteristic() -> u64 {
        P
    }
}

impl<const P: u64> Field for Zp<P> {
    fn inv(&self) -> Option<Self> {
        inv_mod(self.0, P).map(Zp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for a in 1..13u64 {
            let i = inv_mod(a, 13).unwrap();
            assert_eq!(mul_mod(a, i, 13), 1);
        }
        assert_eq!(inv_mod(0, 13), None);
        assert_eq!(Zp::<2>::new(1).div_small(2), None);
        assert_eq!(Zp::<7>::new(3).div_small(2), Some(Zp::<7>::new(5)));
    }

    #[test]
    fn fermat() {
        for a in 1..31u64 {
            assert_eq!(pow_mod(a, 30, 31), 1);
        }
    }
}
