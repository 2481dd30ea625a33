//! Exact arithmetic kernel: rationals, prime fields, dense univariate and
//! sparse multivariate polynomials.
//!
//! Arithmetic is exposed through the [`Ring`] / [`Field`] / [`QAlgebra`]
//! traits rather than `std::ops`, so generic code can work over rationals,
//! prime fields and polynomial coefficient rings with the same calls.
//! [`FieldContext`] covers the case where the field is only known at run
//! time (a prime modulus picked while sieving).

mod context;
mod multipoly;
mod parse;
mod rational;
mod unipoly;
mod zp;

use std::fmt::Debug;

pub use context::{FieldContext, PrimeField, RationalField};
pub use multipoly::{MultiPoly, Term, MAX_VARS};
pub use parse::{parse_rational, parse_unipoly};
pub use rational::Rational;
pub use unipoly::UniPoly;
pub use zp::Zp;
pub(crate) use zp::{inv_mod, mul_mod};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Exact division by a small positive integer; `None` if `k` is not
    /// invertible in the ring.
    fn div_small(&self, k: u32) -> Option<Self>;
    fn characteristic() -> u64;

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Rings containing the rationals.
pub trait QAlgebra: Ring {
    fn from_rational(q: &Rational) -> Self;
    fn scale(&self, q: &Rational) -> Self;
}
