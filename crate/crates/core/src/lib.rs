//! Exact construction and certification of hyperelliptic curves over Q that
//! carry a marked divisor of prescribed etale type.
//!
//! The pipeline is: pick an etale algebra Ω (optionally with a unit δ for the
//! quadratic refinements), build the generic construction over `Q[z]`
//! ([`constructions`]), specialize the parameters to rationals
//! ([`specialize`]) and certify the result over finite fields ([`verify`]).
//! [`galois_modules`] is an independent character calculator for the
//! permutation modules that the constructions realize.

pub mod arith;
pub mod constructions;
pub mod error;
pub mod etale;
pub mod galois_modules;
pub mod genus_one;
pub mod specialize;
pub mod sqrt_decomp;
pub mod verify;

pub use error::{Error, Result};
