//! Certification over finite fields.
//!
//! * [`galois`]: Frobenius cycle types of `ℓ_t` and the Jordan witness test
//!   for Galois group `S_d`, plus the hypothesis check of Zarhin's
//!   simplicity criterion.
//! * [`sieve`]: the relation-lattice sieve bounding integer relations among
//!   marked points of genus-one specializations.
//! * [`isogeny`]: point-level check of `φ_1`, `φ_2` on an X1/X2/X3 triple.

pub mod elliptic;
pub mod fp;
pub mod galois;
pub mod isogeny;
pub mod lattice;
pub mod primes;
pub mod sieve;

use serde::Serialize;

pub use fp::{ddf_cycle_type, PrimeFieldPoly};
pub use galois::{certify_galois_sd, certify_model, GaloisVerdict, SimplicityCertificate, ZarhinVerdict};
pub use isogeny::{isogeny_decomposition_check, IsogenyReport};
pub use sieve::{independence_sieve, reduce_points_mod_p, SieveOptions, SieveResult, SieveVerdict};

use crate::error::Result;
use crate::specialize::SpecializedCurve;

/// Certificate for one specialized curve.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub galois: SimplicityCertificate,
    pub zarhin: Option<ZarhinVerdict>,
    /// Present for genus-one curves when the sieve was requested.
    pub sieve: Option<SieveResult>,
    /// Reason the sieve was not run, if it was requested.
    pub sieve_note: Option<String>,
}

impl Certificate {
    /// Every requested check reached a positive verdict.
    pub fn conclusive(&self) -> bool {
        self.galois.verdict == GaloisVerdict::CertifiedSd && self.sieve.as_ref().is_none_or(|s| s.verdict.is_conclusive())
    }
}

/// Galois certificate for `ℓ_t` and, if `sieve` is given and the curve has
/// genus one, the independence sieve on its marked points.
pub fn certify(sc: &SpecializedCurve, prime_budget: usize, sieve: Option<&SieveOptions>) -> Result<Certificate> {
    let mut galois = certify_model(sc.kind, &sc.dec.ell, prime_budget)?;
    let zarhin = galois.zarhin.take();
    let (sieve, sieve_note) = match sieve {
        None => (None, None),
        Some(opts) if sc.genus() == 1 => match independence_sieve(sc, opts) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        },
        Some(_) => (None, Some(format!("sieve needs genus 1, curve has genus {}", sc.genus()))),
    };
    Ok(Certificate { galois, zarhin, sieve, sieve_note })
}
