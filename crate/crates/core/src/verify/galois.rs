//! Frobenius cycle-type sampling and the Jordan witness test for `S_d`.

use serde::Serialize;

use super::fp::{ddf_cycle_type, PrimeFieldPoly};
use super::primes::odd_primes;
use crate::arith::{Rational, Ring, UniPoly};
use crate::constructions::CurveKind;
use crate::error::{Error, Result};

/// Factor-degree pattern of `ℓ mod p` for one prime of good reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTypeSample {
    pub prime: u64,
    pub cycle_type: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleTypeEvidence {
    pub samples: Vec<CycleTypeSample>,
    /// Primes skipped because of bad reduction.
    pub skipped: Vec<u64>,
}

/// The prime at which each Jordan witness was first seen.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JordanWitnesses {
    /// A `d`-cycle: `ℓ` is irreducible, the group is transitive.
    pub full_cycle: Option<u64>,
    /// One 2-cycle and otherwise odd cycles; a power is a transposition.
    pub transposition: Option<u64>,
    /// `(p, q)` with a `q`-cycle for a prime `q > d/2`; a power is a `q`-cycle.
    pub long_prime_cycle: Option<(u64, usize)>,
}

impl JordanWitnesses {
    pub fn complete(&self) -> bool {
        self.full_cycle.is_some() && self.transposition.is_some() && self.long_prime_cycle.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaloisVerdict {
    CertifiedSd,
    Inconclusive,
}

/// Whether Zarhin's simplicity criterion applies to the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZarhinVerdict {
    pub applicable: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityCertificate {
    pub d: usize,
    pub evidence: CycleTypeEvidence,
    pub witnesses: JordanWitnesses,
    pub verdict: GaloisVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zarhin: Option<ZarhinVerdict>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

fn record_witnesses(w: &mut JordanWitnesses, d: usize, p: u64, ct: &[usize]) {
    if w.full_cycle.is_none() && ct == [d] {
        w.full_cycle = Some(p);
    }
    if w.transposition.is_none() && ct.iter().filter(|&&c| c == 2).count() == 1 && ct.iter().all(|&c| c == 2 || c % 2 == 1) {
        w.transposition = Some(p);
    }
    if w.long_prime_cycle.is_none() {
        if let Some(&q) = ct.iter().find(|&&c| is_prime(c) && 2 * c > d) {
            w.long_prime_cycle = Some((p, q));
        }
    }
}

/// Sample up to `prime_budget` primes of good reduction for `ℓ` and look for
/// the Jordan witness set. The verdict is `CertifiedSd` only when all three
/// witnesses were observed, so a polynomial with a smaller Galois group is
/// never certified.
pub fn certify_galois_sd(ell: &UniPoly<Rational>, prime_budget: usize) -> Result<SimplicityCertificate> {
    let d = ell.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::InvalidParameters(format!("Galois certification needs degree at least 2, got {d}")));
    }
    let disc = ell.discriminant()?;
    if disc.is_zero() {
        return Err(Error::InvalidParameters("polynomial is not separable".into()));
    }
    let mut evidence = CycleTypeEvidence::default();
    let mut w = JordanWitnesses::default();
    for p in odd_primes() {
        if evidence.samples.len() >= prime_budget || w.complete() {
            break;
        }
        if disc.mod_p(p).is_none_or(|v| v == 0) {
            evidence.skipped.push(p);
            continue;
        }
        let f = match PrimeFieldPoly::from_rational(ell, p) {
            Ok(f) => f,
            Err(_) => {
                evidence.skipped.push(p);
                continue;
            }
        };
        let ct = match ddf_cycle_type(&f) {
            Ok(ct) => ct,
            Err(_) => {
                evidence.skipped.push(p);
                continue;
            }
        };
        record_witnesses(&mut w, d, p, &ct);
        evidence.samples.push(CycleTypeSample { prime: p, cycle_type: ct });
    }
    let verdict = if w.complete() { GaloisVerdict::CertifiedSd } else { GaloisVerdict::Inconclusive };
    Ok(SimplicityCertificate { d, evidence, witnesses: w, verdict, zarhin: None })
}

/// Zarhin's criterion: `S_d` with `d >= 5`, for `y^2 = ℓ(x)` or, with `d`
/// odd, for `y^2 = (x - a) ℓ(x)` with `ℓ(a) != 0`.
pub fn zarhin_verdict(kind: CurveKind, cert: &SimplicityCertificate) -> ZarhinVerdict {
    let d = cert.d;
    let (applicable, reason) = match (cert.verdict, kind) {
        (GaloisVerdict::Inconclusive, _) => (false, "Galois group of ℓ not certified to be S_d".to_string()),
        (_, _) if d < 5 => (false, format!("d = {d} < 5")),
        (_, CurveKind::X1) => (true, format!("y^2 = ℓ(x) with Gal(ℓ) = S_{d}, d >= 5")),
        (_, CurveKind::X2) if d.is_multiple_of(2) => (false, format!("model y^2 = x ℓ(x) needs d odd, got {d}")),
        (_, CurveKind::X2) => (true, format!("y^2 = x ℓ(x) with Gal(ℓ) = S_{d}, d odd >= 5, ℓ(0) != 0")),
        (_, CurveKind::X3) => (false, "model y^2 = ℓ(x^2) is not of Zarhin type".to_string()),
    };
    ZarhinVerdict { applicable, reason }
}

/// Galois certificate for `ℓ` with the Zarhin verdict for the given model.
pub fn certify_model(kind: CurveKind, ell: &UniPoly<Rational>, prime_budget: usize) -> Result<SimplicityCertificate> {
    let mut cert = certify_galois_sd(ell, prime_budget)?;
    cert.zarhin = Some(zarhin_verdict(kind, &cert));
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(cs: &[i64], budget: usize) -> SimplicityCertificate {
        certify_galois_sd(&UniPoly::from_i64s(cs), budget).unwrap()
    }

    #[test]
    fn s5_quintic() {
        let c = cert(&[-1, -1, 0, 0, 0, 1], 100);
        assert_eq!(c.verdict, GaloisVerdict::CertifiedSd);
        assert!(c.evidence.samples.iter().all(|s| s.cycle_type.iter().sum::<usize>() == 5));
    }

    #[test]
    fn quadratic() {
        let c = cert(&[-2, 0, 1], 10);
        assert_eq!(c.verdict, GaloisVerdict::CertifiedSd);
    }

    #[test]
    fn proper_subgroups_stay_inconclusive() {
        for cs in [&[1, 0, 0, 0, 1][..], &[1, 1, 1, 1, 1], &[16, 20, 0, 0, 0, 1], &[2, 11, 25, 19, 6, 1]] {
            let c = cert(cs, 300);
            assert_eq!(c.verdict, GaloisVerdict::Inconclusive, "{cs:?}");
            assert!(c.witnesses.transposition.is_none(), "{cs:?}");
        }
    }

    #[test]
    fn zarhin_flags() {
        let c = cert(&[-1, -1, 0, 0, 0, 1], 100);
        assert!(zarhin_verdict(CurveKind::X1, &c).applicable);
        assert!(zarhin_verdict(CurveKind::X2, &c).applicable);
        assert!(!zarhin_verdict(CurveKind::X3, &c).applicable);
        let q = cert(&[-2, 0, 1], 10);
        assert!(!zarhin_verdict(CurveKind::X1, &q).applicable);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(certify_galois_sd(&UniPoly::from_i64s(&[1, 2, 1]), 10).is_err());
        assert!(certify_galois_sd(&UniPoly::from_i64s(&[1, 1]), 10).is_err());
    }
}
