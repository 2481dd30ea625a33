//! Point-level check of the maps `φ_1: X3 -> X1`, `φ_2: X3 -> X2` on a
//! triple of specializations sharing `(Ω, δ, t)`, with the sieve dimensions
//! of the three marked-point spans.

use std::collections::BTreeSet;

use serde::Serialize;

use super::sieve::{independence_sieve, SieveOptions, SieveVerdict};
use crate::arith::Rational;
use crate::constructions::{phi1_rational, phi2_rational, tau_rational, CurveKind};
use crate::error::{Error, Result};
use crate::specialize::{LabeledPoint, SpecializedCurve};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberDimension {
    pub kind: CurveKind,
    pub genus: usize,
    /// Number of marked difference classes.
    pub k: usize,
    pub verdict: Option<SieveVerdict>,
    /// Estimated dimension of the span of marked differences; genus zero
    /// gives 0, unsupported or inconclusive members give `None`.
    pub dimension: Option<usize>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyReport {
    /// `φ_1(R_i) = P_i` for every split index.
    pub phi1_pointwise: bool,
    /// `φ_2(R_i) = Q_i` for every split index.
    pub phi2_pointwise: bool,
    /// `φ_1(τ R_i) = P_i`.
    pub tau_invariance: bool,
    /// `φ_1` maps the X3 marked set onto the X1 marked set.
    pub phi1_onto: bool,
    /// `φ_2` maps the X3 marked set onto the X2 marked set.
    pub phi2_onto: bool,
    pub members: Vec<MemberDimension>,
    /// `dim_3 = dim_2 + dim_1`, when all three dimensions are known.
    pub dimension_identity: Option<bool>,
}

type Pt = (Rational, Rational);

fn point_set(pts: &[LabeledPoint]) -> BTreeSet<String> {
    pts.iter().map(|p| format!("{}:{}", p.x, p.y)).collect()
}

fn key(p: &Pt) -> String {
    format!("{}:{}", p.0, p.1)
}

fn by_index(pts: &[LabeledPoint]) -> std::collections::BTreeMap<String, Pt> {
    pts.iter().map(|p| (p.label[1..].to_string(), p.xy())).collect()
}

fn member_dimension(sc: &SpecializedCurve, opts: &SieveOptions) -> MemberDimension {
    let genus = sc.genus();
    let k = sc.marked_rational_points().len().saturating_sub(1);
    let base = MemberDimension { kind: sc.kind, genus, k, verdict: None, dimension: None, note: String::new() };
    match genus {
        0 => MemberDimension { dimension: Some(0), note: "genus 0: trivial Jacobian".into(), ..base },
        1 => match independence_sieve(sc, opts) {
            Ok(r) => MemberDimension {
                verdict: Some(r.verdict),
                dimension: r.dimension_estimate,
                note: format!("{} primes, bound {}", r.primes.len(), r.coeff_bound),
                ..base
            },
            Err(e) => MemberDimension { note: format!("sieve failed: {e}"), ..base },
        },
        g => MemberDimension { note: format!("genus {g}: sieve only supports genus 1"), ..base },
    }
}

pub fn isogeny_decomposition_check(x1: &SpecializedCurve, x2: &SpecializedCurve, x3: &SpecializedCurve, opts: &SieveOptions) -> Result<IsogenyReport> {
    if (x1.kind, x2.kind, x3.kind) != (CurveKind::X1, CurveKind::X2, CurveKind::X3) {
        return Err(Error::InvalidParameters("expected members of kinds X1, X2, X3".into()));
    }
    if x1.t != x2.t || x2.t != x3.t || x1.omega.describe() != x3.omega.describe() || x2.omega.describe() != x3.omega.describe() {
        return Err(Error::InvalidParameters("members do not share (Ω, δ, t)".into()));
    }
    let (p, q, r) = (by_index(&x1.split_points()), by_index(&x2.split_points()), by_index(&x3.split_points()));
    let mut phi1_pointwise = !r.is_empty();
    let mut phi2_pointwise = !r.is_empty();
    let mut tau_invariance = !r.is_empty();
    for (i, ri) in &r {
        phi1_pointwise &= p.get(i) == Some(&phi1_rational(ri));
        phi2_pointwise &= q.get(i) == Some(&phi2_rational(ri));
        tau_invariance &= p.get(i) == Some(&phi1_rational(&tau_rational(ri)));
    }
    let m3 = x3.marked_rational_points();
    let img1: BTreeSet<String> = m3.iter().map(|pt| key(&phi1_rational(&pt.xy()))).collect();
    let img2: BTreeSet<String> = m3.iter().map(|pt| key(&phi2_rational(&pt.xy()))).collect();
    let phi1_onto = img1 == point_set(&x1.marked_rational_points());
    let phi2_onto = img2 == point_set(&x2.marked_rational_points());
    let members: Vec<MemberDimension> = [x1, x2, x3].iter().map(|sc| member_dimension(sc, opts)).collect();
    let dimension_identity = match (members[0].dimension, members[1].dimension, members[2].dimension) {
        (Some(d1), Some(d2), Some(d3)) => Some(d3 == d2 + d1),
        _ => None,
    };
    Ok(IsogenyReport { phi1_pointwise, phi2_pointwise, tau_invariance, phi1_onto, phi2_onto, members, dimension_identity })
}
