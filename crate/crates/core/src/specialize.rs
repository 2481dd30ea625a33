//! Specialization of a generic construction at a rational parameter tuple,
//! admissibility checks, seeded sampling and j-invariants of genus-one
//! members.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Field, MultiPoly, Rational, Ring, UniPoly};
use crate::constructions::{marked_point, AlphaSource, CurveKind, CurveModel, GenericConstruction, OmegaPoint};
use crate::error::{Error, Result};
use crate::etale::{element_at, quad_at, AlgebraElement, EtaleAlgebra, QuadElement, QuadExtension};
use crate::genus_one::{j_from_invariants, j_from_weierstrass, WeierstrassTransform};
use crate::sqrt_decomp::{decompose, SqrtDecomposition};

/// Conditions a parameter tuple must satisfy, in the order they are tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdmissibilityCheck {
    /// `disc(m_t) != 0`.
    MDiscriminant,
    /// `deg ℓ_t = d`.
    EllDegree,
    /// `disc(ℓ_t) != 0`.
    EllDiscriminant,
    /// `m_t(0) != 0`.
    MAtZero,
    /// `ℓ_t(0) != 0`.
    EllAtZero,
    /// `disc(ℓ_t(x^2)) != 0`.
    EllSquaredDiscriminant,
}

impl fmt::Display for AdmissibilityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdmissibilityCheck::MDiscriminant => "disc(m_t) != 0",
            AdmissibilityCheck::EllDegree => "deg(l_t) = d",
            AdmissibilityCheck::EllDiscriminant => "disc(l_t) != 0",
            AdmissibilityCheck::MAtZero => "m_t(0) != 0",
            AdmissibilityCheck::EllAtZero => "l_t(0) != 0",
            AdmissibilityCheck::EllSquaredDiscriminant => "disc(l_t(x^2)) != 0",
        })
    }
}

/// One passed check with the nonzero value that witnesses it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: AdmissibilityCheck,
    pub witness: Rational,
}

pub fn checks_for(kind: CurveKind) -> &'static [AdmissibilityCheck] {
    use AdmissibilityCheck::*;
    match kind {
        CurveKind::X1 => &[MDiscriminant, EllDegree, EllDiscriminant],
        CurveKind::X2 => &[MDiscriminant, EllDegree, EllDiscriminant, MAtZero, EllAtZero],
        CurveKind::X3 => &[MDiscriminant, EllDegree, EllDiscriminant, MAtZero, EllSquaredDiscriminant],
    }
}

fn witness(check: AdmissibilityCheck, dec: &SqrtDecomposition<Rational>) -> Rational {
    use AdmissibilityCheck::*;
    let disc = |p: &UniPoly<Rational>| if p.degree().unwrap_or(0) >= 1 { p.discriminant().unwrap() } else { Rational::zero() };
    match check {
        MDiscriminant => disc(&dec.m),
        EllDegree => dec.ell.coeff(dec.d),
        EllDiscriminant => disc(&dec.ell),
        MAtZero => dec.m.coeff(0),
        EllAtZero => dec.ell.coeff(0),
        EllSquaredDiscriminant => disc(&dec.ell.compose_x2()),
    }
}

/// Run the checks for `kind`, stopping at the first failure.
pub fn admissibility(kind: CurveKind, dec: &SqrtDecomposition<Rational>) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &check in checks_for(kind) {
        let w = witness(check, dec);
        if w.is_zero() {
            return Err(Error::Inadmissible { check });
        }
        out.push(CheckRecord { check, witness: w });
    }
    Ok(out)
}

/// A curve over Q with its marked point.
#[derive(Clone, Debug)]
pub struct SpecializedCurve {
    pub kind: CurveKind,
    pub source: AlphaSource,
    pub omega: Arc<EtaleAlgebra>,
    pub quad: Option<QuadExtension>,
    pub t: Vec<Rational>,
    pub model: CurveModel<Rational>,
    pub dec: SqrtDecomposition<Rational>,
    pub alpha: AlgebraElement<Rational>,
    pub beta: Option<QuadElement<Rational>>,
    pub point: OmegaPoint<Rational>,
    pub admissibility: Vec<CheckRecord>,
}

/// `(α_t, β_t)` for the construction's parametrization.
fn alpha_beta(gc: &GenericConstruction, t: &[Rational]) -> Result<(AlgebraElement<Rational>, Option<QuadElement<Rational>>)> {
    match &gc.quad {
        None => Ok((element_at(&gc.omega, t)?, None)),
        Some(ext) => {
            let (a, b) = quad_at(ext, t)?;
            Ok((a, Some(b)))
        }
    }
}

/// Specialize at `t` using exact rational arithmetic throughout (the symbolic
/// data is not needed).
pub fn specialize_at(gc: &GenericConstruction, t: &[Rational]) -> Result<SpecializedCurve> {
    if t.len() != gc.n {
        return Err(Error::ArityMismatch { expected: gc.n, got: t.len() });
    }
    let (alpha, beta) = alpha_beta(gc, t)?;
    let m = alpha.charpoly();
    if m.discriminant()?.is_zero() {
        return Err(Error::Inadmissible { check: AdmissibilityCheck::MDiscriminant });
    }
    let dec = decompose(&m)?;
    let admissibility = admissibility(gc.kind, &dec)?;
    let point = marked_point(gc.kind, &alpha, beta.as_ref(), &dec.h, gc.quad.as_ref())?;
    let model = CurveModel { kind: gc.kind, ell: dec.ell.clone(), d: gc.d, genus: gc.genus };
    Ok(SpecializedCurve {
        kind: gc.kind,
        source: gc.source,
        omega: gc.omega.clone(),
        quad: gc.quad.clone(),
        t: t.to_vec(),
        model,
        dec,
        alpha,
        beta,
        point,
        admissibility,
    })
}

/// Specialized `(m, h, ℓ)` and point obtained by substituting `t` into the
/// symbolic data coefficientwise.
pub fn substitute_symbolic(gc: &GenericConstruction, t: &[Rational]) -> Result<(SqrtDecomposition<Rational>, OmegaPoint<Rational>)> {
    let sym = gc.symbolic.as_ref().ok_or(Error::CapacityExceeded { n: gc.n, cap: 0 })?;
    let sub = |p: &UniPoly<MultiPoly>| p.try_map(|c| c.substitute(t));
    let dec = SqrtDecomposition { m: sub(&sym.dec.m)?, h: sub(&sym.dec.h)?, ell: sub(&sym.dec.ell)?, d: sym.dec.d, flags: sym.dec.flags };
    Ok((dec, sym.point.substitute(t)?))
}

/// A rational point together with its label in the marked divisor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledPoint {
    pub label: String,
    pub x: Rational,
    pub y: Rational,
}

impl LabeledPoint {
    pub fn xy(&self) -> (Rational, Rational) {
        (self.x.clone(), self.y.clone())
    }
}

/// j-invariant computed in two independent ways.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JInvariant {
    pub via_weierstrass: Rational,
    pub via_invariants: Rational,
}

impl JInvariant {
    pub fn agree(&self) -> bool {
        self.via_weierstrass == self.via_invariants
    }
}

impl SpecializedCurve {
    pub fn defining_polynomial(&self) -> UniPoly<Rational> {
        self.model.defining_polynomial()
    }

    pub fn genus(&self) -> usize {
        self.model.genus
    }

    /// The marked point satisfies the curve equation exactly.
    pub fn point_satisfies(&self) -> Result<bool> {
        self.point.satisfies(&self.defining_polynomial(), self.quad.as_ref())
    }

    /// For the quadratic parametrization, `charpoly(β)(x) = m(x^2)`.
    pub fn quad_charpoly_identity(&self) -> Result<Option<bool>> {
        match (&self.beta, &self.quad) {
            (Some(beta), Some(ext)) => Ok(Some(beta.charpoly(ext)? == self.dec.m.compose_x2())),
            _ => Ok(None),
        }
    }

    /// Value of the component on a linear factor `y - c`.
    fn linear_value(&self, elem: &AlgebraElement<Rational>, i: usize) -> Rational {
        let f = &self.omega.factors()[i];
        elem.components()[i].eval(&f.coeff(0).neg())
    }

    /// For each linear factor of Ω on which the marked point is rational,
    /// `(u_i, t_i)` with `u_i = α_i` and `t_i = β_i` (`t_i^2 = u_i`; for the
    /// linear parametrization `t_i` is `None`).
    pub fn split_parameters(&self) -> Vec<(usize, Rational, Option<Rational>)> {
        let mut out = Vec::new();
        for i in 0..self.omega.num_factors() {
            if self.omega.factor_degree(i) != 1 {
                continue;
            }
            let u = self.linear_value(&self.alpha, i);
            match &self.quad {
                None => out.push((i, u, None)),
                Some(ext) => {
                    let Some(r) = self.linear_value(ext.delta(), i).sqrt_exact() else {
                        continue;
                    };
                    let gamma = AlgebraElement::from_coords(&self.omega, self.t.clone()).expect("arity");
                    let t = r.mul(&self.linear_value(&gamma, i));
                    debug_assert_eq!(t.square(), u);
                    out.push((i, u, Some(t)));
                }
            }
        }
        out
    }

    /// The rational points `P_i = (u_i, h(u_i))`, `Q_i = (u_i, t_i h(u_i))` or
    /// `R_i = (t_i, h(u_i))` according to the kind.
    pub fn split_points(&self) -> Vec<LabeledPoint> {
        let h = &self.dec.h;
        self.split_parameters()
            .into_iter()
            .map(|(i, u, t)| {
                let hu = h.eval(&u);
                let (label, x, y) = match (self.kind, t) {
                    (CurveKind::X1, _) => ("P", u, hu),
                    (CurveKind::X2, Some(t)) => ("Q", u, t.mul(&hu)),
                    (CurveKind::X3, Some(t)) => ("R", t, hu),
                    _ => unreachable!("quadratic kinds always carry t"),
                };
                LabeledPoint { label: format!("{label}{}", i + 1), x, y }
            })
            .collect()
    }

    /// All rational points of the marked divisor: the split points, and for
    /// X2/X3 also their images under `ι` resp. `τ` (the conjugate points over
    /// the same factor of Ω~).
    pub fn marked_rational_points(&self) -> Vec<LabeledPoint> {
        let base = self.split_points();
        let mut out = base.clone();
        match self.kind {
            CurveKind::X1 => {}
            CurveKind::X2 => out.extend(base.iter().map(|p| LabeledPoint { label: format!("{}'", p.label), x: p.x.clone(), y: p.y.neg() })),
            CurveKind::X3 => out.extend(base.iter().map(|p| LabeledPoint { label: format!("{}'", p.label), x: p.x.neg(), y: p.y.clone() })),
        }
        out
    }

    /// A rational point usable as the base of the Weierstrass transformation.
    pub fn base_point(&self) -> Option<(Rational, Rational)> {
        if let Some(p) = self.marked_rational_points().first() {
            return Some(p.xy());
        }
        if self.kind == CurveKind::X2 {
            return Some((Rational::zero(), Rational::zero()));
        }
        None
    }

    /// Weierstrass form of a genus-one member.
    pub fn weierstrass(&self) -> Result<WeierstrassTransform> {
        if self.genus() != 1 {
            return Err(Error::NotGenusOne(self.defining_polynomial().degree().unwrap_or(0)));
        }
        let f = self.defining_polynomial();
        if f.degree() == Some(3) {
            return WeierstrassTransform::new(&f, None);
        }
        let base = self.base_point().ok_or(Error::NoRationalPoint)?;
        WeierstrassTransform::new(&f, Some(&base))
    }

    pub fn j_invariant(&self) -> Result<JInvariant> {
        if self.genus() != 1 {
            return Err(Error::NotGenusOne(self.defining_polynomial().degree().unwrap_or(0)));
        }
        let f = self.defining_polynomial();
        let base = if f.degree() == Some(3) { None } else { Some(self.base_point().ok_or(Error::NoRationalPoint)?) };
        Ok(JInvariant { via_weierstrass: j_from_weierstrass(&f, base.as_ref())?, via_invariants: j_from_invariants(&f)? })
    }

    /// `ℓ' = c ℓ` with `c` a nonzero rational square: the models are
    /// isomorphic via `y -> sqrt(c) y`.
    pub fn equivalent_model(&self, other: &SpecializedCurve) -> bool {
        if self.kind != other.kind || self.dec.ell.degree() != other.dec.ell.degree() || self.dec.ell.is_zero() {
            return false;
        }
        let c = other.dec.ell.leading_coeff().div(&self.dec.ell.leading_coeff()).unwrap();
        c.sqrt_exact().is_some() && self.dec.ell.mul_scalar(&c) == other.dec.ell
    }

    pub fn record(&self) -> SpecializedRecord {
        let (x, y) = match &self.point {
            OmegaPoint::Omega { x, y } => (PointCoord::Omega(x.to_json_components()), PointCoord::Omega(y.to_json_components())),
            OmegaPoint::OmegaTilde { x, y } => (
                PointCoord::OmegaTilde { a: x.a.to_json_components(), b: x.b.to_json_components() },
                PointCoord::OmegaTilde { a: y.a.to_json_components(), b: y.b.to_json_components() },
            ),
        };
        SpecializedRecord {
            kind: self.kind,
            genus: self.genus(),
            d: self.model.d,
            t: self.t.clone(),
            m: self.dec.m.clone(),
            h: self.dec.h.clone(),
            ell: self.dec.ell.clone(),
            defining_polynomial: self.defining_polynomial(),
            point: PointRecord { x, y },
            rational_points: self.marked_rational_points(),
            admissibility: self.admissibility.clone(),
            j_invariant: if self.genus() == 1 { self.j_invariant().ok() } else { None },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum PointCoord {
    Omega(Vec<Vec<Rational>>),
    OmegaTilde { a: Vec<Vec<Rational>>, b: Vec<Vec<Rational>> },
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRecord {
    pub x: PointCoord,
    pub y: PointCoord,
}

/// JSON form of a specialized curve.
#[derive(Clone, Debug, Serialize)]
pub struct SpecializedRecord {
    pub kind: CurveKind,
    pub genus: usize,
    pub d: usize,
    pub t: Vec<Rational>,
    pub m: UniPoly<Rational>,
    pub h: UniPoly<Rational>,
    pub ell: UniPoly<Rational>,
    pub defining_polynomial: UniPoly<Rational>,
    pub point: PointRecord,
    pub rational_points: Vec<LabeledPoint>,
    pub admissibility: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_invariant: Option<JInvariant>,
}

/// Parameters of the seeded sampler.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingParams {
    pub count: usize,
    pub height_bound: i64,
    pub seed: u64,
    /// Maximum number of tuples drawn; `None` for `max(1000, 50 * count)`.
    pub budget: Option<usize>,
}

impl SamplingParams {
    pub fn new(count: usize, height_bound: i64, seed: u64) -> Self {
        SamplingParams { count, height_bound, seed, budget: None }
    }

    fn attempts(&self) -> usize {
        self.budget.unwrap_or_else(|| (50 * self.count).max(1000))
    }
}

const BATCH: usize = 32;

/// Draw integer tuples with `|t_i| <= height_bound` from a seeded stream and
/// keep the admissible ones whose models are pairwise inequivalent.
/// Candidates are checked in parallel and accepted in draw order, so the
/// output depends only on the parameters.
pub fn sample_specializations(gc: &GenericConstruction, params: SamplingParams) -> Result<Vec<SpecializedCurve>> {
    if params.count == 0 {
        return Err(Error::InvalidParameters("count must be at least 1".into()));
    }
    if params.height_bound < 0 {
        return Err(Error::InvalidParameters("height bound must be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let b = params.height_bound;
    let total = params.attempts();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out: Vec<SpecializedCurve> = Vec::new();
    let mut drawn = 0;
    while drawn < total && out.len() < params.count {
        let mut batch = Vec::with_capacity(BATCH);
        while batch.len() < BATCH && drawn < total {
            drawn += 1;
            let tup: Vec<i64> = (0..gc.n).map(|_| rng.random_range(-b..=b)).collect();
            if seen.insert(tup.clone()) {
                batch.push(tup);
            }
        }
        let results: Vec<Option<SpecializedCurve>> = batch
            .par_iter()
            .map(|tup| {
                let t: Vec<Rational> = tup.iter().map(|&v| Rational::from(v)).collect();
                specialize_at(gc, &t).ok()
            })
            .collect();
        for sc in results.into_iter().flatten() {
            if out.len() == params.count {
                break;
            }
            if !out.iter().any(|o| o.equivalent_model(&sc)) {
                out.push(sc);
            }
        }
    }
    if out.len() < params.count {
        return Err(Error::SamplingExhausted { wanted: params.count, found: out.len(), attempts: drawn });
    }
    Ok(out)
}
