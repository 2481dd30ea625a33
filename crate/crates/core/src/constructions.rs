//! The three curve families carrying a divisor of type Ω or Ω~:
//!
//! | kind | model          | marked point          |
//! |------|----------------|-----------------------|
//! | X1   | `y^2 = ℓ(x)`   | `(α, h(α))` in Ω      |
//! | X2   | `y^2 = x ℓ(x)` | `(α, β h(α))` in Ω~   |
//! | X3   | `y^2 = ℓ(x^2)` | `(β, h(α))` in Ω~     |
//!
//! where `m = charpoly(α) = h^2 - ℓ`. For X1 alone `α` is the generic element
//! of Ω; for X2, X3 (and X1 inside a family) `α = δ γ^2` and `β = s γ`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_unipoly, MultiPoly, QAlgebra, Rational, Ring, Term, UniPoly};
use crate::error::{Error, Result};
use crate::etale::{generic_element, quad_generic, AlgebraDescriptor, AlgebraElement, EtaleAlgebra, QuadElement, QuadExtension};
use crate::sqrt_decomp::{decompose, DegeneracyFlags, SqrtDecomposition};

/// Default bound on `n` above which no symbolic data is computed.
pub const DEFAULT_SYMBOLIC_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveKind {
    X1,
    X2,
    X3,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::X1 => "X1",
            CurveKind::X2 => "X2",
            CurveKind::X3 => "X3",
        })
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "X1" | "C1" => Ok(CurveKind::X1),
            "X2" | "C2" => Ok(CurveKind::X2),
            "X3" | "C3" => Ok(CurveKind::X3),
            _ => Err(Error::Parse(format!("unknown curve kind `{s}` (expected X1, X2 or X3)"))),
        }
    }
}

/// Genus of the curve and degree of the marked divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    pub genus: usize,
    pub divisor_degree: usize,
}

/// Genus and divisor degree of the `kind` model built from `ℓ` of degree `d`.
pub fn genus_bookkeeping(kind: CurveKind, d: usize) -> Result<Bookkeeping> {
    if d == 0 {
        return Err(Error::InvalidParameters("d must be at least 1".into()));
    }
    let n = 2 * d + 2;
    let (genus, divisor_degree) = match kind {
        // d = 2g+1 or d = 2g+2
        CurveKind::X1 => ((d - 1) / 2, n),
        // y^2 = x ℓ(x) has degree d+1: d = 2g+1 or d = 2g
        CurveKind::X2 => (d / 2, 2 * n),
        // y^2 = ℓ(x^2) has degree 2d
        CurveKind::X3 => (d - 1, 2 * n),
    };
    Ok(Bookkeeping { genus, divisor_degree })
}

/// The largest `d` giving a curve of genus `g` for each kind.
pub fn d_for_genus(kind: CurveKind, genus: usize) -> usize {
    match kind {
        CurveKind::X1 => 2 * genus + 2,
        CurveKind::X2 => 2 * genus + 1,
        CurveKind::X3 => genus + 1,
    }
}

/// Hyperelliptic model determined by `ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveModel<R: Ring> {
    pub kind: CurveKind,
    pub ell: UniPoly<R>,
    pub d: usize,
    pub genus: usize,
}

impl<R: Ring> CurveModel<R> {
    /// `ℓ(x)`, `x ℓ(x)` or `ℓ(x^2)`.
    pub fn defining_polynomial(&self) -> UniPoly<R> {
        match self.kind {
            CurveKind::X1 => self.ell.clone(),
            CurveKind::X2 => self.ell.shift(1),
            CurveKind::X3 => self.ell.compose_x2(),
        }
    }
}

/// A point of the curve with coordinates in Ω (kind X1 with linear α) or in
/// Ω~ (everything else).
#[derive(Clone, Debug, PartialEq)]
pub enum OmegaPoint<R: Ring> {
    Omega { x: AlgebraElement<R>, y: AlgebraElement<R> },
    OmegaTilde { x: QuadElement<R>, y: QuadElement<R> },
}

impl<R: QAlgebra> OmegaPoint<R> {
    /// `y^2 - f(x)` vanishes exactly.
    pub fn satisfies(&self, f: &UniPoly<R>, ext: Option<&QuadExtension>) -> Result<bool> {
        match self {
            OmegaPoint::Omega { x, y } => Ok(y.square().sub(&x.eval_poly(f))?.is_zero()),
            OmegaPoint::OmegaTilde { x, y } => {
                let ext = ext.ok_or_else(|| Error::InvalidParameters("point over Ω~ needs the extension".into()))?;
                Ok(y.mul(y, ext)?.sub(&x.eval_poly(f, ext)?)?.is_zero())
            }
        }
    }
}

impl OmegaPoint<MultiPoly> {
    pub fn substitute(&self, t: &[Rational]) -> Result<OmegaPoint<Rational>> {
        Ok(match self {
            OmegaPoint::Omega { x, y } => OmegaPoint::Omega { x: x.substitute(t)?, y: y.substitute(t)? },
            OmegaPoint::OmegaTilde { x, y } => OmegaPoint::OmegaTilde { x: x.substitute(t)?, y: y.substitute(t)? },
        })
    }
}

/// `φ_1(x, y) = (x^2, y)` from X3 to X1, on Ω~-points.
pub fn phi1<R: QAlgebra>(x: &QuadElement<R>, y: &QuadElement<R>, ext: &QuadExtension) -> Result<(QuadElement<R>, QuadElement<R>)> {
    Ok((x.mul(x, ext)?, y.clone()))
}

/// `φ_2(x, y) = (x^2, x y)` from X3 to X2, on Ω~-points.
pub fn phi2<R: QAlgebra>(x: &QuadElement<R>, y: &QuadElement<R>, ext: &QuadExtension) -> Result<(QuadElement<R>, QuadElement<R>)> {
    Ok((x.mul(x, ext)?, x.mul(y, ext)?))
}

/// The same maps on rational points.
pub fn phi1_rational(p: &(Rational, Rational)) -> (Rational, Rational) {
    (p.0.square(), p.1.clone())
}

pub fn phi2_rational(p: &(Rational, Rational)) -> (Rational, Rational) {
    (p.0.square(), p.0.mul(&p.1))
}

/// `τ(x, y) = (-x, y)` on X3.
pub fn tau_rational(p: &(Rational, Rational)) -> (Rational, Rational) {
    (p.0.neg(), p.1.clone())
}

/// `ι(x, y) = (x, -y)`, the hyperelliptic involution.
pub fn iota_rational(p: &(Rational, Rational)) -> (Rational, Rational) {
    (p.0.clone(), p.1.neg())
}

/// How `α` is obtained from the parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlphaSource {
    /// `α = Σ z_i α_i`.
    Linear,
    /// `α = δ γ^2`, `γ = Σ z_i α_i`.
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionOptions {
    pub symbolic: bool,
    pub cap: usize,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        ConstructionOptions { symbolic: true, cap: DEFAULT_SYMBOLIC_CAP }
    }
}

impl ConstructionOptions {
    pub fn numeric_only() -> Self {
        ConstructionOptions { symbolic: false, cap: DEFAULT_SYMBOLIC_CAP }
    }
}

/// Symbolic data over `Q[z_1..z_n]`.
#[derive(Clone, Debug)]
pub struct SymbolicData {
    pub dec: SqrtDecomposition<MultiPoly>,
    pub alpha: AlgebraElement<MultiPoly>,
    pub beta: Option<QuadElement<MultiPoly>>,
    pub point: OmegaPoint<MultiPoly>,
}

#[derive(Clone, Debug)]
pub struct GenericConstruction {
    pub kind: CurveKind,
    pub source: AlphaSource,
    /// Ω after padding to degree `n`.
    pub omega: Arc<EtaleAlgebra>,
    /// Degree of Ω before padding.
    pub input_degree: usize,
    pub quad: Option<QuadExtension>,
    pub d: usize,
    pub n: usize,
    pub genus: usize,
    pub divisor_degree: usize,
    pub symbolic: Option<SymbolicData>,
}

/// Outcome of the symbolic identity checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicReport {
    /// `m(α) = 0` in `Ω ⊗ Q[z]`.
    pub cayley_hamilton: bool,
    /// `m = h^2 - ℓ`.
    pub sqrt_identity: bool,
    /// `y^2 = f(x)` expanded directly; `None` when skipped for size.
    pub point_identity: Option<bool>,
    /// `charpoly(β)(x) = m(x^2)`; `None` for linear X1.
    pub quad_charpoly: Option<bool>,
}

impl SymbolicReport {
    pub fn all_passed(&self) -> bool {
        self.cayley_hamilton && self.sqrt_identity && self.point_identity != Some(false) && self.quad_charpoly != Some(false)
    }
}

/// Extend δ on the user's factors by 1 on padded factors.
fn padded_delta(omega: &Arc<EtaleAlgebra>, delta: Option<&[UniPoly<Rational>]>, input_factors: usize) -> Result<AlgebraElement<Rational>> {
    let mut comps = match delta {
        None => vec![UniPoly::one(); input_factors],
        Some(d) => {
            if d.len() != input_factors {
                return Err(Error::ArityMismatch { expected: input_factors, got: d.len() });
            }
            d.to_vec()
        }
    };
    comps.resize(omega.num_factors(), UniPoly::one());
    AlgebraElement::new(omega, comps)
}

/// Build the construction of `kind` with explicit `d`, padding Ω with
/// copies of Q to degree `n = 2d + 2`.
///
/// `delta` gives δ on the factors of `omega` (default 1); it is ignored for
/// `AlphaSource::Linear`.
pub fn construct_with_d(
    kind: CurveKind,
    source: AlphaSource,
    omega: &EtaleAlgebra,
    delta: Option<&[UniPoly<Rational>]>,
    d: usize,
    opts: ConstructionOptions,
) -> Result<GenericConstruction> {
    let book = genus_bookkeeping(kind, d)?;
    if kind != CurveKind::X1 && source == AlphaSource::Linear {
        return Err(Error::InvalidParameters(format!("{kind} needs the quadratic parametrization")));
    }
    let n = 2 * d + 2;
    let input_degree = omega.degree();
    let padded = Arc::new(omega.padded(n)?);
    let quad = match source {
        AlphaSource::Linear => None,
        AlphaSource::Quadratic => Some(QuadExtension::new(padded_delta(&padded, delta, omega.num_factors())?)?),
    };
    if opts.symbolic && n > opts.cap {
        return Err(Error::CapacityExceeded { n, cap: opts.cap });
    }
    let mut gc = GenericConstruction {
        kind,
        source,
        omega: padded,
        input_degree,
        quad,
        d,
        n,
        genus: book.genus,
        divisor_degree: book.divisor_degree,
        symbolic: None,
    };
    if opts.symbolic {
        gc.symbolic = Some(gc.build_symbolic()?);
    }
    Ok(gc)
}

/// `X1: y^2 = ℓ(x)` of genus `g` from the generic element of `Ω x Q^{4g+6-deg Ω}`.
pub fn construct_c1(omega: &EtaleAlgebra, genus: usize, opts: ConstructionOptions) -> Result<GenericConstruction> {
    construct_with_d(CurveKind::X1, AlphaSource::Linear, omega, None, d_for_genus(CurveKind::X1, genus), opts)
}

/// X2 or X3 of genus `g` from `(Ω, δ)`.
pub fn construct_c2c3(
    omega: &EtaleAlgebra,
    delta: Option<&[UniPoly<Rational>]>,
    genus: usize,
    kind: CurveKind,
    opts: ConstructionOptions,
) -> Result<GenericConstruction> {
    if kind == CurveKind::X1 {
        return Err(Error::InvalidParameters("use construct_c1 for X1".into()));
    }
    construct_with_d(kind, AlphaSource::Quadratic, omega, delta, d_for_genus(kind, genus), opts)
}

/// The three models sharing `m`, `h` and `ℓ` for one `(Ω, δ, d)`, in the
/// order X1, X2, X3.
pub fn construct_family(
    omega: &EtaleAlgebra,
    delta: Option<&[UniPoly<Rational>]>,
    d: usize,
    opts: ConstructionOptions,
) -> Result<[GenericConstruction; 3]> {
    let x1 = construct_with_d(CurveKind::X1, AlphaSource::Quadratic, omega, delta, d, opts)?;
    let mut x2 = x1.clone();
    let mut x3 = x1.clone();
    for (gc, kind) in [(&mut x2, CurveKind::X2), (&mut x3, CurveKind::X3)] {
        let book = genus_bookkeeping(kind, d)?;
        gc.kind = kind;
        gc.genus = book.genus;
        gc.divisor_degree = book.divisor_degree;
        if let Some(sym) = gc.symbolic.as_mut() {
            let beta = sym.beta.clone().expect("quadratic source");
            let ext = gc.quad.as_ref().expect("quadratic source");
            sym.point = marked_point(kind, &sym.alpha, Some(&beta), &sym.dec.h, Some(ext))?;
        }
    }
    Ok([x1, x2, x3])
}

/// The marked point for given `α`, `β` and `h`.
pub(crate) fn marked_point<R: QAlgebra>(
    kind: CurveKind,
    alpha: &AlgebraElement<R>,
    beta: Option<&QuadElement<R>>,
    h: &UniPoly<R>,
    ext: Option<&QuadExtension>,
) -> Result<OmegaPoint<R>> {
    let h_alpha = alpha.eval_poly(h);
    Ok(match (kind, beta, ext) {
        (CurveKind::X1, None, _) => OmegaPoint::Omega { x: alpha.clone(), y: h_alpha },
        (CurveKind::X1, Some(_), Some(_)) => OmegaPoint::OmegaTilde {
            x: QuadElement::from_base(alpha.clone()),
            y: QuadElement::from_base(h_alpha),
        },
        (CurveKind::X2, Some(beta), Some(ext)) => OmegaPoint::OmegaTilde {
            x: QuadElement::from_base(alpha.clone()),
            y: beta.mul(&QuadElement::from_base(h_alpha), ext)?,
        },
        (CurveKind::X3, Some(beta), Some(_)) => OmegaPoint::OmegaTilde { x: beta.clone(), y: QuadElement::from_base(h_alpha) },
        _ => return Err(Error::InvalidParameters(format!("{kind} point needs the quadratic data"))),
    })
}

impl GenericConstruction {
    fn build_symbolic(&self) -> Result<SymbolicData> {
        let (alpha, beta) = match &self.quad {
            None => (generic_element(&self.omega), None),
            Some(ext) => {
                let qg = quad_generic(ext);
                (qg.alpha, Some(qg.beta))
            }
        };
        let m = alpha.charpoly();
        let dec = decompose(&m)?;
        let point = marked_point(self.kind, &alpha, beta.as_ref(), &dec.h, self.quad.as_ref())?;
        Ok(SymbolicData { dec, alpha, beta, point })
    }

    pub fn bookkeeping(&self) -> Bookkeeping {
        Bookkeeping { genus: self.genus, divisor_degree: self.divisor_degree }
    }

    /// Number of parameters `t_i` (the degree of the padded Ω).
    pub fn num_parameters(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Option<CurveModel<MultiPoly>> {
        self.symbolic.as_ref().map(|s| CurveModel { kind: self.kind, ell: s.dec.ell.clone(), d: self.d, genus: self.genus })
    }

    /// Check the construction identities in `Ω ⊗ Q[z]`. The point identity is
    /// expanded directly only for `n <= direct_cap`; above that it follows
    /// from the first two checks since `h(α)^2 - ℓ(α) = m(α)`.
    pub fn verify_symbolic(&self, direct_cap: usize) -> Result<SymbolicReport> {
        let sym = self.symbolic.as_ref().ok_or(Error::CapacityExceeded { n: self.n, cap: 0 })?;
        let cayley_hamilton = sym.alpha.eval_poly(&sym.dec.m).is_zero();
        let sqrt_identity = sym.dec.recompose() == sym.dec.m && sym.dec.h.degree() == Some(self.d + 1);
        let point_identity = if self.n <= direct_cap {
            let f = self.model().expect("symbolic").defining_polynomial();
            Some(sym.point.satisfies(&f, self.quad.as_ref())?)
        } else {
            None
        };
        let quad_charpoly = match (&sym.beta, &self.quad) {
            (Some(beta), Some(ext)) if self.n <= direct_cap => Some(beta.charpoly(ext)? == sym.dec.m.compose_x2()),
            _ => None,
        };
        Ok(SymbolicReport { cayley_hamilton, sqrt_identity, point_identity, quad_charpoly })
    }

    pub fn record(&self) -> ConstructionRecord {
        let symbolic = self.symbolic.as_ref().map(|s| {
            let poly = |p: &UniPoly<MultiPoly>| p.coeffs().iter().map(MultiPoly::to_terms).collect::<Vec<_>>();
            SymbolicRecord {
                m: poly(&s.dec.m),
                h: poly(&s.dec.h),
                ell: poly(&s.dec.ell),
                alpha: s.alpha.components().iter().map(poly).collect(),
                flags: s.dec.flags,
            }
        });
        ConstructionRecord {
            kind: self.kind,
            source: self.source,
            algebra: self.omega.descriptor(),
            input_degree: self.input_degree,
            delta: self.quad.as_ref().map(|q| q.delta().to_json_components()),
            d: self.d,
            n: self.n,
            genus: self.genus,
            divisor_degree: self.divisor_degree,
            symbolic_note: match &symbolic {
                Some(_) => None,
                None => Some(format!("symbolic data omitted (n = {})", self.n)),
            },
            symbolic,
        }
    }

    /// Rebuild from a record; symbolic data is recomputed if requested.
    pub fn from_record(rec: &ConstructionRecord, opts: ConstructionOptions) -> Result<Self> {
        let omega = EtaleAlgebra::from_descriptor(&rec.algebra)?;
        let delta: Option<Vec<UniPoly<Rational>>> = rec.delta.as_ref().map(|d| d.iter().cloned().map(UniPoly::new).collect());
        let mut gc = construct_with_d(rec.kind, rec.source, &omega, delta.as_deref(), rec.d, opts)?;
        if gc.n != rec.n || gc.genus != rec.genus {
            return Err(Error::InvalidParameters("record is internally inconsistent".into()));
        }
        gc.input_degree = rec.input_degree;
        Ok(gc)
    }
}

/// JSON record of a generic construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub kind: CurveKind,
    pub source: AlphaSource,
    pub algebra: AlgebraDescriptor,
    pub input_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<Vec<Vec<Rational>>>,
    pub d: usize,
    pub n: usize,
    pub genus: usize,
    pub divisor_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbolic: Option<SymbolicRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbolic_note: Option<String>,
}

/// Symbolic polynomials as coefficient lists of multivariate term lists, in
/// the variables `z_1..z_n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolicRecord {
    pub m: Vec<Vec<Term>>,
    pub h: Vec<Vec<Term>>,
    pub ell: Vec<Vec<Term>>,
    pub alpha: Vec<Vec<Vec<Term>>>,
    #[serde(skip_deserializing)]
    pub flags: DegeneracyFlags,
}

/// Parse δ given per factor of Ω, separated by `;`; a single entry applies
/// to every factor.
pub fn parse_delta(desc: &str, omega: &EtaleAlgebra) -> Result<Vec<UniPoly<Rational>>> {
    let parts = desc.split(';').map(parse_unipoly).collect::<Result<Vec<_>>>()?;
    match parts.len() {
        1 => Ok(vec![parts[0].clone(); omega.num_factors()]),
        k if k == omega.num_factors() => Ok(parts),
        k => Err(Error::ArityMismatch { expected: omega.num_factors(), got: k }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_cells() {
        let b = |k, d| genus_bookkeeping(k, d).unwrap();
        assert_eq!(b(CurveKind::X1, 4), Bookkeeping { genus: 1, divisor_degree: 10 });
        assert_eq!(b(CurveKind::X1, 3), Bookkeeping { genus: 1, divisor_degree: 8 });
        assert_eq!(b(CurveKind::X2, 3), Bookkeeping { genus: 1, divisor_degree: 16 });
        assert_eq!(b(CurveKind::X2, 2), Bookkeeping { genus: 1, divisor_degree: 12 });
        assert_eq!(b(CurveKind::X3, 2), Bookkeeping { genus: 1, divisor_degree: 12 });
        assert!(genus_bookkeeping(CurveKind::X1, 0).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("x2".parse::<CurveKind>().unwrap(), CurveKind::X2);
        assert!("X4".parse::<CurveKind>().is_err());
    }

    #[test]
    fn padding_and_overflow() {
        let omega = EtaleAlgebra::parse("x^2-2").unwrap();
        let gc = construct_c1(&omega, 1, ConstructionOptions::numeric_only()).unwrap();
        assert_eq!((gc.n, gc.d, gc.omega.num_factors()), (10, 4, 9));
        let big = EtaleAlgebra::parse("x^11-2").unwrap();
        assert_eq!(
            construct_c1(&big, 1, ConstructionOptions::numeric_only()).unwrap_err(),
            Error::DegreeOverflow { have: 11, limit: 10 }
        );
    }

    #[test]
    fn capacity_cap() {
        let omega = EtaleAlgebra::split(1).unwrap();
        let err = construct_c1(&omega, 2, ConstructionOptions::default()).unwrap_err();
        assert_eq!(err, Error::CapacityExceeded { n: 14, cap: DEFAULT_SYMBOLIC_CAP });
    }

    #[test]
    fn small_split_c1_has_rational_split_points() {
        // g = 0: n = 6, points (z_i, h(z_i))
        let omega = EtaleAlgebra::split(6).unwrap();
        let gc = construct_c1(&omega, 0, ConstructionOptions::default()).unwrap();
        let sym = gc.symbolic.as_ref().unwrap();
        let expected = (0..6).fold(UniPoly::<MultiPoly>::one(), |acc, i| {
            acc.mul(&UniPoly::new(vec![MultiPoly::var(i, 6).neg(), MultiPoly::one()]))
        });
        assert_eq!(sym.dec.m, expected);
        let rep = gc.verify_symbolic(12).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
        if let OmegaPoint::Omega { y, .. } = &sym.point {
            let hz1 = sym.dec.h.coeffs().iter().rev().fold(MultiPoly::zero(), |acc, c| acc.mul(&MultiPoly::var(0, 6)).add(c));
            assert_eq!(y.components()[0].coeff(0), hz1);
        } else {
            panic!("expected an Ω-point");
        }
    }

    #[test]
    fn quadratic_kinds_small() {
        let omega = EtaleAlgebra::parse("x^2-3").unwrap();
        let delta = parse_delta("x", &omega).unwrap();
        let gc = construct_c2c3(&omega, Some(&delta), 0, CurveKind::X3, ConstructionOptions::default()).unwrap();
        assert_eq!((gc.d, gc.n), (1, 4));
        assert!(gc.verify_symbolic(12).unwrap().all_passed());

        let gc = construct_c2c3(&omega, Some(&delta), 0, CurveKind::X2, ConstructionOptions::default()).unwrap();
        assert_eq!((gc.d, gc.n), (1, 4));
        assert!(gc.verify_symbolic(12).unwrap().all_passed());
    }

    #[test]
    fn non_unit_delta_rejected() {
        let omega = EtaleAlgebra::parse("x^2-3").unwrap();
        let delta = vec![UniPoly::zero()];
        assert_eq!(
            construct_c2c3(&omega, Some(&delta), 1, CurveKind::X2, ConstructionOptions::numeric_only()).unwrap_err(),
            Error::NotAUnit { index: 0 }
        );
    }

    #[test]
    fn record_roundtrip() {
        let omega = EtaleAlgebra::parse("x^3-2").unwrap();
        let delta = parse_delta("x", &omega).unwrap();
        let gc = construct_c2c3(&omega, Some(&delta), 1, CurveKind::X2, ConstructionOptions::numeric_only()).unwrap();
        let rec = gc.record();
        let js = serde_json::to_string(&rec).unwrap();
        let back: ConstructionRecord = serde_json::from_str(&js).unwrap();
        let gc2 = GenericConstruction::from_record(&back, ConstructionOptions::numeric_only()).unwrap();
        assert_eq!(gc2.n, 8);
        assert_eq!(gc2.quad, gc.quad);
        assert_eq!(gc2.input_degree, 3);
    }
}
