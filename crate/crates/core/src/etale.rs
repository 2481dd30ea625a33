//! Finite etale Q-algebras `Q[y]/(f_1) x ... x Q[y]/(f_r)` with coefficients
//! extended to an arbitrary Q-algebra `R` (rationals, or polynomials in the
//! generic coordinates `z_i`), and their quadratic extensions `Ω[s]/(s^2 - δ)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_unipoly, MultiPoly, QAlgebra, Rational, Ring, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct EtaleAlgebra {
    factors: Vec<UniPoly<Rational>>,
    offsets: Vec<usize>,
    degree: usize,
    /// `power_sums[i][j]` is the trace of `y^j` in the `i`-th factor.
    power_sums: Vec<Vec<Rational>>,
}

impl std::fmt::Debug for EtaleAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EtaleAlgebra({})", self.describe())
    }
}

/// JSON form of an algebra: `{"factors": [poly, ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub factors: Vec<UniPoly<Rational>>,
}

/// Power sums `p_0..p_{k-1}` of the roots of a monic polynomial of degree
/// `n >= k`, by Newton's identities.
fn root_power_sums(f: &UniPoly<Rational>, k: usize) -> Vec<Rational> {
    let n = f.degree().unwrap();
    assert!(k <= n);
    let a = |i: usize| f.coeff(i);
    let mut p = vec![Rational::from(n as i64)];
    for j in 1..k {
        // p_j + a_{n-1} p_{j-1} + ... + a_{n-j+1} p_1 + j a_{n-j} = 0
        let mut s = a(n - j).mul(&Rational::from(j as i64));
        for i in 1..j {
            s = s.add(&a(n - i).mul(&p[j - i]));
        }
        p.push(s.neg());
    }
    p
}

impl EtaleAlgebra {
    /// Each factor must be monic, non-constant and separable.
    pub fn new(factors: Vec<UniPoly<Rational>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyAlgebra);
        }
        for (index, f) in factors.iter().enumerate() {
            match f.degree() {
                None | Some(0) => return Err(Error::ConstantPolynomial),
                _ => {}
            }
            if !f.is_monic() {
                return Err(Error::NotMonic);
            }
            if !f.is_separable()? {
                return Err(Error::InseparableFactor { index });
            }
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut degree = 0;
        for f in &factors {
            offsets.push(degree);
            degree += f.degree().unwrap();
        }
        let power_sums = factors.iter().map(|f| root_power_sums(f, f.degree().unwrap())).collect();
        Ok(EtaleAlgebra { factors, offsets, degree, power_sums })
    }

    /// `Q^n`, as `n` copies of `Q[y]/(y)`.
    pub fn split(n: usize) -> Result<Self> {
        Self::new(vec![UniPoly::x(); n])
    }

    /// Parse `split:N`, or factors separated by `;` (e.g. `x^2-2; x^3-2`).
    pub fn parse(desc: &str) -> Result<Self> {
        let desc = desc.trim();
        if let Some(n) = desc.strip_prefix("split:") {
            let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad split degree `{n}`")))?;
            if n == 0 {
                return Err(Error::EmptyAlgebra);
            }
            return Self::split(n);
        }
        let factors = desc.split(';').map(parse_unipoly).collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    pub fn from_descriptor(d: &AlgebraDescriptor) -> Result<Self> {
        Self::new(d.factors.clone())
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor { factors: self.factors.clone() }
    }

    pub fn describe(&self) -> String {
        self.factors.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join(" x ")
    }

    pub fn factors(&self) -> &[UniPoly<Rational>] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factor_degree(&self, i: usize) -> usize {
        self.factors[i].degree().unwrap()
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    /// True when every factor is linear.
    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|f| f.degree() == Some(1))
    }

    /// Append copies of `Q` until the degree reaches `n`.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if self.degree > n {
            return Err(Error::DegreeOverflow { have: self.degree, limit: n });
        }
        let mut factors = self.factors.clone();
        factors.extend(std::iter::repeat_n(UniPoly::x(), n - self.degree));
        Self::new(factors)
    }

    /// Trace of the basis monomial `y^j` of factor `i`.
    pub fn monomial_trace(&self, i: usize, j: usize) -> &Rational {
        &self.power_sums[i][j]
    }
}

/// An element of `Ω ⊗_Q R`, stored as one residue polynomial per factor.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<R> {
    parent: Arc<EtaleAlgebra>,
    comps: Vec<UniPoly<R>>,
}

impl<R: std::fmt::Debug + Ring> std::fmt::Debug for AlgebraElement<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.comps.iter()).finish()
    }
}

fn same_parent(a: &Arc<EtaleAlgebra>, b: &Arc<EtaleAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<R: QAlgebra> AlgebraElement<R> {
    /// Components are reduced modulo their factors.
    pub fn new(parent: &Arc<EtaleAlgebra>, comps: Vec<UniPoly<R>>) -> Result<Self> {
        if comps.len() != parent.num_factors() {
            return Err(Error::ArityMismatch { expected: parent.num_factors(), got: comps.len() });
        }
        let comps = comps.into_iter().zip(&parent.factors).map(|(c, f)| c.rem_rational_monic(f)).collect();
        Ok(AlgebraElement { parent: parent.clone(), comps })
    }

    /// Element with the given coordinates in the concatenated monomial basis.
    pub fn from_coords(parent: &Arc<EtaleAlgebra>, coords: Vec<R>) -> Result<Self> {
        if coords.len() != parent.degree() {
            return Err(Error::ArityMismatch { expected: parent.degree(), got: coords.len() });
        }
        let mut it = coords.into_iter();
        let comps = (0..parent.num_factors())
            .map(|i| UniPoly::new(it.by_ref().take(parent.factor_degree(i)).collect()))
            .collect();
        Ok(AlgebraElement { parent: parent.clone(), comps })
    }

    pub fn constant(parent: &Arc<EtaleAlgebra>, c: R) -> Self {
        let comps = vec![UniPoly::constant(c); parent.num_factors()];
        AlgebraElement { parent: parent.clone(), comps }
    }

    pub fn zero(parent: &Arc<EtaleAlgebra>) -> Self {
        Self::constant(parent, R::zero())
    }

    pub fn one(parent: &Arc<EtaleAlgebra>) -> Self {
        Self::constant(parent, R::one())
    }

    /// The image of the residue class of `y` in every factor.
    pub fn generator(parent: &Arc<EtaleAlgebra>) -> Self {
        let comps = parent.factors.iter().map(|f| UniPoly::<R>::x().rem_rational_monic(f)).collect();
        AlgebraElement { parent: parent.clone(), comps }
    }

    pub fn parent(&self) -> &Arc<EtaleAlgebra> {
        &self.parent
    }

    pub fn components(&self) -> &[UniPoly<R>] {
        &self.comps
    }

    pub fn coords(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(self.parent.degree());
        for (i, c) in self.comps.iter().enumerate() {
            for j in 0..self.parent.factor_degree(i) {
                out.push(c.coeff(j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_parent(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&UniPoly<R>, &UniPoly<R>, &UniPoly<Rational>) -> UniPoly<R>) -> Result<Self> {
        self.check(other)?;
        let comps = self.comps.iter().zip(&other.comps).zip(&self.parent.factors).map(|((a, b), m)| f(a, b, m)).collect();
        Ok(AlgebraElement { parent: self.parent.clone(), comps })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, _| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, _| a.sub(b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, m| a.mul(b).rem_rational_monic(m))
    }

    pub fn neg(&self) -> Self {
        AlgebraElement { parent: self.parent.clone(), comps: self.comps.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        AlgebraElement { parent: self.parent.clone(), comps: self.comps.iter().map(|c| c.map(|x| x.scale(q))).collect() }
    }

    pub fn mul_scalar(&self, c: &R) -> Self {
        AlgebraElement { parent: self.parent.clone(), comps: self.comps.iter().map(|p| p.mul_scalar(c)).collect() }
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same parent")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.parent);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same parent");
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &UniPoly<R>) -> Self {
        let mut acc = Self::zero(&self.parent);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same parent");
            for comp in acc.comps.iter_mut() {
                *comp = comp.add(&UniPoly::constant(c.clone()));
            }
        }
        acc
    }

    /// Per-factor traces of `self^k` for `k = 0..=max`.
    fn factor_power_traces(&self, i: usize, max: usize) -> Vec<R> {
        let f = &self.parent.factors[i];
        let tr = |p: &UniPoly<R>| {
            p.coeffs()
                .iter()
                .enumerate()
                .fold(R::zero(), |acc, (j, c)| acc.add(&c.scale(self.parent.monomial_trace(i, j))))
        };
        let a = &self.comps[i];
        let mut out = vec![R::from_i64(self.parent.factor_degree(i) as i64)];
        let mut pw = UniPoly::one();
        for _ in 1..=max {
            pw = pw.mul(a).rem_rational_monic(f);
            out.push(tr(&pw));
        }
        out
    }

    /// Trace of multiplication by `self` over `R`.
    pub fn trace(&self) -> R {
        (0..self.parent.num_factors()).fold(R::zero(), |acc, i| acc.add(&self.factor_power_traces(i, 1)[1]))
    }

    /// Norm of multiplication by `self` over `R`.
    pub fn norm(&self) -> R {
        let cp = self.charpoly();
        let c0 = cp.coeff(0);
        if self.parent.degree() % 2 == 1 {
            c0.neg()
        } else {
            c0
        }
    }

    /// Characteristic polynomial of multiplication by `self`, of degree
    /// `deg Ω`; computed factor by factor from traces of powers.
    pub fn charpoly(&self) -> UniPoly<R> {
        (0..self.parent.num_factors()).fold(UniPoly::one(), |acc, i| {
            let n = self.parent.factor_degree(i);
            acc.mul(&newton_charpoly(&self.factor_power_traces(i, n), n))
        })
    }

    /// Apply a coefficient map (e.g. substitution of the generic coordinates).
    pub fn try_map<S: QAlgebra, E>(&self, f: impl Fn(&R) -> std::result::Result<S, E>) -> std::result::Result<AlgebraElement<S>, E> {
        let comps = self.comps.iter().map(|c| c.try_map(&f)).collect::<std::result::Result<_, _>>()?;
        Ok(AlgebraElement { parent: self.parent.clone(), comps })
    }
}

/// Monic polynomial of degree `n` whose roots have power sums `p[1..=n]`.
pub(crate) fn newton_charpoly<R: QAlgebra>(p: &[R], n: usize) -> UniPoly<R> {
    // e_k = (1/k) sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    let mut e: Vec<R> = vec![R::one()];
    for k in 1..=n {
        let mut s = R::zero();
        for i in 1..=k {
            let t = e[k - i].mul(&p[i]);
            s = if i % 2 == 1 { s.add(&t) } else { s.sub(&t) };
        }
        e.push(s.div_small(k as u32).expect("characteristic zero"));
    }
    let coeffs = (0..=n)
        .map(|j| {
            // coefficient of x^j is (-1)^{n-j} e_{n-j}
            let c = e[n - j].clone();
            if (n - j) % 2 == 1 {
                c.neg()
            } else {
                c
            }
        })
        .collect();
    UniPoly::new(coeffs)
}

impl AlgebraElement<Rational> {
    /// True when every component is invertible modulo its factor.
    pub fn is_unit(&self) -> bool {
        self.first_non_unit().is_none()
    }

    pub fn first_non_unit(&self) -> Option<usize> {
        self.comps
            .iter()
            .zip(&self.parent.factors)
            .position(|(c, f)| c.is_zero() || c.gcd(f).degree() != Some(0))
    }

    /// Multiplication matrix in the standard basis (column `j` is the image
    /// of the `j`-th basis vector).
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.parent.degree();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let basis = AlgebraElement::from_coords(&self.parent, e).expect("arity");
            let img = self.mul(&basis).expect("same parent").coords();
            for (i, v) in img.into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        m
    }

    /// Per-factor coefficient arrays for JSON output.
    pub fn to_json_components(&self) -> Vec<Vec<Rational>> {
        self.comps.iter().map(|c| c.coeffs().to_vec()).collect()
    }

    pub fn from_json_components(parent: &Arc<EtaleAlgebra>, comps: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(parent, comps.into_iter().map(UniPoly::new).collect())
    }
}

impl AlgebraElement<MultiPoly> {
    /// Evaluate all coefficients at a rational point.
    pub fn substitute(&self, t: &[Rational]) -> Result<AlgebraElement<Rational>> {
        self.try_map(|c| c.substitute(t))
    }
}

/// The generic element `Σ z_i α_i` over `Q[z_1..z_n]`, `n = deg Ω`, in the
/// standard basis.
pub fn generic_element(parent: &Arc<EtaleAlgebra>) -> AlgebraElement<MultiPoly> {
    let n = parent.degree();
    let coords = (0..n).map(|i| MultiPoly::var(i, n)).collect();
    AlgebraElement::from_coords(parent, coords).expect("arity")
}

/// Specialization of the generic element: `Σ t_i α_i`.
pub fn element_at(parent: &Arc<EtaleAlgebra>, t: &[Rational]) -> Result<AlgebraElement<Rational>> {
    AlgebraElement::from_coords(parent, t.to_vec())
}

/// `Ω~ = Ω[s]/(s^2 - δ)` for a unit `δ ∈ Ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExtension {
    base: Arc<EtaleAlgebra>,
    delta: AlgebraElement<Rational>,
}

impl QuadExtension {
    pub fn new(delta: AlgebraElement<Rational>) -> Result<Self> {
        if let Some(index) = delta.first_non_unit() {
            return Err(Error::NotAUnit { index });
        }
        Ok(QuadExtension { base: delta.parent().clone(), delta })
    }

    pub fn base(&self) -> &Arc<EtaleAlgebra> {
        &self.base
    }

    pub fn delta(&self) -> &AlgebraElement<Rational> {
        &self.delta
    }

    pub fn degree(&self) -> usize {
        2 * self.base.degree()
    }

    /// `δ = 1`: `Ω~ = Ω x Ω`.
    pub fn is_split_doubling(&self) -> bool {
        self.delta == AlgebraElement::one(&self.base)
    }
}

/// `a + b s` in `Ω~ ⊗ R`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadElement<R: Ring> {
    pub a: AlgebraElement<R>,
    pub b: AlgebraElement<R>,
}

impl<R: QAlgebra> QuadElement<R> {
    pub fn from_base(a: AlgebraElement<R>) -> Self {
        let b = AlgebraElement::zero(a.parent());
        QuadElement { a, b }
    }

    /// `b s`.
    pub fn pure(b: AlgebraElement<R>) -> Self {
        let a = AlgebraElement::zero(b.parent());
        QuadElement { a, b }
    }

    fn lift_delta(ext: &QuadExtension) -> AlgebraElement<R> {
        let comps = ext.delta.components().iter().map(UniPoly::<R>::from_rational_poly).collect();
        AlgebraElement::new(&ext.base, comps).expect("arity")
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(QuadElement { a: self.a.add(&o.a)?, b: self.b.add(&o.b)? })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Ok(QuadElement { a: self.a.sub(&o.a)?, b: self.b.sub(&o.b)? })
    }

    pub fn mul(&self, o: &Self, ext: &QuadExtension) -> Result<Self> {
        let delta = Self::lift_delta(ext);
        let a = self.a.mul(&o.a)?.add(&self.b.mul(&o.b)?.mul(&delta)?)?;
        let b = self.a.mul(&o.b)?.add(&self.b.mul(&o.a)?)?;
        Ok(QuadElement { a, b })
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &UniPoly<R>, ext: &QuadExtension) -> Result<Self> {
        let parent = self.a.parent();
        let mut acc = QuadElement::from_base(AlgebraElement::zero(parent));
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self, ext)?;
            acc.a = acc.a.add(&AlgebraElement::constant(parent, c.clone()))?;
        }
        Ok(acc)
    }

    /// Characteristic polynomial over `R` of multiplication on `Ω~`, of degree
    /// `2 deg Ω`, using `Tr_{Ω~}(a + b s) = 2 Tr_Ω(a)`.
    pub fn charpoly(&self, ext: &QuadExtension) -> Result<UniPoly<R>> {
        let n2 = ext.degree();
        let mut traces = vec![R::from_i64(n2 as i64)];
        let mut pw = QuadElement::from_base(AlgebraElement::one(self.a.parent()));
        for _ in 1..=n2 {
            pw = pw.mul(self, ext)?;
            traces.push(pw.a.trace().scale(&Rational::from(2)));
        }
        Ok(newton_charpoly(&traces, n2))
    }
}

impl QuadElement<MultiPoly> {
    pub fn substitute(&self, t: &[Rational]) -> Result<QuadElement<Rational>> {
        Ok(QuadElement { a: self.a.substitute(t)?, b: self.b.substitute(t)? })
    }
}

/// Generic data of the quadratic construction: `γ = Σ z_i α_i`,
/// `α = δ γ^2 ∈ Ω[z]` and `β = s γ ∈ Ω~[z]`.
#[derive(Clone, Debug)]
pub struct QuadGeneric {
    pub gamma: AlgebraElement<MultiPoly>,
    pub alpha: AlgebraElement<MultiPoly>,
    pub beta: QuadElement<MultiPoly>,
}

pub fn quad_generic(ext: &QuadExtension) -> QuadGeneric {
    let gamma = generic_element(ext.base());
    let delta = QuadElement::<MultiPoly>::lift_delta(ext);
    let alpha = delta.mul(&gamma.square()).expect("same parent");
    let beta = QuadElement::pure(gamma.clone());
    QuadGeneric { gamma, alpha, beta }
}

/// Specialized quadratic data at `γ = Σ t_i α_i`.
pub fn quad_at(ext: &QuadExtension, t: &[Rational]) -> Result<(AlgebraElement<Rational>, QuadElement<Rational>)> {
    let gamma = element_at(ext.base(), t)?;
    let alpha = ext.delta().mul(&gamma.square())?;
    Ok((alpha, QuadElement::pure(gamma)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(desc: &str) -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::parse(desc).unwrap())
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn elt(a: &Arc<EtaleAlgebra>, coords: &[i64]) -> AlgebraElement<Rational> {
        AlgebraElement::from_coords(a, coords.iter().map(|&c| q(c)).collect()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let a = alg("x^2-2");
        let x = elt(&a, &[0, 1]);
        assert_eq!(x.mul(&x).unwrap(), elt(&a, &[2, 0]));

        let s = alg("split:2");
        assert_eq!(elt(&s, &[1, 2]).mul(&elt(&s, &[3, 4])).unwrap(), elt(&s, &[3, 8]));

        let c = alg("x^3-2");
        let u = elt(&c, &[1, 1, 0]);
        assert_eq!(u.mul(&u).unwrap(), elt(&c, &[1, 2, 1]));
    }

    #[test]
    fn parent_mismatch() {
        let a = alg("x^2-2");
        let b = alg("x^2-3");
        assert_eq!(elt(&a, &[1, 0]).mul(&elt(&b, &[1, 0])), Err(Error::ParentMismatch));
    }

    #[test]
    fn charpoly_examples() {
        let s = alg("split:2");
        assert_eq!(elt(&s, &[2, 3]).charpoly(), UniPoly::from_i64s(&[6, -5, 1]));
        let a = alg("x^2-2");
        assert_eq!(elt(&a, &[0, 1]).charpoly(), UniPoly::from_i64s(&[-2, 0, 1]));
        let c = alg("x^3-2");
        assert_eq!(elt(&c, &[1, 1, 0]).charpoly(), UniPoly::from_i64s(&[-3, 3, -3, 1]));
    }

    #[test]
    fn invalid_algebras() {
        assert_eq!(EtaleAlgebra::new(vec![]), Err(Error::EmptyAlgebra));
        assert_eq!(EtaleAlgebra::parse("x^2"), Err(Error::InseparableFactor { index: 0 }));
        assert_eq!(EtaleAlgebra::parse("2x^2-1"), Err(Error::NotMonic));
        assert_eq!(EtaleAlgebra::parse("5"), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn power_sums_of_roots() {
        // roots 1, 2, 3
        let f = UniPoly::from_i64s(&[-6, 11, -6, 1]);
        assert_eq!(root_power_sums(&f, 3), vec![q(3), q(6), q(14)]);
    }

    #[test]
    fn generic_element_examples() {
        let one = alg("split:1");
        assert_eq!(generic_element(&one).charpoly(), UniPoly::new(vec![MultiPoly::var(0, 1).neg(), MultiPoly::one()]));

        let a = alg("x^2-2");
        let g = generic_element(&a);
        let (z1, z2) = (MultiPoly::var(0, 2), MultiPoly::var(1, 2));
        let expected = UniPoly::new(vec![
            z1.square().sub(&z2.square().scale(&q(2))),
            z1.scale(&q(-2)),
            MultiPoly::one(),
        ]);
        assert_eq!(g.charpoly(), expected);
    }

    #[test]
    fn quadratic_charpoly_identity_small() {
        let a = alg("x^2-2");
        let ext = QuadExtension::new(elt(&a, &[0, 1])).unwrap();
        let qg = quad_generic(&ext);
        let lhs = qg.beta.charpoly(&ext).unwrap();
        let rhs = qg.alpha.charpoly().compose_x2();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_must_be_a_unit() {
        let s = alg("split:2");
        assert_eq!(QuadExtension::new(elt(&s, &[1, 0])).unwrap_err(), Error::NotAUnit { index: 1 });
        let a = alg("x^2-2;x^2-3");
        assert!(QuadExtension::new(elt(&a, &[0, 1, 1, 0])).is_ok());
    }

    #[test]
    fn descriptor_roundtrip() {
        let a = EtaleAlgebra::parse("x^2-2; x^3-1/2*x+1").unwrap();
        let js = serde_json::to_string(&a.descriptor()).unwrap();
        assert_eq!(js, r#"{"factors":[["-2/1","0/1","1/1"],["1/1","-1/2","0/1","1/1"]]}"#);
        let back: AlgebraDescriptor = serde_json::from_str(&js).unwrap();
        assert_eq!(EtaleAlgebra::from_descriptor(&back).unwrap(), a);
    }
}
