//! The square-root approximation `m = h^2 - ℓ` of a monic polynomial of even
//! degree `n = 2d + 2`, with `h` monic of degree `d + 1` and `deg ℓ <= d`.

use serde::Serialize;

use crate::arith::{MultiPoly, Rational, Ring, UniPoly};
use crate::error::{Error, Result};

/// Conditions under which the decomposition is degenerate for the purposes
/// of the curve constructions. They are reported, not rejected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegeneracyFlags {
    /// `ℓ = 0`: `m` is a perfect square.
    pub ell_zero: bool,
    /// `deg ℓ < d`.
    pub ell_degree_drop: bool,
}

impl DegeneracyFlags {
    pub fn any(&self) -> bool {
        self.ell_zero || self.ell_degree_drop
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SqrtDecomposition<R: Ring> {
    pub m: UniPoly<R>,
    pub h: UniPoly<R>,
    pub ell: UniPoly<R>,
    pub d: usize,
    pub flags: DegeneracyFlags,
}

impl<R: Ring> SqrtDecomposition<R> {
    pub fn n(&self) -> usize {
        2 * self.d + 2
    }

    /// `h^2 - ℓ`.
    pub fn recompose(&self) -> UniPoly<R> {
        recompose(&self.h, &self.ell)
    }
}

pub fn recompose<R: Ring>(h: &UniPoly<R>, ell: &UniPoly<R>) -> UniPoly<R> {
    h.mul(h).sub(ell)
}

/// Unique `(h, ℓ)` with `m = h^2 - ℓ`, computed by back-substitution on the
/// coefficients from the top down.
pub fn decompose<R: Ring>(m: &UniPoly<R>) -> Result<SqrtDecomposition<R>> {
    let n = match m.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    if !m.is_monic() {
        return Err(Error::NotMonic);
    }
    if R::one().div_small(2).is_none() {
        return Err(Error::CharacteristicTwo);
    }
    let d = n / 2 - 1;
    // hc[k] is the coefficient of x^k in h
    let mut hc = vec![R::zero(); d + 2];
    hc[d + 1] = R::one();
    for j in 1..=d + 1 {
        let k = d + 1 - j;
        // coefficient of x^{n-j} in h^2 = 2 h_k + g_j, with g_j the sum of
        // h_a h_b over a + b = n - j and k < a, b <= d
        let target = n - j;
        let mut g = R::zero();
        for a in (k + 1)..=d {
            let b = target - a;
            if b > k && b <= d {
                g = g.add(&hc[a].mul(&hc[b]));
            }
        }
        hc[k] = m.coeff(target).sub(&g).div_small(2).expect("2 is invertible");
    }
    let h = UniPoly::new(hc);
    let ell = h.mul(&h).sub(m);
    debug_assert!(ell.degree().is_none_or(|e| e <= d));
    let flags = DegeneracyFlags { ell_zero: ell.is_zero(), ell_degree_drop: ell.degree().is_none_or(|e| e < d) };
    Ok(SqrtDecomposition { m: m.clone(), h, ell, d, flags })
}

/// The generic monic polynomial `x^n + m_{n-1} x^{n-1} + ... + m_0` over
/// `Q[m_0..m_{n-1}]`.
pub fn generic_monic(n: usize) -> UniPoly<MultiPoly> {
    let mut cs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(i, n)).collect();
    cs.push(MultiPoly::constant(Rational::one(), n));
    UniPoly::new(cs)
}

/// Decomposition of the generic monic polynomial of degree `n`.
pub fn decompose_generic(n: usize) -> Result<SqrtDecomposition<MultiPoly>> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("generic degree must be at least 2, got {n}")));
    }
    decompose(&generic_monic(n))
}
