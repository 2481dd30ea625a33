//! Genus-one models `y^2 = f(x)` with `deg f` 3 or 4, their Weierstrass
//! forms, and the j-invariant.

use serde::Serialize;

use crate::arith::{Field, FieldContext, Rational, RationalField, Ring, UniPoly};
use crate::error::{Error, Result};

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` over the field `ctx`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weierstrass<C: FieldContext> {
    pub ctx: C,
    pub a2: C::Elem,
    pub a4: C::Elem,
    pub a6: C::Elem,
}

/// Affine point or the point at infinity (`None`).
pub type EcPoint<E> = Option<(E, E)>;

impl<C: FieldContext> Weierstrass<C> {
    pub fn new(ctx: C, a2: C::Elem, a4: C::Elem, a6: C::Elem) -> Self {
        Weierstrass { ctx, a2, a4, a6 }
    }

    /// Right-hand side `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs(&self, x: &C::Elem) -> C::Elem {
        let c = &self.ctx;
        let t = c.add(&c.mul(&c.add(x, &self.a2), x), &self.a4);
        c.add(&c.mul(&t, x), &self.a6)
    }

    pub fn contains(&self, p: &EcPoint<C::Elem>) -> bool {
        match p {
            None => true,
            Some((x, y)) => self.ctx.sub(&self.ctx.square(y), &self.rhs(x)) == self.ctx.zero(),
        }
    }

    /// `b2, b4, b6, b8` for `a1 = a3 = 0`.
    fn b_invariants(&self) -> [C::Elem; 4] {
        let c = &self.ctx;
        let b2 = c.mul(&c.from_i64(4), &self.a2);
        let b4 = c.mul(&c.from_i64(2), &self.a4);
        let b6 = c.mul(&c.from_i64(4), &self.a6);
        let b8 = c.sub(&c.mul(&b2, &self.a6), &c.square(&self.a4));
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> C::Elem {
        let c = &self.ctx;
        let [b2, b4, b6, b8] = self.b_invariants();
        let t1 = c.neg(&c.mul(&c.square(&b2), &b8));
        let t2 = c.mul(&c.from_i64(8), &c.mul(&c.square(&b4), &b4));
        let t3 = c.mul(&c.from_i64(27), &c.square(&b6));
        let t4 = c.mul(&c.from_i64(9), &c.mul(&b2, &c.mul(&b4, &b6)));
        c.add(&c.sub(&c.sub(&t1, &t2), &t3), &t4)
    }

    pub fn c4(&self) -> C::Elem {
        let c = &self.ctx;
        let [b2, b4, _, _] = self.b_invariants();
        c.sub(&c.square(&b2), &c.mul(&c.from_i64(24), &b4))
    }

    /// `c4^3 / Δ`; `None` for a singular model.
    pub fn j_invariant(&self) -> Option<C::Elem> {
        let c = &self.ctx;
        let c4 = self.c4();
        c.div(&c.mul(&c.square(&c4), &c4), &self.discriminant())
    }

    pub fn neg(&self, p: &EcPoint<C::Elem>) -> EcPoint<C::Elem> {
        p.as_ref().map(|(x, y)| (x.clone(), self.ctx.neg(y)))
    }

    pub fn add(&self, p: &EcPoint<C::Elem>, q: &EcPoint<C::Elem>) -> EcPoint<C::Elem> {
        let c = &self.ctx;
        let (Some((x1, y1)), Some((x2, y2))) = (p, q) else {
            return if p.is_none() { q.clone() } else { p.clone() };
        };
        let lambda = if x1 == x2 {
            if c.is_zero(&c.add(y1, y2)) {
                return None;
            }
            // (3x^2 + 2 a2 x + a4) / 2y
            let num = c.add(
                &c.add(&c.mul(&c.from_i64(3), &c.square(x1)), &c.mul(&c.from_i64(2), &c.mul(&self.a2, x1))),
                &self.a4,
            );
            c.div(&num, &c.mul(&c.from_i64(2), y1)).expect("nonzero denominator")
        } else {
            c.div(&c.sub(y2, y1), &c.sub(x2, x1)).expect("distinct x")
        };
        let x3 = c.sub(&c.sub(&c.sub(&c.square(&lambda), &self.a2), x1), x2);
        let y3 = c.sub(&c.mul(&lambda, &c.sub(x1, &x3)), y1);
        Some((x3, y3))
    }

    pub fn sub(&self, p: &EcPoint<C::Elem>, q: &EcPoint<C::Elem>) -> EcPoint<C::Elem> {
        self.add(p, &self.neg(q))
    }

    /// `k p` for any integer `k`.
    pub fn mul(&self, p: &EcPoint<C::Elem>, k: i64) -> EcPoint<C::Elem> {
        let mut base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// `Σ c_i p_i`.
    pub fn combination(&self, points: &[EcPoint<C::Elem>], coeffs: &[i64]) -> EcPoint<C::Elem> {
        points.iter().zip(coeffs).fold(None, |acc, (p, &k)| self.add(&acc, &self.mul(p, k)))
    }
}

pub type RationalCurve = Weierstrass<RationalField>;
pub type RationalPoint = EcPoint<Rational>;

/// Which branch of the transformation applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransformKind {
    /// `deg f = 3`: scale the cubic, origin at infinity.
    Cubic,
    /// Quartic with base point on `y = 0`: move it to infinity.
    QuarticRoot,
    /// Quartic with base point `(x0, q)`, `q != 0`.
    QuarticPoint,
}

/// Birational map from `y^2 = f(x)` (degree 3 or 4) to a Weierstrass cubic.
#[derive(Clone, Debug)]
pub struct WeierstrassTransform {
    pub kind: TransformKind,
    pub curve: RationalCurve,
    /// Base point on the quartic model (`None` for the cubic branch).
    pub base: Option<(Rational, Rational)>,
    /// Coefficients `e, d, c, b, a` of `f(u + x0)`.
    shifted: [Rational; 5],
    /// `a1`, `a3` of the long form, before completing the square.
    a1: Rational,
    a3: Rational,
    a2_long: Rational,
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

impl WeierstrassTransform {
    /// Build the transformation. For a quartic `base` must be a rational point
    /// of the model; for a cubic it is ignored.
    pub fn new(f: &UniPoly<Rational>, base: Option<&(Rational, Rational)>) -> Result<Self> {
        let deg = f.degree().unwrap_or(0);
        if deg != 3 && deg != 4 {
            return Err(Error::NotGenusOne(deg));
        }
        if !f.is_separable()? {
            return Err(Error::InvalidParameters("model is singular".into()));
        }
        let zero = Rational::zero();
        if deg == 3 {
            // Y = b y, X = b x: Y^2 = X^3 + c X^2 + b d X + b^2 e
            let (e, d, c, b) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
            let curve = Weierstrass::new(RationalField, c, b.mul(&d), b.square().mul(&e));
            return Ok(WeierstrassTransform {
                kind: TransformKind::Cubic,
                curve,
                base: None,
                shifted: [e, d, f.coeff(2), b, zero.clone()],
                a1: zero.clone(),
                a3: zero.clone(),
                a2_long: zero,
            });
        }
        let (x0, y0) = base.cloned().ok_or(Error::NoRationalPoint)?;
        if f.eval(&x0) != y0.square() {
            return Err(Error::InvalidParameters("base point is not on the model".into()));
        }
        // f(u + x0)
        let shift = UniPoly::new(vec![x0.clone(), Rational::one()]);
        let g = f.coeffs().iter().rev().fold(UniPoly::zero(), |acc: UniPoly<Rational>, c| acc.mul(&shift).add(&UniPoly::constant(c.clone())));
        let s = [g.coeff(0), g.coeff(1), g.coeff(2), g.coeff(3), g.coeff(4)];
        let [e, d, c, b, a] = s.clone();
        if Ring::is_zero(&y0) {
            debug_assert!(Ring::is_zero(&e));
            // u = 1/X, Y = y X^2: Y^2 = d X^3 + c X^2 + b X + a; then scale by d
            let curve = Weierstrass::new(RationalField, c.clone(), b.mul(&d), a.mul(&d.square()));
            return Ok(WeierstrassTransform {
                kind: TransformKind::QuarticRoot,
                curve,
                base: Some((x0, y0)),
                shifted: s,
                a1: zero.clone(),
                a3: zero.clone(),
                a2_long: zero,
            });
        }
        let qq = y0.clone();
        let q2 = qq.square();
        let a1 = d.div(&qq).unwrap();
        let a2 = c.sub(&d.square().div(&q2.mul(&q(4))).unwrap());
        let a3 = q(2).mul(&qq).mul(&b);
        let a4 = q(-4).mul(&q2).mul(&a);
        let a6 = a2.mul(&a4);
        // complete the square: y' = y + (a1 x + a3)/2
        let half = Rational::new(1, 2);
        let quarter = Rational::new(1, 4);
        let curve = Weierstrass::new(
            RationalField,
            a2.add(&a1.square().mul(&quarter)),
            a4.add(&a1.mul(&a3).mul(&half)),
            a6.add(&a3.square().mul(&quarter)),
        );
        Ok(WeierstrassTransform { kind: TransformKind::QuarticPoint, curve, base: Some((x0, y0)), shifted: s, a1, a3, a2_long: a2 })
    }

    /// Image of a rational point of the genus-one model.
    pub fn map_point(&self, p: &(Rational, Rational)) -> RationalPoint {
        let [_, d, c, b, _] = &self.shifted;
        match self.kind {
            TransformKind::Cubic => Some((b.mul(&p.0), b.mul(&p.1))),
            TransformKind::QuarticRoot => {
                let (x0, _) = self.base.as_ref().unwrap();
                let u = p.0.sub(x0);
                if Ring::is_zero(&u) {
                    return None;
                }
                let x = d.div(&u).unwrap();
                let y = d.mul(&p.1).div(&u.square()).unwrap();
                Some((x, y))
            }
            TransformKind::QuarticPoint => {
                let (x0, qq) = self.base.as_ref().unwrap();
                let u = p.0.sub(x0);
                let v = &p.1;
                let (x, y) = if Ring::is_zero(&u) {
                    if v == qq {
                        return None;
                    }
                    // the other point over the base x-coordinate
                    let x = self.a2_long.neg();
                    (x.clone(), self.a1.mul(&self.a2_long).sub(&self.a3))
                } else {
                    let two_q = q(2).mul(qq);
                    let x = two_q.mul(&v.add(qq)).add(&d.mul(&u)).div(&u.square()).unwrap();
                    let y = q(4)
                        .mul(&qq.square())
                        .mul(&v.add(qq))
                        .add(&two_q.mul(&d.mul(&u).add(&c.mul(&u.square()))))
                        .sub(&d.square().mul(&u.square()).div(&two_q).unwrap())
                        .div(&u.square().mul(&u))
                        .unwrap();
                    (x, y)
                };
                // y' = y + (a1 x + a3) / 2
                let yp = y.add(&self.a1.mul(&x).add(&self.a3).mul(&Rational::new(1, 2)));
                Some((x, yp))
            }
        }
    }
}

/// Classical invariants of the binary quartic `a x^4 + 4b x^3 + 6c x^2 + 4d x + e`,
/// `I = ae - 4bd + 3c^2` and `J = ace + 2bcd - ad^2 - eb^2 - c^3`.
pub fn quartic_invariants(f: &UniPoly<Rational>) -> (Rational, Rational) {
    let a = f.coeff(4);
    let b = f.coeff(3).mul(&Rational::new(1, 4));
    let c = f.coeff(2).mul(&Rational::new(1, 6));
    let d = f.coeff(1).mul(&Rational::new(1, 4));
    let e = f.coeff(0);
    let i = a.mul(&e).sub(&q(4).mul(&b).mul(&d)).add(&q(3).mul(&c.square()));
    let j = a
        .mul(&c)
        .mul(&e)
        .add(&q(2).mul(&b).mul(&c).mul(&d))
        .sub(&a.mul(&d.square()))
        .sub(&e.mul(&b.square()))
        .sub(&c.square().mul(&c));
    (i, j)
}

/// `j = 1728 I^3 / (I^3 - 27 J^2)` from the quartic invariants; a cubic is
/// treated as a quartic with a root at infinity.
pub fn j_from_invariants(f: &UniPoly<Rational>) -> Result<Rational> {
    let deg = f.degree().unwrap_or(0);
    if deg != 3 && deg != 4 {
        return Err(Error::NotGenusOne(deg));
    }
    let (i, j) = quartic_invariants(f);
    let i3 = i.square().mul(&i);
    let den = i3.sub(&q(27).mul(&j.square()));
    q(1728).mul(&i3).div(&den).ok_or_else(|| Error::InvalidParameters("singular model".into()))
}

/// j-invariant through the Weierstrass transformation at `base`.
pub fn j_from_weierstrass(f: &UniPoly<Rational>, base: Option<&(Rational, Rational)>) -> Result<Rational> {
    let t = WeierstrassTransform::new(f, base)?;
    t.curve.j_invariant().ok_or_else(|| Error::InvalidParameters("singular model".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn lemniscatic() {
        let f = poly(&[1, 0, 0, 0, 1]);
        assert_eq!(j_from_invariants(&f).unwrap(), q(1728));
        let base = (q(0), q(1));
        assert_eq!(j_from_weierstrass(&f, Some(&base)).unwrap(), q(1728));
        let base = (q(0), q(-1));
        assert_eq!(j_from_weierstrass(&f, Some(&base)).unwrap(), q(1728));
    }

    #[test]
    fn one_minus_x4() {
        let f = poly(&[1, 0, 0, 0, -1]);
        for base in [(q(0), q(1)), (q(1), q(0)), (q(-1), q(0))] {
            assert_eq!(j_from_weierstrass(&f, Some(&base)).unwrap(), j_from_invariants(&f).unwrap());
        }
    }

    #[test]
    fn cubic_matches_standard_formula() {
        // y^2 = x^3 - x + 1: j = 1728 * 4(-1)^3 / (4(-1)^3 + 27) = -6912/23
        let f = poly(&[1, -1, 0, 1]);
        assert_eq!(j_from_weierstrass(&f, None).unwrap(), Rational::new(-6912, 23));
        assert_eq!(j_from_invariants(&f).unwrap(), Rational::new(-6912, 23));
    }

    #[test]
    fn mapped_points_lie_on_the_cubic() {
        // y^2 = x^4 + 2x + 1
        let f = poly(&[1, 2, 0, 0, 1]);
        let pts: Vec<(Rational, Rational)> = [(0, 1), (0, -1), (-1, 0)].iter().map(|&(a, b)| (q(a), q(b))).collect();
        for base in &pts {
            let t = WeierstrassTransform::new(&f, Some(base)).unwrap();
            for p in &pts {
                assert!(t.curve.contains(&t.map_point(p)), "base {base:?} point {p:?}");
            }
            assert_eq!(t.map_point(base), None);
        }
    }

    #[test]
    fn group_law_basics() {
        let e = Weierstrass::new(RationalField, q(0), q(-1), q(1));
        let p = Some((q(1), q(1)));
        assert!(e.contains(&p));
        let p2 = e.add(&p, &p);
        assert!(e.contains(&p2));
        assert_eq!(e.mul(&p, 3), e.add(&p2, &p));
        assert_eq!(e.add(&p, &e.neg(&p)), None);
        assert_eq!(e.mul(&p, -2), e.neg(&p2));
    }
}
