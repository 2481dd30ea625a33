use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, QAlgebra, Rational, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest-degree coefficient first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has
/// no coefficients and `degree()` is `None` for it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(R::neg).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }

    pub fn mul_scalar(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// The polynomial `f(x^2)`.
    pub fn compose_x2(&self) -> Self {
        let mut v = vec![R::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[2 * i] = c.clone();
        }
        Self::new(v)
    }

    /// Multiplication by `x`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> std::result::Result<S, E>) -> std::result::Result<UniPoly<S>, E> {
        Ok(UniPoly::new(self.coeffs.iter().map(f).collect::<std::result::Result<_, _>>()?))
    }

    /// Remainder modulo a monic polynomial; works over any ring.
    pub fn rem_monic(&self, modulus: &Self) -> Self {
        assert!(modulus.is_monic(), "modulus must be monic");
        let k = modulus.degree().unwrap();
        let mut v = self.coeffs.clone();
        while v.len() > k {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = v.len() - k;
            for (j, mc) in modulus.coeffs[..k].iter().enumerate() {
                if !mc.is_zero() {
                    v[base + j] = v[base + j].sub(&top.mul(mc));
                }
            }
        }
        Self::new(v)
    }
}

impl<R: QAlgebra> UniPoly<R> {
    /// Lift a rational polynomial into `R[x]`.
    pub fn from_rational_poly(p: &UniPoly<Rational>) -> Self {
        p.map(R::from_rational)
    }

    /// Remainder modulo a monic rational polynomial.
    pub fn rem_rational_monic(&self, modulus: &UniPoly<Rational>) -> Self {
        assert!(modulus.is_monic(), "modulus must be monic");
        let k = modulus.degree().unwrap();
        let mut v = self.coeffs.clone();
        while v.len() > k {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = v.len() - k;
            for (j, mc) in modulus.coeffs[..k].iter().enumerate() {
                if !Ring::is_zero(mc) {
                    v[base + j] = v[base + j].sub(&top.scale(mc));
                }
            }
        }
        Self::new(v)
    }
}

impl<F: Field> UniPoly<F> {
    pub fn make_monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => self.mul_scalar(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading_coeff().inv().expect("field");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        while rem.len() > dd {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&lc_inv);
            let base = rem.len() - dd;
            for (j, c) in divisor.coeffs[..dd].iter().enumerate() {
                rem[base + j] = rem[base + j].sub(&q.mul(c));
            }
            quot[base] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Resultant by the Euclidean recurrence, using the actual degrees.
    pub fn resultant(&self, other: &Self) -> F {
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return F::zero();
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = F::one();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                Some(d) => d,
                None => return F::zero(),
            };
            if db == 0 {
                return acc.mul(&b.leading_coeff().pow(da as u32));
            }
            if da == 0 {
                return acc.mul(&a.leading_coeff().pow(db as u32));
            }
            let r = a.rem(&b);
            let Some(dr) = r.degree() else {
                return F::zero();
            };
            if (da * db) % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&b.leading_coeff().pow((da - dr) as u32));
            a = b;
            b = r;
        }
    }

    /// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)`, with `f'` taken at its
    /// formal degree `d - 1`.
    pub fn discriminant(&self) -> Result<F> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolynomial),
        };
        let lc = self.leading_coeff();
        let df = self.derivative();
        let res = match df.degree() {
            None => F::zero(),
            Some(actual) => self.resultant(&df).mul(&lc.pow((d - 1 - actual) as u32)),
        };
        let mut disc = res.div(&lc).expect("nonzero leading coefficient");
        if (d * (d - 1) / 2) % 2 == 1 {
            disc = disc.neg();
        }
        Ok(disc)
    }

    /// True iff `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> Result<bool> {
        match self.degree() {
            Some(d) if d >= 1 => Ok(self.gcd(&self.derivative()).degree() == Some(0)),
            _ => Err(Error::ConstantPolynomial),
        }
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        UniPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        UniPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        UniPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        UniPoly::constant(R::from_i64(n))
    }
    fn div_small(&self, k: u32) -> Option<Self> {
        Some(UniPoly::new(self.coeffs.iter().map(|c| c.div_small(k)).collect::<Option<_>>()?))
    }
    fn characteristic() -> u64 {
        R::characteristic()
    }
}

impl<R: Ring + fmt::Debug> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})*x")?,
                _ => write!(f, "({c:?})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Ring::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a JSON array of `"p/q"` strings, constant term first.
impl Serialize for UniPoly<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UniPoly<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(UniPoly::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Zp;

    type Q = Rational;

    fn q(cs: &[i64]) -> UniPoly<Q> {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_examples() {
        // (x^2 - 1, x - 1) -> x - 1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])), q(&[-1, 1]));
        // (x, 0) -> x; (2x, 0) made monic
        assert_eq!(q(&[0, 2]).gcd(&UniPoly::zero()), q(&[0, 1]));
        assert_eq!(UniPoly::<Q>::zero().gcd(&UniPoly::zero()), UniPoly::zero());
        // (x^4 + 1, 4x^3): x^4+1 = (x/4)(4x^3) + 1, so the gcd is 1.
        assert_eq!(q(&[1, 0, 0, 0, 1]).gcd(&q(&[0, 0, 0, 4])), q(&[1]));
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + bx + c -> b^2 - 4c, b = 3, c = -5
        assert_eq!(q(&[-5, 3, 1]).discriminant().unwrap(), Q::from(29));
        // x^3 + px + q -> -4p^3 - 27q^2 with p = -2, q = 3
        assert_eq!(q(&[3, -2, 0, 1]).discriminant().unwrap(), Q::from(-4 * -8 - 27 * 9));
        assert_eq!(q(&[1, 2, 1]).discriminant().unwrap(), Q::zero());
        assert_eq!(q(&[5]).discriminant(), Err(Error::ConstantPolynomial));
        // non-monic quadratic: 2x^2 + 3x + 1 -> 9 - 8
        assert_eq!(q(&[1, 3, 2]).discriminant().unwrap(), Q::from(1));
    }

    #[test]
    fn separability_examples() {
        assert!(q(&[-2, 0, 1]).is_separable().unwrap());
        assert!(!q(&[0, 0, 1]).is_separable().unwrap());
        assert!(q(&[1, 0, 0, 0, 1]).is_separable().unwrap());
    }

    #[test]
    fn formal_degree_discriminant_in_positive_characteristic() {
        // x^3 + x over F_3: f' = 1 (degree drop); disc(x^3+px+q) = -4p^3 - 27q^2 = -4.
        let f: UniPoly<Zp<3>> = UniPoly::from_i64s(&[0, 1, 0, 1]);
        assert_eq!(f.discriminant().unwrap(), Zp::<3>::new(-4));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res((x-1)(x-2), x-3) = (1-3)(2-3) = 2
        let a = q(&[2, -3, 1]);
        let b = q(&[-3, 1]);
        assert_eq!(a.resultant(&b), Q::from(2));
        assert_eq!(b.resultant(&a), Q::from(2));
    }

    #[test]
    fn rem_monic_and_compose() {
        let f = q(&[1, 2, 1]); // (x+1)^2
        let m = q(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(f.rem_monic(&m), q(&[3, 2]));
        assert_eq!(q(&[1, 1]).compose_x2(), q(&[1, 0, 1]));
    }

    #[test]
    fn display_and_json() {
        let f = UniPoly::new(vec![Q::new(-1, 2), Q::zero(), Q::from(-3), Q::one()]);
        assert_eq!(f.to_string(), "x^3 - 3*x^2 - (1/2)");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"["-1/2","0/1","-3/1","1/1"]"#);
        let back: UniPoly<Q> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
