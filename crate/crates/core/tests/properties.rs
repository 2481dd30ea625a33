use std::sync::Arc;

use hypell::arith::{Field, MultiPoly, Rational, Ring, UniPoly};
use hypell::constructions::{construct_family, construct_with_d, phi1, phi2, AlphaSource, ConstructionOptions, CurveKind, OmegaPoint};
use hypell::etale::{element_at, AlgebraElement, EtaleAlgebra};
use hypell::specialize::{specialize_at, substitute_symbolic, AdmissibilityCheck};
use hypell::sqrt_decomp::{decompose, recompose};
use hypell::Error;
use proptest::prelude::*;

fn q() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=3).prop_map(|(a, b)| Rational::new(a, b))
}

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly<Rational>> {
    proptest::collection::vec(q(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

fn monic(deg: usize) -> impl Strategy<Value = UniPoly<Rational>> {
    proptest::collection::vec(q(), deg).prop_map(|mut cs| {
        cs.push(Rational::one());
        UniPoly::new(cs)
    })
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

const FACTORS: [&str; 9] = ["x", "x^2-2", "x^2+1", "x^2+x+1", "x^3-2", "x^3-x-1", "x^4+1", "x^4-x-1", "x^5-x-1"];

/// Étale algebra from picks into `FACTORS`, truncated at total degree `max`.
fn algebra(picks: &[usize], max: usize) -> Arc<EtaleAlgebra> {
    let mut fs = Vec::new();
    let mut deg = 0;
    for &i in picks {
        let f = hypell::arith::parse_unipoly(FACTORS[i % FACTORS.len()]).unwrap();
        let d = f.degree().unwrap();
        if deg + d <= max {
            deg += d;
            fs.push(f);
        }
    }
    if fs.is_empty() {
        fs.push(UniPoly::x());
    }
    Arc::new(EtaleAlgebra::new(fs).unwrap())
}

fn element(alg: &Arc<EtaleAlgebra>, coords: &[Rational]) -> AlgebraElement<Rational> {
    let n = alg.degree();
    AlgebraElement::from_coords(alg, coords.iter().cycle().take(n).cloned().collect()).unwrap()
}

/// Determinant by Gaussian elimination over Q.
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = d.neg();
        }
        d = d.mul(&m[c][c]);
        let inv = m[c][c].inv().unwrap();
        for r in c + 1..n {
            let f = m[r][c].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let v = m[c][k].mul(&f);
                m[r][k] = m[r][k].sub(&v);
            }
        }
    }
    d
}

/// `p(a)` by Horner's rule with the algebra operations.
fn horner(p: &UniPoly<Rational>, a: &AlgebraElement<Rational>) -> AlgebraElement<Rational> {
    let alg = a.parent();
    p.coeffs().iter().rev().fold(AlgebraElement::zero(alg), |acc, c| acc.mul(a).unwrap().add(&AlgebraElement::constant(alg, c.clone())).unwrap())
}

fn has_repeated_root(f: &UniPoly<Rational>) -> bool {
    f.gcd(&f.derivative()).degree().unwrap_or(0) > 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_contains_common_factor(f in poly(4), g in poly(4), h in poly(3)) {
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let (a, b) = (f.mul(&h), g.mul(&h));
        let d = a.gcd(&b);
        prop_assert!(d.is_monic());
        prop_assert!(a.rem(&d).is_zero());
        prop_assert!(b.rem(&d).is_zero());
        prop_assert!(d.rem(&h).is_zero());
    }

    #[test]
    fn discriminant_of_product(f in (1usize..4).prop_flat_map(monic), g in (1usize..5).prop_flat_map(monic), c in q()) {
        prop_assume!(!c.is_zero());
        let res = f.resultant(&g);
        let lhs = f.mul(&g).discriminant().unwrap();
        let rhs = f.discriminant().unwrap().mul(&g.discriminant().unwrap()).mul(&res.square());
        prop_assert_eq!(lhs, rhs);
        // resultant vanishes exactly on a common root
        prop_assert_eq!(res.is_zero(), f.gcd(&g).degree().unwrap_or(0) > 0);
        // disc f(cx) = c^{n(n-1)} disc f
        let scaled = UniPoly::new(f.coeffs().iter().enumerate().map(|(i, a)| a.mul(&c.pow(i as u32))).collect());
        let n = f.degree().unwrap() as u32;
        prop_assert_eq!(scaled.discriminant().unwrap(), f.discriminant().unwrap().mul(&c.pow(n * (n - 1))));
    }

    #[test]
    fn separable_iff_nonzero_discriminant(f in poly(6), r in poly(2)) {
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(f.is_separable().unwrap(), !f.discriminant().unwrap().is_zero());
        prop_assert_eq!(f.is_separable().unwrap(), !has_repeated_root(&f));
        // a planted square factor is always detected
        if r.degree().unwrap_or(0) >= 1 {
            let g = f.mul(&r).mul(&r);
            prop_assert!(!g.is_separable().unwrap());
            prop_assert!(g.discriminant().unwrap().is_zero());
        }
    }

    #[test]
    fn multipoly_substitution_is_a_homomorphism(
        p in proptest::collection::vec((proptest::collection::vec(0u32..4, 3), q()), 0..6),
        r in proptest::collection::vec((proptest::collection::vec(0u32..4, 3), q()), 0..6),
        t in proptest::collection::vec(q(), 3),
    ) {
        let p = MultiPoly::from_terms(3, p);
        let r = MultiPoly::from_terms(3, r);
        let (a, b) = (p.substitute(&t).unwrap(), r.substitute(&t).unwrap());
        prop_assert_eq!(p.mul(&r).substitute(&t).unwrap(), a.mul(&b));
        prop_assert_eq!(p.add(&r).substitute(&t).unwrap(), a.add(&b));
        prop_assert_eq!(p.sub(&r).substitute(&t).unwrap(), a.sub(&b));
        // composing with constants is the same as substituting
        let consts: Vec<MultiPoly> = t.iter().map(|c| MultiPoly::constant(c.clone(), 1)).collect();
        prop_assert_eq!(p.compose(&consts).unwrap().as_constant(), Some(a));
    }

    #[test]
    fn cayley_hamilton_and_norm(picks in proptest::collection::vec(0usize..9, 1..5), coords in proptest::collection::vec(q(), 1..11), c in q()) {
        let alg = algebra(&picks, 10);
        let a = element(&alg, &coords);
        let m = a.charpoly();
        prop_assert!(m.is_monic());
        prop_assert_eq!(m.degree(), Some(alg.degree()));
        prop_assert!(horner(&m, &a).is_zero());
        prop_assert!(a.eval_poly(&m).is_zero());
        let mm = a.multiplication_matrix();
        let n = alg.degree();
        let tr = (0..n).fold(Rational::zero(), |s, i| s.add(&mm[i][i]));
        prop_assert_eq!(a.trace(), tr);
        prop_assert_eq!(a.norm(), det(mm.clone()));
        // charpoly(c) = det(c I - M)
        let shifted: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.sub(&mm[i][j]) } else { mm[i][j].neg() }).collect())
            .collect();
        prop_assert_eq!(m.eval(&c), det(shifted));
        prop_assert_eq!(a.is_unit(), !a.norm().is_zero());
    }

    #[test]
    fn charpoly_is_multiplicative_over_products(p1 in proptest::collection::vec(0usize..9, 1..3), p2 in proptest::collection::vec(0usize..9, 1..3), c1 in proptest::collection::vec(q(), 1..6), c2 in proptest::collection::vec(q(), 1..6)) {
        let a = algebra(&p1, 5);
        let b = algebra(&p2, 5);
        let ab = Arc::new(EtaleAlgebra::new(a.factors().iter().chain(b.factors()).cloned().collect()).unwrap());
        let x = element(&a, &c1);
        let y = element(&b, &c2);
        let xy = AlgebraElement::new(&ab, x.components().iter().chain(y.components()).cloned().collect()).unwrap();
        prop_assert_eq!(xy.charpoly(), x.charpoly().mul(&y.charpoly()));
        prop_assert_eq!(xy.trace(), x.trace().add(&y.trace()));
        prop_assert_eq!(xy.norm(), x.norm().mul(&y.norm()));
    }

    #[test]
    fn sqrt_decomposition_roundtrip(half in 1usize..7, cs in proptest::collection::vec(q(), 12)) {
        let n = 2 * half;
        let mut c = cs[..n].to_vec();
        c.push(Rational::one());
        let m = UniPoly::new(c);
        let dec = decompose(&m).unwrap();
        prop_assert_eq!(dec.recompose(), m);
        prop_assert_eq!(dec.d, half - 1);
        prop_assert!(dec.h.is_monic());
        prop_assert_eq!(dec.h.degree(), Some(half));
        prop_assert!(dec.ell.degree().is_none_or(|e| e <= dec.d));
        prop_assert_eq!(dec.flags.ell_zero, dec.ell.is_zero());
        prop_assert_eq!(dec.flags.ell_degree_drop, dec.ell.coeff(dec.d).is_zero());
    }

    #[test]
    fn sqrt_decomposition_is_unique(d in 0usize..6, hs in proptest::collection::vec(q(), 6), ls in proptest::collection::vec(q(), 6), drop in 0usize..3) {
        // plant (h, ℓ) and recover it
        let mut hc = hs[..=d].to_vec();
        hc.push(Rational::one());
        let h = UniPoly::new(hc);
        let keep = (d + 1).saturating_sub(drop);
        let ell = UniPoly::new(ls[..keep.min(d + 1)].to_vec());
        let dec = decompose(&recompose(&h, &ell)).unwrap();
        prop_assert_eq!(&dec.h, &h);
        prop_assert_eq!(&dec.ell, &ell);
        prop_assert_eq!(dec.flags.ell_zero, ell.is_zero());
        prop_assert_eq!(dec.flags.ell_degree_drop, ell.degree().is_none_or(|e| e < d));
    }

    #[test]
    fn specialization_identities(kind in 0usize..3, t in proptest::collection::vec(-12i64..=12, 6)) {
        let omega = EtaleAlgebra::parse("x^2-2; x").unwrap();
        let delta = vec![UniPoly::x(), UniPoly::from_i64s(&[3])];
        let fam = construct_family(&omega, Some(&delta), 2, ConstructionOptions::default()).unwrap();
        let gc = &fam[kind];
        let t = ints(&t);
        match specialize_at(gc, &t) {
            Ok(sc) => {
                let (dec, point) = substitute_symbolic(gc, &t).unwrap();
                prop_assert_eq!(&dec.ell, &sc.dec.ell);
                prop_assert_eq!(&dec.h, &sc.dec.h);
                prop_assert_eq!(&point, &sc.point);
                prop_assert_eq!(sc.dec.recompose(), sc.dec.m.clone());
                prop_assert!(horner(&sc.dec.m, &sc.alpha).is_zero());
                prop_assert!(sc.point_satisfies().unwrap());
                prop_assert_eq!(sc.quad_charpoly_identity().unwrap(), Some(true));
            }
            Err(Error::Inadmissible { check }) => {
                // the named condition really fails
                let (alpha, _) = hypell::etale::quad_at(gc.quad.as_ref().unwrap(), &t).unwrap();
                let m = alpha.charpoly();
                let ell = decompose(&m).map(|d| d.ell);
                let violated = match check {
                    AdmissibilityCheck::MDiscriminant => has_repeated_root(&m),
                    AdmissibilityCheck::EllDegree => ell.unwrap().coeff(gc.d).is_zero(),
                    AdmissibilityCheck::EllDiscriminant => ell.unwrap().degree().unwrap_or(0) >= 1 && has_repeated_root(&decompose(&m).unwrap().ell),
                    AdmissibilityCheck::MAtZero => m.coeff(0).is_zero(),
                    AdmissibilityCheck::EllAtZero => ell.unwrap().coeff(0).is_zero(),
                    AdmissibilityCheck::EllSquaredDiscriminant => has_repeated_root(&ell.unwrap().compose_x2()),
                };
                prop_assert!(violated, "{check:?} at {t:?}");
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn split_points_lie_on_the_curve(t in proptest::collection::vec(-20i64..=20, 6)) {
        let omega = EtaleAlgebra::split(6).unwrap();
        let gc = construct_with_d(CurveKind::X1, AlphaSource::Linear, &omega, None, 2, ConstructionOptions::numeric_only()).unwrap();
        let t = ints(&t);
        match specialize_at(&gc, &t) {
            Ok(sc) => {
                // m = Π (x - t_i)
                let prod = t.iter().fold(UniPoly::one(), |acc, u| acc.mul(&UniPoly::new(vec![u.neg(), Rational::one()])));
                prop_assert_eq!(&sc.dec.m, &prod);
                let pts = sc.split_points();
                prop_assert_eq!(pts.len(), 6);
                let f = sc.defining_polynomial();
                for (p, u) in pts.iter().zip(&t) {
                    prop_assert_eq!(&p.x, u);
                    prop_assert_eq!(p.y.square(), f.eval(&p.x));
                }
            }
            Err(Error::Inadmissible { check: AdmissibilityCheck::MDiscriminant }) => {
                let mut s = t.clone();
                s.sort_by(|a, b| a.as_big().cmp(b.as_big()));
                prop_assert!(s.windows(2).any(|w| w[0] == w[1]));
            }
            Err(Error::Inadmissible { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn morphisms_map_marked_points(t in proptest::collection::vec(-9i64..=9, 6)) {
        let omega = EtaleAlgebra::parse("x^3-x-1; x").unwrap();
        let delta = vec![UniPoly::from_i64s(&[1, 1]), UniPoly::from_i64s(&[5])];
        let fam = construct_family(&omega, Some(&delta), 2, ConstructionOptions::numeric_only()).unwrap();
        let t = ints(&t);
        let Ok(members) = fam.iter().map(|gc| specialize_at(gc, &t)).collect::<Result<Vec<_>, _>>() else {
            return Ok(());
        };
        let ext = members[2].quad.as_ref().unwrap();
        let OmegaPoint::OmegaTilde { x, y } = &members[2].point else { unreachable!() };
        let (x1, y1) = phi1(x, y, ext).unwrap();
        let (x2, y2) = phi2(x, y, ext).unwrap();
        prop_assert_eq!(&OmegaPoint::OmegaTilde { x: x1, y: y1 }, &members[0].point);
        prop_assert_eq!(&OmegaPoint::OmegaTilde { x: x2, y: y2 }, &members[1].point);
    }
}

#[test]
fn element_at_matches_generic_element() {
    let alg = Arc::new(EtaleAlgebra::parse("x^2+1; x^3-2").unwrap());
    let t = ints(&[3, -1, 4, 1, -5]);
    let g = hypell::etale::generic_element(&alg);
    assert_eq!(g.substitute(&t).unwrap(), element_at(&alg, &t).unwrap());
    assert_eq!(g.charpoly().try_map(|c| c.substitute(&t)).unwrap(), element_at(&alg, &t).unwrap().charpoly());
}
