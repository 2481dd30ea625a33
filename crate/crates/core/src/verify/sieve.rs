//! The relation-lattice sieve: integer relations among points of an elliptic
//! curve over Q, bounded by intersecting the relation lattices of many
//! reductions.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::elliptic::{reduce_curve, reduce_point, GroupData, GroupStructure};
use super::lattice::{self, IntRow};
use super::primes::odd_primes;
use crate::error::{Error, Result};
use crate::genus_one::{RationalCurve, RationalPoint, WeierstrassTransform};
use crate::specialize::SpecializedCurve;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveOptions {
    /// `B`: relations with all coefficients in `[-B, B]` are searched.
    pub coeff_bound: u64,
    /// Maximal number of primes of good reduction to use.
    pub prime_budget: usize,
    pub max_prime: u64,
    /// Primes below this are not used.
    pub first_prime: u64,
    /// Primes processed in parallel between two lattice checks.
    pub batch: usize,
    /// Search-node cap for one short-vector enumeration.
    pub node_limit: usize,
}

impl Default for SieveOptions {
    fn default() -> Self {
        SieveOptions { coeff_bound: 5, prime_budget: 200, max_prime: 100_000, first_prime: 3, batch: 8, node_limit: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SieveVerdict {
    /// No nonzero relation with coefficients bounded by `B` exists.
    #[serde(rename = "no-relation-up-to-B")]
    NoRelationUpToB,
    /// Every bounded vector of the final lattice is a verified relation.
    #[serde(rename = "relations-found")]
    RelationsFound,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl SieveVerdict {
    pub fn is_conclusive(&self) -> bool {
        *self != SieveVerdict::Inconclusive
    }
}

fn ser_rows<S: Serializer>(rows: &[IntRow], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    v.serialize(s)
}

fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.to_string().serialize(s)
}

/// Reduction data at one prime.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeData {
    #[serde(flatten)]
    pub structure: GroupStructure,
    /// Discrete logarithms of the points in the invariant-factor basis.
    pub dlogs: Vec<Vec<u64>>,
    /// Index of the per-prime relation lattice in `Z^k`.
    #[serde(serialize_with = "ser_big")]
    pub lattice_index: BigInt,
    #[serde(skip)]
    pub lattice: Vec<IntRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationLattice {
    pub k: usize,
    #[serde(serialize_with = "ser_rows")]
    pub basis: Vec<IntRow>,
    #[serde(serialize_with = "ser_big")]
    pub index: BigInt,
    pub provenance: Vec<PrimeData>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SieveResult {
    pub verdict: SieveVerdict,
    pub coeff_bound: u64,
    pub labels: Vec<String>,
    pub primes: Vec<u64>,
    pub lattice: RelationLattice,
    /// Verified relations (HNF basis of their span).
    #[serde(serialize_with = "ser_rows")]
    pub relations: Vec<IntRow>,
    /// Bounded lattice vectors that failed exact verification at the end.
    pub unverified_candidates: usize,
    /// `k - rank(verified relations)` for a conclusive verdict.
    pub dimension_estimate: Option<usize>,
}

/// Reduce the points at `p` and compute their relation lattice there.
pub fn prime_data(curve: &RationalCurve, points: &[RationalPoint], p: u64) -> Result<PrimeData> {
    let ep = reduce_curve(curve, p)?;
    let g = GroupData::new(&ep);
    let dlogs: Vec<Vec<u64>> = points
        .iter()
        .map(|pt| {
            let r = reduce_point(pt, p);
            g.dlog(&r).ok_or(Error::BadReduction(p))
        })
        .collect::<Result<_>>()?;
    let t = g.invariants.len();
    let images: Vec<IntRow> = dlogs.iter().map(|d| d.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let lat = if t == 0 {
        identity(points.len())
    } else {
        let rels: Vec<IntRow> = (0..t)
            .map(|i| (0..t).map(|j| if i == j { BigInt::from(g.invariants[i]) } else { BigInt::zero() }).collect())
            .collect();
        lattice::kernel_mod(&images, &rels)
    };
    let idx = lattice::index(&lat).expect("relation lattice has full rank");
    Ok(PrimeData { structure: g.structure(), dlogs, lattice_index: idx, lattice: lat })
}

fn identity(k: usize) -> Vec<IntRow> {
    (0..k).map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Intersection of the relation lattices at the given primes.
pub fn relation_lattice_at_primes(curve: &RationalCurve, points: &[RationalPoint], primes: &[u64]) -> Result<Vec<IntRow>> {
    let data = primes.par_iter().map(|&p| prime_data(curve, points, p)).collect::<Result<Vec<_>>>()?;
    Ok(data.iter().fold(identity(points.len()), |acc, d| lattice::hnf(&lattice::intersect(&acc, &d.lattice))))
}

/// Exact test of `Σ c_i P_i = O` on the curve over Q.
pub fn is_relation(curve: &RationalCurve, points: &[RationalPoint], c: &[BigInt]) -> bool {
    let coeffs: Vec<i64> = c.iter().map(|x| x.to_i64().expect("bounded coefficient")).collect();
    curve.combination(points, &coeffs).is_none()
}

/// Sieve integer relations among `points` with coefficients bounded by
/// `opts.coeff_bound`. A relation that holds over Q lies in every per-prime
/// lattice, so it is always found by the bounded search and then confirmed
/// exactly; `NoRelationUpToB` is therefore never returned when such a
/// relation exists.
pub fn sieve_points(curve: &RationalCurve, points: &[RationalPoint], labels: Vec<String>, opts: &SieveOptions) -> Result<SieveResult> {
    let k = points.len();
    if k == 0 {
        return Err(Error::InvalidParameters("no points to sieve".into()));
    }
    if !points.iter().all(|p| curve.contains(p)) {
        return Err(Error::InvalidParameters("point not on the curve".into()));
    }
    let bound = opts.coeff_bound;
    let mut acc = identity(k);
    let mut provenance: Vec<PrimeData> = Vec::new();
    let mut relations: Vec<IntRow> = Vec::new();
    let mut unverified = 0usize;
    let mut verdict = SieveVerdict::Inconclusive;
    let mut candidates = odd_primes().skip_while(|&p| p < opts.first_prime).take_while(|&p| p <= opts.max_prime);
    'outer: while provenance.len() < opts.prime_budget {
        let want = opts.batch.max(1).min(opts.prime_budget - provenance.len());
        let mut batch: Vec<u64> = Vec::with_capacity(want);
        let mut results: Vec<PrimeData> = Vec::new();
        // keep drawing primes until `want` good ones are collected
        while results.len() < want {
            batch.clear();
            for _ in 0..(want - results.len()) {
                match candidates.next() {
                    Some(p) => batch.push(p),
                    None => break,
                }
            }
            if batch.is_empty() {
                break;
            }
            let got: Vec<Result<PrimeData>> = batch.par_iter().map(|&p| prime_data(curve, points, p)).collect();
            results.extend(got.into_iter().filter_map(|r| r.ok()));
        }
        if results.is_empty() {
            break 'outer;
        }
        let before = lattice::index(&acc).expect("full rank");
        for d in &results {
            acc = lattice::hnf(&lattice::intersect(&acc, &d.lattice));
        }
        provenance.extend(results);
        let det = lattice::index(&acc).expect("full rank");
        // while the lattice is still shrinking, skip searches that are bound
        // to find something
        if det != before && lattice::minkowski_forces_short_vector(&det, k, bound) {
            continue;
        }
        let Some(short) = lattice::short_vectors_linf(&acc, bound, opts.node_limit) else {
            continue;
        };
        unverified = 0;
        let mut rel_hnf = lattice::hnf(&relations);
        for v in short {
            if !rel_hnf.is_empty() && lattice::contains_hnf(&rel_hnf, &v) {
                continue;
            }
            if is_relation(curve, points, &v) {
                relations.push(v);
                rel_hnf = lattice::hnf(&relations);
                relations = rel_hnf.clone();
            } else {
                unverified += 1;
            }
        }
        if unverified == 0 {
            verdict = if relations.is_empty() { SieveVerdict::NoRelationUpToB } else { SieveVerdict::RelationsFound };
            break;
        }
    }
    let index = lattice::index(&acc).expect("full rank");
    let dimension_estimate = verdict.is_conclusive().then(|| k - relations.len());
    Ok(SieveResult {
        verdict,
        coeff_bound: bound,
        labels,
        primes: provenance.iter().map(|d| d.structure.prime).collect(),
        lattice: RelationLattice { k, basis: acc, index, provenance },
        relations,
        unverified_candidates: unverified,
        dimension_estimate,
    })
}

/// The marked rational points of a genus-one specialization as points of
/// its Weierstrass model, based at the first marked point: entry `i` is the
/// image of the class `[P_i - P_0]`.
#[derive(Clone, Debug)]
pub struct MarkedDifferences {
    pub transform: WeierstrassTransform,
    pub labels: Vec<String>,
    pub points: Vec<RationalPoint>,
}

/// Marked differences with the model based at marked point `base_index`.
pub fn marked_differences_at(sc: &SpecializedCurve, base_index: usize) -> Result<MarkedDifferences> {
    if sc.genus() != 1 {
        return Err(Error::NotGenusOne(sc.defining_polynomial().degree().unwrap_or(0)));
    }
    let marked = sc.marked_rational_points();
    if marked.len() < 2 {
        return Err(Error::NoRationalPoint);
    }
    let base = marked.get(base_index).ok_or_else(|| Error::InvalidParameters(format!("no marked point {base_index}")))?;
    let f = sc.defining_polynomial();
    let transform = if f.degree() == Some(3) { WeierstrassTransform::new(&f, None)? } else { WeierstrassTransform::new(&f, Some(&base.xy()))? };
    let b = transform.map_point(&base.xy());
    let mut labels = Vec::new();
    let mut points = Vec::new();
    for (i, p) in marked.iter().enumerate() {
        if i == base_index {
            continue;
        }
        let img = transform.map_point(&p.xy());
        points.push(transform.curve.sub(&img, &b));
        labels.push(format!("{}-{}", p.label, base.label));
    }
    Ok(MarkedDifferences { transform, labels, points })
}

pub fn marked_differences(sc: &SpecializedCurve) -> Result<MarkedDifferences> {
    marked_differences_at(sc, 0)
}

/// Reduction of the marked differences modulo `p`.
#[derive(Clone, Debug, Serialize)]
pub struct ReducedPoints {
    pub labels: Vec<String>,
    #[serde(flatten)]
    pub data: PrimeData,
}

/// Reduce the Weierstrass model of a genus-one specialization and its marked
/// differences modulo `p`. Only rational marked points are used; for a
/// non-split algebra these are the points over the linear factors.
pub fn reduce_points_mod_p(sc: &SpecializedCurve, p: u64) -> Result<ReducedPoints> {
    let md = marked_differences(sc)?;
    let data = prime_data(&md.transform.curve, &md.points, p)?;
    Ok(ReducedPoints { labels: md.labels, data })
}

/// The sieve on the marked differences of a genus-one specialization.
pub fn independence_sieve(sc: &SpecializedCurve, opts: &SieveOptions) -> Result<SieveResult> {
    let md = marked_differences(sc)?;
    sieve_points(&md.transform.curve, &md.points, md.labels, opts)
}

/// Helper for tests and reports: the primes `>= from` that are of good
/// reduction for `curve`, up to `count` of them.
pub fn good_primes(curve: &RationalCurve, from: u64, count: usize) -> Vec<u64> {
    odd_primes().skip_while(|&p| p < from).filter(|&p| reduce_curve(curve, p).is_ok()).take(count).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rational, RationalField};

    /// `y^2 = x^3 - 2x + 5` has the point `(1, 2)` of infinite order.
    fn curve() -> (RationalCurve, RationalPoint) {
        let e = RationalCurve::new(RationalField, Rational::from(0), Rational::from(-2), Rational::from(5));
        (e, Some((Rational::from(1), Rational::from(2))))
    }

    fn opts(b: u64) -> SieveOptions {
        SieveOptions { coeff_bound: b, prime_budget: 60, ..Default::default() }
    }

    #[test]
    fn duplicate_point_is_detected() {
        let (e, p) = curve();
        let r = sieve_points(&e, &[p.clone(), p], vec!["P".into(), "P".into()], &opts(1)).unwrap();
        assert_eq!(r.verdict, SieveVerdict::RelationsFound);
        assert!(lattice::contains(&r.relations, &[BigInt::from(1), BigInt::from(-1)]));
        assert_eq!(r.dimension_estimate, Some(1));
    }

    #[test]
    fn inverse_point_is_detected() {
        let (e, p) = curve();
        let r = sieve_points(&e, &[p.clone(), e.neg(&p)], vec!["P".into(), "-P".into()], &opts(1)).unwrap();
        assert_eq!(r.verdict, SieveVerdict::RelationsFound);
        assert!(lattice::contains(&r.relations, &[BigInt::from(1), BigInt::from(1)]));
    }

    #[test]
    fn single_point_of_infinite_order() {
        let (e, p) = curve();
        let r = sieve_points(&e, &[p], vec!["P".into()], &opts(5)).unwrap();
        assert_eq!(r.verdict, SieveVerdict::NoRelationUpToB);
        assert_eq!(r.dimension_estimate, Some(1));
    }

    #[test]
    fn multiple_is_detected() {
        let (e, p) = curve();
        let q = e.mul(&p, 3);
        let r = sieve_points(&e, &[p, q], vec!["P".into(), "3P".into()], &opts(3)).unwrap();
        assert_eq!(r.verdict, SieveVerdict::RelationsFound);
        assert!(lattice::contains(&r.relations, &[BigInt::from(3), BigInt::from(-1)]));
    }

    #[test]
    fn torsion_point_relation() {
        // y^2 = x^3 + 1: (2, 3) has order 6
        let e = RationalCurve::new(RationalField, Rational::from(0), Rational::from(0), Rational::from(1));
        let t = Some((Rational::from(2), Rational::from(3)));
        let r = sieve_points(&e, &[t], vec!["T".into()], &opts(6)).unwrap();
        assert_eq!(r.verdict, SieveVerdict::RelationsFound);
        assert_eq!(r.relations, vec![vec![BigInt::from(6)]]);
        assert_eq!(r.dimension_estimate, Some(0));
    }
}
