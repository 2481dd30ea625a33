//! Exact integer-lattice routines: Hermite normal form, kernels of maps to
//! finite abelian groups, intersections, LLL and short-vector enumeration.
//!
//! Lattices are given by a list of row vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntRow = Vec<BigInt>;

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    // dst -= q * src
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// Row Hermite normal form: nonzero rows in echelon order, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(rows: &[IntRow]) -> Vec<IntRow> {
    let mut m: Vec<IntRow> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut piv = 0;
    for c in 0..ncols {
        if piv == m.len() {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below the pivot row
            let best = (piv..m.len()).filter(|&r| !m[r][c].is_zero()).min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(best) = best else { break };
            m.swap(piv, best);
            let mut done = true;
            for r in piv + 1..m.len() {
                if m[r][c].is_zero() {
                    continue;
                }
                let q = m[r][c].div_floor(&m[piv][c]);
                let src = m[piv].clone();
                axpy(&mut m[r], &q, &src);
                if !m[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[piv][c].is_zero() {
            continue;
        }
        if m[piv][c].is_negative() {
            for x in m[piv].iter_mut() {
                *x = -&*x;
            }
        }
        let src = m[piv].clone();
        for r in 0..piv {
            let q = m[r][c].div_floor(&src[c]);
            if !q.is_zero() {
                axpy(&mut m[r], &q, &src);
            }
        }
        piv += 1;
    }
    m.truncate(piv);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

fn pivot_col(r: &IntRow) -> Option<usize> {
    r.iter().position(|x| !x.is_zero())
}

/// `{c in Z^k : Σ c_i images_i ∈ span(relations)}` for a map `Z^k -> Z^t`
/// followed by the quotient by the row span of `relations`.
pub fn kernel_mod(images: &[IntRow], relations: &[IntRow]) -> Vec<IntRow> {
    let k = images.len();
    let t = images.first().or(relations.first()).map_or(0, |r| r.len());
    let mut rows = Vec::with_capacity(k + relations.len());
    for (i, img) in images.iter().enumerate() {
        let mut r = img.clone();
        r.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
        rows.push(r);
    }
    for rel in relations {
        let mut r = rel.clone();
        r.extend(std::iter::repeat_n(BigInt::zero(), k));
        rows.push(r);
    }
    hnf(&rows).into_iter().filter(|r| r[..t].iter().all(|x| x.is_zero())).map(|r| r[t..].to_vec()).collect()
}

/// Intersection of two lattices in `Z^k`.
pub fn intersect(a: &[IntRow], b: &[IntRow]) -> Vec<IntRow> {
    let k = a.first().or(b.first()).map_or(0, |r| r.len());
    let mut rows = Vec::with_capacity(a.len() + b.len());
    for r in a {
        let mut x = r.clone();
        x.extend(r.iter().cloned());
        rows.push(x);
    }
    for r in b {
        let mut x = r.clone();
        x.extend(std::iter::repeat_n(BigInt::zero(), k));
        rows.push(x);
    }
    hnf(&rows).into_iter().filter(|r| r[..k].iter().all(|x| x.is_zero())).map(|r| r[k..].to_vec()).collect()
}

/// Index in `Z^k` of a full-rank lattice (product of HNF pivots); `None` when
/// the lattice is not of full rank.
pub fn index(basis: &[IntRow]) -> Option<BigInt> {
    let h = hnf(basis);
    let k = basis.first()?.len();
    if h.len() != k {
        return None;
    }
    Some(h.iter().map(|r| r[pivot_col(r).unwrap()].clone()).product())
}

/// Membership of `v` in the lattice spanned by an HNF basis.
pub fn contains_hnf(h: &[IntRow], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for r in h {
        let c = pivot_col(r).unwrap();
        if pivot_col(&v).is_some_and(|vc| vc < c) {
            return false;
        }
        let (q, rem) = v[c].div_rem(&r[c]);
        if !rem.is_zero() {
            return false;
        }
        axpy(&mut v, &q, r);
    }
    v.iter().all(|x| x.is_zero())
}

pub fn contains(basis: &[IntRow], v: &[BigInt]) -> bool {
    contains_hnf(&hnf(basis), v)
}

/// Same lattice (compares Hermite normal forms).
pub fn same_lattice(a: &[IntRow], b: &[IntRow]) -> bool {
    hnf(a) == hnf(b)
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn to_q(r: &IntRow) -> Vec<BigRational> {
    r.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn round_q(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Gram-Schmidt data: `mu[i][j]` for `j < i` and squared norms of `b*_i`.
fn gram_schmidt(b: &[IntRow]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let bq: Vec<Vec<BigRational>> = b.iter().map(to_q).collect();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = bq[i].clone();
        for j in 0..i {
            let m = dot_q(&bq[i], &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        norms.push(dot_q(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

/// LLL reduction with `δ = 3/4` in exact rational arithmetic. The input rows
/// must be linearly independent.
pub fn lll(basis: &[IntRow]) -> Vec<IntRow> {
    let mut b = basis.to_vec();
    let n = b.len();
    if n < 2 {
        return b;
    }
    let (mut mu, mut bn) = gram_schmidt(&b);
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let reduce = |b: &mut Vec<IntRow>, mu: &mut Vec<Vec<BigRational>>, k: usize, l: usize| {
        let q = round_q(&mu[k][l]);
        if q.is_zero() {
            return;
        }
        let src = b[l].clone();
        axpy(&mut b[k], &q, &src);
        let qq = BigRational::from_integer(q);
        for j in 0..l {
            let t = &qq * &mu[l][j];
            mu[k][j] -= t;
        }
        mu[k][l] -= qq;
    };
    let mut k = 1;
    while k < n {
        reduce(&mut b, &mut mu, k, k - 1);
        let lhs = bn[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1];
        if lhs < rhs {
            let m = mu[k][k - 1].clone();
            let big = &bn[k] + &m * &m * &bn[k - 1];
            mu[k][k - 1] = &m * &bn[k - 1] / &big;
            bn[k] = &bn[k - 1] * &bn[k] / &big;
            bn[k - 1] = big;
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = std::mem::replace(&mut mu[k - 1][j], t);
            }
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(&mut b, &mut mu, k, l);
            }
            k += 1;
        }
    }
    b
}

/// All nonzero vectors `v` of the lattice with `max |v_i| <= bound`, one of
/// each pair `±v` (first nonzero coordinate positive). Returns `None` when
/// the enumeration exceeds `node_limit` search nodes.
pub fn short_vectors_linf(basis: &[IntRow], bound: u64, node_limit: usize) -> Option<Vec<IntRow>> {
    let n = basis.len();
    if n == 0 {
        return Some(vec![]);
    }
    let dim = basis[0].len();
    let b = lll(basis);
    let (mu, norms) = gram_schmidt(&b);
    let radius = BigRational::from_integer(BigInt::from(bound) * BigInt::from(bound) * BigInt::from(dim as u64));
    let mut out = Vec::new();
    let mut nodes = 0usize;
    let mut u = vec![BigInt::zero(); n];
    let bound_big = BigInt::from(bound);

    #[allow(clippy::too_many_arguments)]
    fn descend(
        i: usize,
        rem: BigRational,
        u: &mut Vec<BigInt>,
        b: &[IntRow],
        mu: &[Vec<BigRational>],
        norms: &[BigRational],
        bound: &BigInt,
        out: &mut Vec<IntRow>,
        nodes: &mut usize,
        limit: usize,
    ) -> bool {
        let n = b.len();
        // center -Σ_{j>i} mu[j][i] u_j
        let mut c = BigRational::zero();
        for j in i + 1..n {
            c -= &mu[j][i] * BigRational::from_integer(u[j].clone());
        }
        let ratio = &rem / &norms[i];
        let s = ratio.to_f64().unwrap_or(f64::MAX).max(0.0).sqrt();
        let span = BigInt::from(s.ceil() as u64 + 1);
        let cf = c.floor().to_integer();
        let lo = &cf - &span;
        let hi = &cf + &span + BigInt::one();
        let mut x = lo;
        while x <= hi {
            *nodes += 1;
            if *nodes > limit {
                return false;
            }
            let y = BigRational::from_integer(x.clone()) - &c;
            let used = &y * &y * &norms[i];
            if used <= rem {
                u[i] = x.clone();
                if i == 0 {
                    let mut v = vec![BigInt::zero(); b[0].len()];
                    for (uj, bj) in u.iter().zip(b) {
                        if !uj.is_zero() {
                            for (vv, bb) in v.iter_mut().zip(bj) {
                                *vv += uj * bb;
                            }
                        }
                    }
                    let first = v.iter().find(|z| !z.is_zero());
                    if first.is_some_and(|f| f.is_positive()) && v.iter().all(|z| z.abs() <= *bound) {
                        out.push(v);
                    }
                } else if !descend(i - 1, &rem - &used, u, b, mu, norms, bound, out, nodes, limit) {
                    return false;
                }
            }
            x += 1;
        }
        u[i] = BigInt::zero();
        true
    }

    if !descend(n - 1, radius, &mut u, &b, &mu, &norms, &bound_big, &mut out, &mut nodes, node_limit) {
        return None;
    }
    out.sort();
    Some(out)
}

/// `det(L) < (bound + 1)^k` for a full-rank `L ⊂ Z^k`: by Minkowski's theorem
/// the open cube of side `2 (bound + 1)` then contains a nonzero lattice
/// vector, so a vector with max-norm `<= bound` certainly exists.
pub fn minkowski_forces_short_vector(det: &BigInt, k: usize, bound: u64) -> bool {
    det < &num_traits::pow(BigInt::from(bound + 1), k)
}

pub fn to_int_rows(rows: &[Vec<i64>]) -> Vec<IntRow> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}
