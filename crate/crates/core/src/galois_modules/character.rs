//! Rational class functions on permutation groups, permutation characters
//! and the modules `V(L/K)`, `V(Ω/K)`, `V(Ω̃/Ω)`.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::Serialize;

use super::group::FiniteGroup;
use crate::arith::{Rational, Ring};
use crate::error::{Error, Result};

/// Class function with rational values, indexed by the conjugacy classes of
/// its group.
#[derive(Clone, Debug)]
pub struct PermCharacter {
    group: Arc<FiniteGroup>,
    values: Vec<Rational>,
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.order() == b.order() && a.is_subgroup(b))
}

impl PartialEq for PermCharacter {
    fn eq(&self, o: &Self) -> bool {
        same_group(&self.group, &o.group) && self.values_on(&o.group) == o.values
    }
}

impl PermCharacter {
    pub fn from_values(group: Arc<FiniteGroup>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::ArityMismatch { expected: group.num_classes(), got: values.len() });
        }
        Ok(PermCharacter { group, values })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        PermCharacter { group: group.clone(), values: vec![Rational::zero(); group.num_classes()] }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        PermCharacter { group: group.clone(), values: vec![Rational::one(); group.num_classes()] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at an element of the group.
    pub fn value_at(&self, g: &super::group::Perm) -> Option<&Rational> {
        self.group.class_of(g).map(|c| &self.values[c])
    }

    /// `χ(1)`.
    pub fn dimension(&self) -> Rational {
        self.values[self.group.class_of_index(0)].clone()
    }

    /// Values re-indexed by the classes of an equal group object.
    fn values_on(&self, other: &Arc<FiniteGroup>) -> Vec<Rational> {
        if Arc::ptr_eq(&self.group, other) {
            return self.values.clone();
        }
        (0..other.num_classes()).map(|c| self.value_at(other.class_rep(c)).expect("same group").clone()).collect()
    }

    fn check_same(&self, o: &Self) -> Result<Vec<Rational>> {
        if !same_group(&self.group, &o.group) {
            return Err(Error::PatternMismatch("characters of different groups".into()));
        }
        Ok(o.values_on(&self.group))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let ov = self.check_same(o)?;
        Ok(PermCharacter { group: self.group.clone(), values: self.values.iter().zip(&ov).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let ov = self.check_same(o)?;
        Ok(PermCharacter { group: self.group.clone(), values: self.values.iter().zip(&ov).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = Rational::from(k);
        PermCharacter { group: self.group.clone(), values: self.values.iter().map(|a| a.mul(&k)).collect() }
    }

    /// `⟨χ, ψ⟩ = |G|^{-1} Σ_g χ(g) ψ(g^{-1})`.
    pub fn inner(&self, o: &Self) -> Result<Rational> {
        let ov = self.check_same(o)?;
        let g = &self.group;
        let mut s = Rational::zero();
        for c in 0..g.num_classes() {
            let term = self.values[c].mul(&ov[g.inverse_class(c)]).mul(&Rational::from(g.class_size(c) as i64));
            s = s.add(&term);
        }
        Ok(s.mul(&Rational::new(1, g.order() as i64)))
    }

    /// Restriction to a subgroup.
    pub fn restrict(&self, h: &Arc<FiniteGroup>) -> Result<Self> {
        if !self.group.is_subgroup(h) {
            return Err(Error::NotASubgroup("restriction to a non-subgroup".into()));
        }
        let values = (0..h.num_classes()).map(|c| self.value_at(h.class_rep(c)).expect("subgroup").clone()).collect();
        Ok(PermCharacter { group: h.clone(), values })
    }

    /// `Ind_H^G ψ(g) = |C_G(g)| Σ_{H-classes d ⊂ g^G} ψ(d) / |C_H(d)|`.
    pub fn induce(&self, g: &Arc<FiniteGroup>) -> Result<Self> {
        let h = &self.group;
        if !g.is_subgroup(h) {
            return Err(Error::NotASubgroup("induction from a non-subgroup".into()));
        }
        let mut acc = vec![Rational::zero(); g.num_classes()];
        for d in 0..h.num_classes() {
            let c = g.class_of(h.class_rep(d)).expect("subgroup");
            acc[c] = acc[c].add(&self.values[d].mul(&Rational::new(1, h.centralizer_order(d) as i64)));
        }
        let values = acc.iter().enumerate().map(|(c, v)| v.mul(&Rational::from(g.centralizer_order(c) as i64))).collect();
        Ok(PermCharacter { group: g.clone(), values })
    }

    /// `dim χ^H = ⟨Res_H χ, 1_H⟩`.
    pub fn fixed_dimension(&self, h: &Arc<FiniteGroup>) -> Result<Rational> {
        let r = self.restrict(h)?;
        r.inner(&PermCharacter::trivial(h))
    }

    /// All values are integers.
    pub fn is_integral(&self) -> bool {
        self.values.iter().all(Rational::is_integer)
    }
}

impl Serialize for PermCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Class {
            representative: String,
            size: usize,
            value: Rational,
        }
        let g = &self.group;
        let classes: Vec<Class> = (0..g.num_classes())
            .map(|c| Class { representative: g.class_rep(c).to_cycles(), size: g.class_size(c), value: self.values[c].clone() })
            .collect();
        let mut st = s.serialize_struct("PermCharacter", 3)?;
        st.serialize_field("group_order", &g.order())?;
        st.serialize_field("dimension", &self.dimension())?;
        st.serialize_field("classes", &classes)?;
        st.end()
    }
}

fn require_subgroup(g: &FiniteGroup, h: &FiniteGroup) -> Result<()> {
    if g.is_subgroup(h) {
        Ok(())
    } else {
        Err(Error::NotASubgroup(format!("subgroup of order {} is not contained in the group of order {}", h.order(), g.order())))
    }
}

/// Character of `Q[G/H]`: `χ(g) = |C_G(g)| |g^G ∩ H| / |H|`.
pub fn perm_character(g: &Arc<FiniteGroup>, h: &FiniteGroup) -> Result<PermCharacter> {
    require_subgroup(g, h)?;
    let mut meet = vec![0usize; g.num_classes()];
    for x in h.elements() {
        meet[g.class_of(x).expect("subgroup")] += 1;
    }
    let values = (0..g.num_classes()).map(|c| Rational::new((g.centralizer_order(c) * meet[c]) as i64, h.order() as i64)).collect();
    Ok(PermCharacter { group: g.clone(), values })
}

/// `V(L/K)`: `Q[G/H]` minus the trivial character.
pub fn v_module(g: &Arc<FiniteGroup>, h: &FiniteGroup) -> Result<PermCharacter> {
    perm_character(g, h)?.sub(&PermCharacter::trivial(g))
}

/// `V(Ω/K) = 1^{r-1} ⊕ V(L_1/K) ⊕ ... ⊕ V(L_r/K)` for `Ω = L_1 × ... × L_r`
/// with `L_i` fixed by `H_i`.
pub fn v_etale(g: &Arc<FiniteGroup>, hs: &[FiniteGroup]) -> Result<PermCharacter> {
    if hs.is_empty() {
        return Err(Error::EmptyAlgebra);
    }
    let mut acc = PermCharacter::trivial(g).scale(hs.len() as i64 - 1);
    for h in hs {
        acc = acc.add(&v_module(g, h)?)?;
    }
    Ok(acc)
}

/// Result of comparing `V(Ω̃/K) − V(Ω/K)` with `⊕_i Ind_{H_i}^G V(C_i/L_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadIdentityReport {
    pub holds: bool,
    /// `V(Ω̃/Ω)` as given by the induced sum.
    pub character: PermCharacter,
    /// `n = dim_K Ω`.
    pub n: usize,
    /// `e_i = dim_{L_i} C_i`.
    pub degrees: Vec<usize>,
    /// `Σ_i [G:H_i] (e_i − 1)`, which is `en − n` for uniform `e`.
    pub expected_dimension: usize,
    pub dimension_matches: bool,
}

/// `Ω̃ = C_1 × ... × C_r` over `Ω = L_1 × ... × L_r`, where `C_i` is an
/// etale `L_i`-algebra whose factors are fixed by the subgroups `K_ij ≤ H_i`.
pub fn check_quad_identity(g: &Arc<FiniteGroup>, omega: &[FiniteGroup], omega_tilde: &[Vec<FiniteGroup>]) -> Result<QuadIdentityReport> {
    if omega.len() != omega_tilde.len() {
        return Err(Error::PatternMismatch(format!("Ω has {} factors but Ω̃ gives {} algebras", omega.len(), omega_tilde.len())));
    }
    let mut induced = PermCharacter::zero(g);
    let mut degrees = Vec::new();
    let mut n = 0;
    let mut expected = 0;
    for (i, (h, ks)) in omega.iter().zip(omega_tilde).enumerate() {
        require_subgroup(g, h)?;
        if ks.is_empty() {
            return Err(Error::PatternMismatch(format!("C_{} has no factors", i + 1)));
        }
        for k in ks {
            if !h.is_subgroup(k) {
                return Err(Error::PatternMismatch(format!("a factor of C_{} is not an extension of L_{}", i + 1, i + 1)));
            }
        }
        let h = Arc::new(h.clone());
        let local = v_etale(&h, ks)?;
        induced = induced.add(&local.induce(g)?)?;
        let e: usize = ks.iter().map(|k| h.order() / k.order()).sum();
        let ni = g.order() / h.order();
        degrees.push(e);
        n += ni;
        expected += ni * (e - 1);
    }
    let all_k: Vec<FiniteGroup> = omega_tilde.iter().flatten().cloned().collect();
    let lhs = v_etale(g, &all_k)?.sub(&v_etale(g, omega)?)?;
    let holds = lhs == induced;
    let dimension_matches = induced.dimension() == Rational::from(expected as i64);
    Ok(QuadIdentityReport { holds, character: induced, n, degrees, expected_dimension: expected, dimension_matches })
}

/// Each `C_i = L_i × L_i`.
pub fn split_doubling(omega: &[FiniteGroup]) -> Vec<Vec<FiniteGroup>> {
    omega.iter().map(|h| vec![h.clone(), h.clone()]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthStep {
    /// Positions in the chain.
    pub from: usize,
    pub to: usize,
    pub lower_bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankGrowthReport {
    /// `dim χ^{H_j}` along the chain.
    pub fixed_dimensions: Vec<Rational>,
    /// Lower bounds `dim χ^{H_{j+1}} − dim χ^{H_j}` for consecutive fields.
    pub steps: Vec<GrowthStep>,
    /// Lower bound on the rank over the base field of the chain.
    pub base_rank: Rational,
}

/// Rank-growth bounds for a realized module along `G ⊇ H_0 ⊇ H_1 ⊇ ...`
/// (fields increasing).
pub fn rank_growth_report(realized: &PermCharacter, chain: &[FiniteGroup]) -> Result<RankGrowthReport> {
    let g = realized.group();
    let mut prev: &FiniteGroup = g;
    let mut fixed = Vec::new();
    for (j, h) in chain.iter().enumerate() {
        if !prev.is_subgroup(h) {
            return Err(Error::PatternMismatch(format!("chain entry {j} is not contained in its predecessor")));
        }
        fixed.push(realized.fixed_dimension(&Arc::new(h.clone()))?);
        prev = h;
    }
    let steps = fixed.windows(2).enumerate().map(|(j, w)| GrowthStep { from: j, to: j + 1, lower_bound: w[1].sub(&w[0]) }).collect();
    let base_rank = fixed.first().cloned().unwrap_or_else(|| realized.fixed_dimension(g).expect("whole group"));
    Ok(RankGrowthReport { fixed_dimensions: fixed, steps, base_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_modules::group::Perm;

    fn ints(c: &PermCharacter) -> Vec<i64> {
        c.values().iter().map(|v| v.to_f64_lossy() as i64).collect()
    }

    /// Cosets `xH` fixed by `g`: `x^{-1} g x ∈ H`, counted over all `x` and
    /// divided by `|H|`.
    fn fixed_cosets(g: &FiniteGroup, h: &FiniteGroup, el: &Perm) -> usize {
        g.elements().iter().filter(|x| h.contains(&el.conjugate_by(x))).count() / h.order()
    }

    #[test]
    fn s3_on_three_points() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = g.stabilizer(&[2]).unwrap();
        let chi = perm_character(&g, &h).unwrap();
        for c in 0..g.num_classes() {
            let rep = g.class_rep(c);
            assert_eq!(chi.values()[c], Rational::from(fixed_cosets(&g, &h, rep) as i64));
            let expect = match rep.cycle_type()[0] {
                1 => (3, 2),
                2 => (1, 0),
                _ => (0, -1),
            };
            assert_eq!(ints(&chi)[c], expect.0);
            assert_eq!(ints(&v_module(&g, &h).unwrap())[c], expect.1);
        }
    }

    #[test]
    fn extreme_subgroups() {
        let g = Arc::new(FiniteGroup::alternating(4).unwrap());
        assert_eq!(perm_character(&g, &g).unwrap(), PermCharacter::trivial(&g));
        assert_eq!(v_module(&g, &g).unwrap(), PermCharacter::zero(&g));
        let reg = perm_character(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(reg.dimension(), Rational::from(12));
        assert_eq!(reg.values().iter().filter(|v| !v.is_zero()).count(), 1);
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert!(matches!(perm_character(&g, &s4), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn v_etale_examples() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = g.stabilizer(&[2]).unwrap();
        assert_eq!(v_etale(&g, &[h.clone(), (*g).clone()]).unwrap().dimension(), Rational::from(3));
        assert_eq!(v_etale(&g, std::slice::from_ref(&h)).unwrap(), v_module(&g, &h).unwrap());
        let v = v_module(&g, &h).unwrap();
        let r = 4;
        let lr = v_etale(&g, &vec![h; r]).unwrap();
        assert_eq!(lr, PermCharacter::trivial(&g).scale(r as i64 - 1).add(&v.scale(r as i64)).unwrap());
    }

    #[test]
    fn split_doubling_s4() {
        let g = Arc::new(FiniteGroup::symmetric(4).unwrap());
        let h = g.stabilizer(&[3]).unwrap();
        let omega = vec![h.clone()];
        let rep = check_quad_identity(&g, &omega, &split_doubling(&omega)).unwrap();
        assert!(rep.holds && rep.dimension_matches);
        assert_eq!(rep.character.dimension(), Rational::from(4));
        // C = L × L gives V(C/L) = 1_H, so the sum is Ind 1 = Q[G/H]
        assert_eq!(rep.character, perm_character(&g, &h).unwrap());
        // quadratic field extension of L: K ≤ H of index 2
        let k = h.subgroup(vec![Perm::parse("(1,2,3)", 4).unwrap()]).unwrap();
        let rep = check_quad_identity(&g, &omega, &[vec![k]]).unwrap();
        assert!(rep.holds);
        assert_eq!((rep.n, rep.expected_dimension), (4, 4));
        // a factor outside H is rejected
        let bad = g.subgroup(vec![Perm::parse("(1,4)", 4).unwrap()]).unwrap();
        assert!(matches!(check_quad_identity(&g, &omega, &[vec![bad]]), Err(Error::PatternMismatch(_))));
    }

    #[test]
    fn trivial_group_identity() {
        let g = Arc::new(FiniteGroup::new(1, vec![]).unwrap());
        let omega = vec![(*g).clone(); 3];
        let rep = check_quad_identity(&g, &omega, &split_doubling(&omega)).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.character.dimension(), Rational::from(3));
    }

    #[test]
    fn rank_growth_examples() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let triv = PermCharacter::trivial(&g);
        let v = v_module(&g, &g.trivial_subgroup()).unwrap();
        let realized = v.scale(3).add(&triv.scale(3)).unwrap();
        let rep = rank_growth_report(&realized, &[(*g).clone(), g.trivial_subgroup()]).unwrap();
        assert_eq!(rep.base_rank, Rational::from(3));
        assert!(rep.steps[0].lower_bound >= Rational::from(3));
        let rep = rank_growth_report(&triv.scale(5), &[(*g).clone(), g.trivial_subgroup()]).unwrap();
        assert!(rep.steps.iter().all(|s| s.lower_bound.is_zero()));
        // S3 with a non-Galois cubic: growth exactly 3
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = s3.stabilizer(&[2]).unwrap();
        let realized = v_module(&s3, &h).unwrap().scale(3).add(&PermCharacter::trivial(&s3).scale(3)).unwrap();
        let rep = rank_growth_report(&realized, &[(*s3).clone(), h]).unwrap();
        assert_eq!(rep.steps[0].lower_bound, Rational::from(3));
    }
}
