//! Permutation characters over Q and the module identities they satisfy.
//!
//! Modules are handled through their characters only: in characteristic
//! zero a character determines the Q-module up to isomorphism.

pub mod character;
pub mod chartable;
pub mod group;
pub mod pattern;

use serde::Serialize;

pub use character::{check_quad_identity, perm_character, rank_growth_report, split_doubling, v_etale, v_module, PermCharacter, QuadIdentityReport, RankGrowthReport};
pub use chartable::{CharacterTableModP, CHAR_TABLE_CAP};
pub use group::{FiniteGroup, Perm};
pub use pattern::{run_check, CharSpec, ModuleCheck, ModulePattern, SubgroupSpec};

use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubmoduleMode {
    /// Multiplicities of all irreducible constituents compared.
    Exact,
    /// Only necessary conditions from permutation characters were checked;
    /// a positive answer means "not refuted".
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmoduleReport {
    pub contained: bool,
    pub mode: SubmoduleMode,
    /// Multiplicities in `V` and `W` of each irreducible (exact mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<(Vec<i64>, Vec<i64>)>,
    /// Number of permutation characters tested (partial mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tests: Option<usize>,
}

/// Whether `V` is isomorphic to a submodule of `W`. For `|G| ≤ 2000` this
/// compares irreducible multiplicities; for larger groups, if `allow_partial`,
/// it checks `⟨W − V, Q[G/⟨g⟩]⟩ ≥ 0` for a representative `g` of each class.
pub fn submodule_test(v: &PermCharacter, w: &PermCharacter, allow_partial: bool) -> Result<SubmoduleReport> {
    let g = v.group().clone();
    let diff = w.sub(v)?;
    if g.order() <= CHAR_TABLE_CAP {
        let bound = |c: &PermCharacter| c.values().iter().map(|x| x.abs()).max().map_or(0, |m| m.to_f64_lossy().ceil() as u64);
        let min_p = 2 * bound(v).max(bound(w)) + 3;
        let t = CharacterTableModP::with_min_prime(&g, min_p)?;
        let mv = t.decompose(v)?;
        let mw = t.decompose(&PermCharacter::zero(&g).add(w)?)?;
        let contained = mv.iter().zip(&mw).all(|(a, b)| 0 <= *a && a <= b);
        return Ok(SubmoduleReport { contained, mode: SubmoduleMode::Exact, multiplicities: Some((mv, mw)), tests: None });
    }
    if !allow_partial {
        return Err(Error::GroupTooLarge { order: g.order(), cap: CHAR_TABLE_CAP });
    }
    let mut contained = diff.dimension() >= Rational::from(0);
    let mut tests = 0;
    for c in 0..g.num_classes() {
        let h = g.subgroup(vec![g.class_rep(c).clone()])?;
        contained &= diff.inner(&perm_character(&g, &h)?)? >= Rational::from(0);
        tests += 1;
    }
    Ok(SubmoduleReport { contained, mode: SubmoduleMode::Partial, multiplicities: None, tests: Some(tests) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use crate::arith::Ring;


    #[test]
    fn submodule_examples() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = g.stabilizer(&[2]).unwrap();
        let v = v_module(&g, &h).unwrap();
        let vo = v_etale(&g, &[h.clone(), (*g).clone()]).unwrap();
        assert!(submodule_test(&v, &vo, false).unwrap().contained);
        assert!(submodule_test(&v, &v, false).unwrap().contained);
        let one = PermCharacter::trivial(&g);
        // orbit counting: ⟨V, 1⟩ = (#orbits of G on G/H) − 1 = 0
        assert!(v.inner(&one).unwrap().is_zero());
        let r = submodule_test(&one, &v, false).unwrap();
        assert!(!r.contained);
        assert_eq!(r.mode, SubmoduleMode::Exact);
    }

    #[test]
    fn partial_mode() {
        let g = Arc::new(FiniteGroup::symmetric(7).unwrap());
        let h = g.stabilizer(&[6]).unwrap();
        let v = v_module(&g, &h).unwrap();
        let w = v_etale(&g, &[h.clone(), h]).unwrap();
        assert!(matches!(submodule_test(&v, &w, false), Err(Error::GroupTooLarge { .. })));
        let r = submodule_test(&v, &w, true).unwrap();
        assert!(r.contained);
        assert_eq!(r.mode, SubmoduleMode::Partial);
        assert!(!submodule_test(&PermCharacter::trivial(&g), &v, true).unwrap().contained);
    }
}
