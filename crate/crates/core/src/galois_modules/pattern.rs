//! JSON patterns describing subgroups and characters, and the dispatcher
//! used by the command line and the Python bindings.
//!
//! A subgroup is either a list of generators in cycle notation or one of the
//! strings `"G"`, `"1"`, `"stab:i,j,..."` (pointwise stabilizer). A pattern is
//! an object with the fields its check needs:
//!
//! ```json
//! {"subgroup": ["(1,2)"],
//!  "omega": ["stab:3"], "omega_tilde": "split",
//!  "v": {"v_module": "stab:3"}, "w": {"v_etale": ["stab:3", "G"]},
//!  "realized": {"sum": [{"scale": [3, {"v_module": "1"}]}, {"trivial": 3}]},
//!  "chain": ["G", "1"]}
//! ```

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::character::{check_quad_identity, perm_character, rank_growth_report, split_doubling, v_etale, v_module, PermCharacter};
use super::chartable::CharacterTableModP;
use super::group::{FiniteGroup, Perm};
use super::submodule_test;
use crate::arith::{Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Keyword(String),
    Generators(Vec<String>),
}

impl SubgroupSpec {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<FiniteGroup> {
        match self {
            SubgroupSpec::Generators(gens) => {
                let gens = gens.iter().map(|s| Perm::parse(s, g.degree())).collect::<Result<Vec<_>>>()?;
                g.subgroup(gens)
            }
            SubgroupSpec::Keyword(k) => {
                let k = k.trim();
                if k == "G" {
                    Ok(g.clone())
                } else if k == "1" || k == "trivial" {
                    Ok(g.trivial_subgroup())
                } else if let Some(pts) = k.strip_prefix("stab:") {
                    let pts = pts
                        .split(',')
                        .map(|t| t.trim().parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1).ok_or_else(|| Error::Parse(format!("bad point {t:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    g.stabilizer(&pts)
                } else if k.contains('(') {
                    let gens = k.split(';').map(|s| Perm::parse(s, g.degree())).collect::<Result<Vec<_>>>()?;
                    g.subgroup(gens)
                } else {
                    Err(Error::Parse(format!("unknown subgroup {k:?}")))
                }
            }
        }
    }
}

/// A character built from permutation characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharSpec {
    /// `Q[G/H]`.
    Perm(SubgroupSpec),
    /// `V(L/K)` for `L` fixed by `H`.
    VModule(SubgroupSpec),
    /// `V(Ω/K)`.
    VEtale(Vec<SubgroupSpec>),
    /// `V(Ω̃/Ω)`.
    VQuad { omega: Vec<SubgroupSpec>, omega_tilde: OmegaTilde },
    /// `m · 1_G`.
    Trivial(i64),
    Sum(Vec<CharSpec>),
    Scale(i64, Box<CharSpec>),
}

impl CharSpec {
    pub fn resolve(&self, g: &Arc<FiniteGroup>) -> Result<PermCharacter> {
        match self {
            CharSpec::Perm(h) => perm_character(g, &h.resolve(g)?),
            CharSpec::VModule(h) => v_module(g, &h.resolve(g)?),
            CharSpec::VEtale(hs) => v_etale(g, &resolve_all(hs, g)?),
            CharSpec::VQuad { omega, omega_tilde } => {
                let om = resolve_all(omega, g)?;
                let ot = omega_tilde.resolve(&om, g)?;
                Ok(check_quad_identity(g, &om, &ot)?.character)
            }
            CharSpec::Trivial(m) => Ok(PermCharacter::trivial(g).scale(*m)),
            CharSpec::Sum(parts) => parts.iter().try_fold(PermCharacter::zero(g), |acc, c| acc.add(&c.resolve(g)?)),
            CharSpec::Scale(k, c) => Ok(c.resolve(g)?.scale(*k)),
        }
    }
}

/// `"split"` for `C_i = L_i × L_i` everywhere, or one entry per factor of
/// `Ω`, each `"split"` or a list of subgroups of `H_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OmegaTilde {
    All(String),
    PerFactor(Vec<OmegaTildeEntry>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OmegaTildeEntry {
    Keyword(String),
    Factors(Vec<SubgroupSpec>),
}

fn check_split(k: &str) -> Result<()> {
    if k.trim() == "split" {
        Ok(())
    } else {
        Err(Error::Parse(format!("expected \"split\" or a list of subgroups, got {k:?}")))
    }
}

impl OmegaTilde {
    pub fn resolve(&self, omega: &[FiniteGroup], g: &FiniteGroup) -> Result<Vec<Vec<FiniteGroup>>> {
        match self {
            OmegaTilde::All(k) => {
                check_split(k)?;
                Ok(split_doubling(omega))
            }
            OmegaTilde::PerFactor(es) => {
                if es.len() != omega.len() {
                    return Err(Error::PatternMismatch(format!("Ω has {} factors but Ω̃ gives {} algebras", omega.len(), es.len())));
                }
                es.iter()
                    .zip(omega)
                    .map(|(e, h)| match e {
                        OmegaTildeEntry::Keyword(k) => check_split(k).map(|_| vec![h.clone(), h.clone()]),
                        OmegaTildeEntry::Factors(ks) => resolve_all(ks, g),
                    })
                    .collect()
            }
        }
    }
}

fn resolve_all(hs: &[SubgroupSpec], g: &FiniteGroup) -> Result<Vec<FiniteGroup>> {
    hs.iter().map(|h| h.resolve(g)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulePattern {
    #[serde(default)]
    pub subgroup: Option<SubgroupSpec>,
    #[serde(default)]
    pub omega: Option<Vec<SubgroupSpec>>,
    #[serde(default)]
    pub omega_tilde: Option<OmegaTilde>,
    #[serde(default)]
    pub v: Option<CharSpec>,
    #[serde(default)]
    pub w: Option<CharSpec>,
    #[serde(default)]
    pub realized: Option<CharSpec>,
    #[serde(default)]
    pub chain: Option<Vec<SubgroupSpec>>,
    /// Allow necessary-condition checks when the group is too large for the
    /// character table.
    #[serde(default)]
    pub allow_partial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleCheck {
    PermCharacter,
    VModule,
    VEtale,
    QuadIdentity,
    Submodule,
    RankGrowth,
    CharacterTable,
}

impl ModuleCheck {
    pub const ALL: [ModuleCheck; 7] = [
        ModuleCheck::PermCharacter,
        ModuleCheck::VModule,
        ModuleCheck::VEtale,
        ModuleCheck::QuadIdentity,
        ModuleCheck::Submodule,
        ModuleCheck::RankGrowth,
        ModuleCheck::CharacterTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModuleCheck::PermCharacter => "perm-character",
            ModuleCheck::VModule => "v-module",
            ModuleCheck::VEtale => "v-etale",
            ModuleCheck::QuadIdentity => "quad-identity",
            ModuleCheck::Submodule => "submodule",
            ModuleCheck::RankGrowth => "rank-growth",
            ModuleCheck::CharacterTable => "character-table",
        }
    }
}

impl FromStr for ModuleCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModuleCheck::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}; expected one of {}", ModuleCheck::ALL.map(ModuleCheck::name).join(", "))))
    }
}

/// Outcome of one check: `holds` is the verdict (or the sanity invariant for
/// purely computational checks), `partial` marks necessary-condition-only
/// answers.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: ModuleCheck,
    pub group_order: usize,
    pub holds: bool,
    pub partial: bool,
    pub report: serde_json::Value,
}

fn need<'a, T>(f: &'a Option<T>, name: &str, check: ModuleCheck) -> Result<&'a T> {
    f.as_ref().ok_or_else(|| Error::PatternMismatch(format!("check {} needs the pattern field {name:?}", check.name())))
}

fn to_json<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("serializable")
}

pub fn run_check(g: &Arc<FiniteGroup>, check: ModuleCheck, pat: &ModulePattern) -> Result<CheckOutcome> {
    let one = PermCharacter::trivial(g);
    let order = g.order();
    let (holds, partial, report) = match check {
        ModuleCheck::PermCharacter => {
            let h = need(&pat.subgroup, "subgroup", check)?.resolve(g)?;
            let chi = perm_character(g, &h)?;
            let burnside = chi.inner(&one)?;
            (burnside.is_one() && chi.dimension() == Rational::from((order / h.order()) as i64), false, serde_json::json!({"character": to_json(&chi), "orbits": burnside}))
        }
        ModuleCheck::VModule => {
            let h = need(&pat.subgroup, "subgroup", check)?.resolve(g)?;
            let v = v_module(g, &h)?;
            let ok = v.inner(&one)?.is_zero() && v.dimension() == Rational::from((order / h.order()) as i64 - 1);
            (ok, false, serde_json::json!({"character": to_json(&v)}))
        }
        ModuleCheck::VEtale => {
            let hs = resolve_all(need(&pat.omega, "omega", check)?, g)?;
            let v = v_etale(g, &hs)?;
            let n: usize = hs.iter().map(|h| order / h.order()).sum();
            (v.dimension() == Rational::from(n as i64 - 1), false, serde_json::json!({"n": n, "character": to_json(&v)}))
        }
        ModuleCheck::QuadIdentity => {
            let om = resolve_all(need(&pat.omega, "omega", check)?, g)?;
            let ot = need(&pat.omega_tilde, "omega_tilde", check)?.resolve(&om, g)?;
            let rep = check_quad_identity(g, &om, &ot)?;
            (rep.holds && rep.dimension_matches, false, to_json(&rep))
        }
        ModuleCheck::Submodule => {
            let v = need(&pat.v, "v", check)?.resolve(g)?;
            let w = need(&pat.w, "w", check)?.resolve(g)?;
            let rep = submodule_test(&v, &w, pat.allow_partial)?;
            (rep.contained, rep.mode == super::SubmoduleMode::Partial, to_json(&rep))
        }
        ModuleCheck::RankGrowth => {
            let chi = need(&pat.realized, "realized", check)?.resolve(g)?;
            let chain = resolve_all(need(&pat.chain, "chain", check)?, g)?;
            let rep = rank_growth_report(&chi, &chain)?;
            (rep.steps.iter().all(|s| !s.lower_bound.is_negative()), false, to_json(&rep))
        }
        ModuleCheck::CharacterTable => {
            let t = CharacterTableModP::new(g)?;
            let ok = t.degrees.iter().map(|d| d * d).sum::<u64>() == order as u64;
            (ok, false, to_json(&t))
        }
    };
    Ok(CheckOutcome { check, group_order: order, holds, partial, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(s: &str) -> ModulePattern {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn quad_identity_from_json() {
        let g = Arc::new(FiniteGroup::parse("S3").unwrap());
        let p = pattern(r#"{"omega": ["stab:3"], "omega_tilde": "split"}"#);
        let out = run_check(&g, ModuleCheck::QuadIdentity, &p).unwrap();
        assert!(out.holds);
        let p = pattern(r#"{"omega": ["stab:3", "G"], "omega_tilde": [["1"], "split"]}"#);
        assert!(run_check(&g, ModuleCheck::QuadIdentity, &p).unwrap().holds);
    }

    #[test]
    fn all_checks_run() {
        let g = Arc::new(FiniteGroup::parse("S4").unwrap());
        let p = pattern(
            r#"{"subgroup": ["(1,2)", "(1,2,3)"], "omega": ["stab:4", "G"], "omega_tilde": "split",
                "v": {"v_module": "stab:4"}, "w": {"v_etale": ["stab:4", "G"]},
                "realized": {"sum": [{"scale": [3, {"v_module": "stab:4"}]}, {"trivial": 3}]},
                "chain": ["G", "stab:4", "stab:3,4", "1"]}"#,
        );
        for c in ModuleCheck::ALL {
            let out = run_check(&g, c, &p).unwrap();
            assert!(out.holds, "{}", c.name());
        }
    }

    #[test]
    fn errors() {
        let g = Arc::new(FiniteGroup::parse("S3").unwrap());
        assert!(matches!(run_check(&g, ModuleCheck::VModule, &ModulePattern::default()), Err(Error::PatternMismatch(_))));
        let p = pattern(r#"{"subgroup": ["(1,4)"]}"#);
        assert!(run_check(&g, ModuleCheck::VModule, &p).is_err());
        assert!("nonsense".parse::<ModuleCheck>().is_err());
        assert!(serde_json::from_str::<ModulePattern>(r#"{"bogus": 1}"#).is_err());
    }
}
