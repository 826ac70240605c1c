//! Check levels per structure kind.
//!
//! Without an explicit level a structure is checked at the strongest level
//! whose components it carries: a bimodule with residuals, unit and point is
//! checked as cyclic, a Nagata structure with `⊕` also as a sesquilattice.

use nagata_core::algebra::{
    check_boolean_pointed, check_brouwerian, check_posemigroup, check_residuated_l_semigroup, check_residuated_lattice,
    check_residuation, compute_residuals,
};
use nagata_core::bimodule::{check_bimodule, BimoduleLevel};
use nagata_core::fractions::{check_bimonoid, check_term_equivalence};
use nagata_core::nagata::{
    check_bilattice_sesquilattice, check_nagata_lattice, check_nagata_posemigroup, LatticeVariant,
};
use nagata_core::order::check_poset;
use nagata_core::report::CheckReport;
use nagata_core::twist::{check_strong_negation, check_twistable_pair, TwistLevel};
use nagata_core::Error as CoreError;

use crate::format::Structure;

#[derive(Debug, thiserror::Error)]
pub enum LevelError {
    #[error("level `{level}` does not apply to a {kind}; known levels: {known}")]
    Unknown {
        level: String,
        kind: &'static str,
        known: String,
    },
    #[error("level `{level}` needs a component the structure lacks: {source}")]
    Missing {
        level: &'static str,
        #[source]
        source: CoreError,
    },
}

/// The levels available for a kind, weakest first.
pub fn levels(kind: &str) -> &'static [&'static str] {
    match kind {
        "poset" => &["poset", "lattice"],
        "posemigroup" => &["posemigroup", "residuated"],
        "residuated-lattice" => &["posemigroup", "residuated-l-semigroup", "residuated-lattice"],
        "brouwerian" => &["residuated-lattice", "brouwerian", "boolean-pointed"],
        "bimodule" => &["biaction", "bimodule", "residuated", "unital", "cyclic"],
        "nagata" => &[
            "nagata-posemigroup",
            "nagata-lattice",
            "sesquilattice",
            "strong-negation",
        ],
        "twistable-pair" => &["posemigroup", "residuated-lattice"],
        "bimonoid" => &["bimonoid", "complemented"],
        _ => &[],
    }
}

/// The levels tried without an explicit choice: those that only depend on
/// which components are present, never on a property that may fail.
fn default_levels(kind: &str) -> &'static [&'static str] {
    match kind {
        "poset" => &["poset"],
        "posemigroup" => &["posemigroup"],
        "residuated-lattice" => &["residuated-l-semigroup", "residuated-lattice"],
        "brouwerian" => &["brouwerian"],
        "bimonoid" => &["bimonoid"],
        other => levels(other),
    }
}

fn run_level(s: &Structure, level: &'static str) -> Result<CheckReport, CoreError> {
    Ok(match (s, level) {
        (Structure::Poset(p), "poset") => check_poset(p),
        (Structure::Poset(p), "lattice") => {
            let r = check_poset(p);
            if !r.passed {
                return Ok(r);
            }
            let n = p.size();
            let missing = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| p.meet(x, y).is_none() || p.join(x, y).is_none());
            match missing {
                Some((x, y)) => CheckReport::fail("lattice.bounds", &[("x", x), ("y", y)], "x∧y and x∨y exist"),
                None => CheckReport::pass("lattice", "every pair has a meet and a join"),
            }
        }
        (Structure::Posemigroup(s), "posemigroup") => check_posemigroup(s),
        (Structure::Posemigroup(s), "residuated") => {
            let r = check_posemigroup(s);
            if !r.passed {
                return Ok(r);
            }
            match compute_residuals(s) {
                Some(r) => check_residuation(&r),
                None => CheckReport::fail("residuation.existence", &[], "both residuals exist"),
            }
        }
        (Structure::ResiduatedLattice { algebra, .. }, "posemigroup") => check_posemigroup(&algebra.base),
        (Structure::ResiduatedLattice { algebra, .. }, "residuated-l-semigroup") => {
            check_residuated_l_semigroup(algebra)?
        }
        (Structure::ResiduatedLattice { algebra, .. }, "residuated-lattice") => check_residuated_lattice(algebra)?,
        (Structure::Brouwerian(b), "residuated-lattice") => check_residuated_lattice(&b.as_residuated())?,
        (Structure::Brouwerian(b), "brouwerian") => check_brouwerian(b)?,
        (Structure::Brouwerian(b), "boolean-pointed") => {
            let r = check_brouwerian(b)?;
            if !r.passed {
                return Ok(r);
            }
            check_boolean_pointed(b)?
        }
        (Structure::Bimodule(m), l) => {
            let level = match l {
                "biaction" => BimoduleLevel::Biaction,
                "bimodule" => BimoduleLevel::Bimodule,
                "residuated" => BimoduleLevel::Residuated,
                "unital" => BimoduleLevel::Unital,
                _ => BimoduleLevel::Cyclic,
            };
            check_bimodule(m, level)?
        }
        (Structure::Nagata { structure, restricted }, "nagata-posemigroup") => {
            check_nagata_posemigroup(structure, *restricted)?
        }
        (Structure::Nagata { structure, restricted }, "nagata-lattice") => {
            check_nagata_lattice(structure, *restricted)?
        }
        (Structure::Nagata { structure, .. }, "sesquilattice") => {
            check_bilattice_sesquilattice(structure, LatticeVariant::Sesquilattice)?
        }
        (Structure::Nagata { structure, .. }, "strong-negation") => check_strong_negation(structure)?,
        (Structure::TwistablePair(t), "posemigroup") => check_twistable_pair(t, TwistLevel::Posemigroup)?,
        (Structure::TwistablePair(t), "residuated-lattice") => check_twistable_pair(t, TwistLevel::ResiduatedLattice)?,
        (Structure::Bimonoid(b), "bimonoid") => check_bimonoid(b),
        (Structure::Bimonoid(b), "complemented") => {
            let r = check_bimonoid(b);
            if !r.passed {
                return Ok(r);
            }
            check_term_equivalence(b)?
        }
        _ => unreachable!("levels() lists only handled pairs"),
    })
}

/// Nagata levels are independent scans; every other kind's levels are
/// cumulative, so only the strongest needs running.
fn independent(s: &Structure) -> bool {
    matches!(s, Structure::Nagata { .. })
}

/// Runs `level` (or the default level) on `s`, one report per level run.
pub fn check(s: &Structure, level: Option<&str>) -> Result<Vec<CheckReport>, LevelError> {
    let known = levels(s.kind());
    match level {
        Some(l) => {
            let idx = known.iter().position(|k| *k == l).ok_or_else(|| LevelError::Unknown {
                level: l.to_owned(),
                kind: s.kind(),
                known: known.join(", "),
            })?;
            let chosen: Vec<&'static str> = if independent(s) {
                known[..=idx].to_vec()
            } else {
                vec![known[idx]]
            };
            chosen
                .into_iter()
                .map(|l| run_level(s, l).map_err(|source| LevelError::Missing { level: l, source }))
                .collect()
        }
        None => Ok(default_reports(s, default_levels(s.kind()))),
    }
}

fn default_reports(s: &Structure, known: &'static [&'static str]) -> Vec<CheckReport> {
    if independent(s) {
        return known
            .iter()
            .filter_map(|l| match run_level(s, l) {
                Ok(r) => Some(r),
                Err(CoreError::MissingComponent(_)) => None,
                Err(e) => Some(CheckReport::fail(&format!("{l}.error"), &[], e.to_string())),
            })
            .collect();
    }
    for l in known.iter().rev() {
        match run_level(s, l) {
            Ok(r) => return vec![r],
            Err(CoreError::MissingComponent(_)) => continue,
            Err(e) => return vec![CheckReport::fail(&format!("{l}.error"), &[], e.to_string())],
        }
    }
    Vec::new()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nagata_core::corpus;
    use nagata_core::order::Poset;

    #[test]
    fn every_kind_has_levels() {
        for k in [
            "poset",
            "posemigroup",
            "residuated-lattice",
            "brouwerian",
            "bimodule",
            "nagata",
            "twistable-pair",
            "bimonoid",
        ] {
            assert!(!levels(k).is_empty(), "{k}");
        }
    }

    #[test]
    fn unknown_level_is_an_error() {
        let s = Structure::Poset(Poset::chain(2));
        assert!(matches!(check(&s, Some("bimodule")), Err(LevelError::Unknown { .. })));
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let s = Structure::Poset(Poset::antichain(2));
        let r = check(&s, Some("lattice")).unwrap();
        assert_eq!(r[0].axiom, "lattice.bounds");
        assert!(!r[0].passed);
        assert!(check(&s, None).unwrap()[0].passed);
    }

    #[test]
    fn corpus_bimodules_pass_their_default_level() {
        for (name, m) in corpus::bimodules() {
            let r = check(&Structure::Bimodule(m), None).unwrap();
            assert!(r.iter().all(|r| r.passed), "{name}: {}", r[0]);
        }
    }

    #[test]
    fn missing_unit_is_reported_for_explicit_level() {
        let b = corpus::bimodules().remove(1).1;
        let mut m = b.clone();
        m.scalars.unit = None;
        assert!(matches!(
            check(&Structure::Bimodule(m), Some("unital")),
            Err(LevelError::Missing { .. })
        ));
    }
}
