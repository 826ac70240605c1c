//! The corpus battery: nine criteria, each a list of per-instance reports.

use nagata_core::algebra::{
    check_residuated_l_semigroup, check_residuated_lattice, compute_residuals, BrouwerianAlgebra, ResiduatedStructure,
};
use nagata_core::bimodule::{check_bimodule, division_bimodule, Bimodule, BimoduleLevel};
use nagata_core::corpus;
use nagata_core::enumerate::{boolean_pointed_brouwerian, commutative_residuated_chains, count_poset_orbits, posets};
use nagata_core::fractions::{
    brouwerian_lemma_suite, brouwerian_twist, check_fractions, check_mu, check_nu, complement_of, construct_fractions,
    mu_image,
};
use nagata_core::nagata::{
    check_action_recovery, check_bilattice_sesquilattice, check_counit, check_embeddings, check_nagata_lattice,
    check_nagata_posemigroup, check_recovery_maps, check_triangle_identities, check_unit_map, check_unit_surjectivity,
    double_division_image, nagata_product, nagata_structure, restricted_nagata_product, unit_map, LatticeVariant,
};
use nagata_core::order::classify_operator;
use nagata_core::report::CheckReport;
use nagata_core::twist::{
    check_involutive_collapse, check_strong_negation, check_twist_round_trip, check_unit_preserves_negation,
    restricted_twist_product,
};
use nagata_core::Error as CoreError;

use crate::check::check;
use crate::format::parse_unchecked;

pub const TITLES: [&str; 9] = [
    "Nagata products of division bimodules are residuated l-semigroups",
    "restricted products are residuated lattices on the double-division image",
    "sigma and gamma recover the bimodule",
    "adjunction unit and triangle identities",
    "sesquilattice equations and unit surjectivity",
    "twist products carry a strong negation and untwist back",
    "bimonoids of fractions of Boolean-pointed Brouwerian algebras",
    "oracle cross-checks",
    "corrupted fixtures fail with the intended axiom",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub subject: String,
    pub report: CheckReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub outcomes: Vec<Outcome>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        !self.outcomes.is_empty() && self.outcomes.iter().all(|o| o.report.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.report.passed)
    }
}

/// A corrupted structure file and the axiom its check must name.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub file: &'static str,
    pub text: &'static str,
    pub level: Option<&'static str>,
    pub axiom: &'static str,
}

macro_rules! fixture {
    ($file:literal, $level:expr, $axiom:literal) => {
        Fixture {
            file: $file,
            text: include_str!(concat!("../corpus/corrupted/", $file)),
            level: $level,
            axiom: $axiom,
        }
    };
}

pub const FIXTURES: [Fixture; 9] = [
    fixture!("poset-antisymmetry.alg", None, "poset.antisymmetry"),
    fixture!("posemigroup-associativity.alg", None, "posemigroup.associativity"),
    fixture!("residuated-lattice-residuation.alg", None, "residuation.left"),
    fixture!("brouwerian-pseudocomplement.alg", None, "brouwerian.pseudocomplement"),
    fixture!("bimodule-action.alg", None, "bimodule.action.left"),
    fixture!("nagata-sigma.alg", None, "nagata.posemigroup.sigma-idempotent"),
    fixture!("nagata-negation.alg", None, "twist.negation.double"),
    fixture!("twistable-pair-lambda.alg", None, "twist.pair.lambda-isotone"),
    fixture!("bimonoid-commutativity.alg", None, "bimonoid.mul.commutativity"),
];

struct Recorder {
    outcomes: Vec<Outcome>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { outcomes: Vec::new() }
    }

    fn push(&mut self, subject: &str, r: Result<CheckReport, CoreError>) {
        let report = r.unwrap_or_else(|e| CheckReport::fail("suite.error", &[], e.to_string()));
        self.outcomes.push(Outcome {
            subject: subject.to_owned(),
            report,
        });
    }

    fn ok(&mut self, subject: &str, cond: bool, axiom: &str, detail: &str) {
        let report = if cond {
            CheckReport::pass(axiom, detail)
        } else {
            CheckReport::fail(axiom, &[], detail)
        };
        self.push(subject, Ok(report));
    }

    fn finish(self, number: usize) -> CriterionResult {
        CriterionResult {
            number,
            title: TITLES[number - 1],
            outcomes: self.outcomes,
        }
    }
}

/// Every corpus algebra and every commutative residuated chain of size at
/// most 4, with the point it carries.
pub fn residuated_instances() -> Vec<(String, ResiduatedStructure, Option<usize>)> {
    let mut out: Vec<_> = corpus::algebras()
        .into_iter()
        .map(|a| (a.name, a.algebra, a.point))
        .collect();
    for n in 1..=4 {
        for (i, r) in commutative_residuated_chains(n).into_iter().enumerate() {
            out.push((format!("chain{n}-{i}"), r, Some(0)));
        }
    }
    out
}

/// The unital cyclic pointed corpus bimodules.
pub fn pointed_bimodules() -> Vec<(String, Bimodule)> {
    corpus::bimodules()
        .into_iter()
        .filter(|(_, m)| m.point.is_some())
        .collect()
}

/// Every Boolean-pointed Brouwerian algebra of size at most 5 up to
/// isomorphism, and the 8-element Boolean corpus member.
pub fn brouwerian_instances() -> Vec<(String, BrouwerianAlgebra)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for (i, b) in boolean_pointed_brouwerian(n, true).into_iter().enumerate() {
            out.push((format!("bp{n}-{i}"), b));
        }
    }
    out.extend(
        corpus::brouwerian_algebras()
            .into_iter()
            .filter(|(name, _)| name == "bool8-bottom"),
    );
    out
}

fn criterion_1() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, r, point) in residuated_instances() {
        let subject = format!("div-{name}");
        let report = division_bimodule(&r, point)
            .and_then(|m| nagata_product(&m))
            .and_then(|p| match p.residuated() {
                Some(r) => check_residuated_l_semigroup(&r),
                None => Ok(CheckReport::fail(
                    "nagata.residuals",
                    &[],
                    "the product has both residuals",
                )),
            });
        rec.push(&subject, report);
    }
    rec.finish(1)
}

fn criterion_2() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, m) in pointed_bimodules() {
        rec.push(&name, check_bimodule(&m, BimoduleLevel::Cyclic));
        let restricted = match restricted_nagata_product(&m) {
            Ok(p) => p,
            Err(e) => {
                rec.push(&name, Err(e));
                continue;
            }
        };
        rec.push(
            &name,
            match restricted.residuated() {
                Some(r) => check_residuated_lattice(&r),
                None => Ok(CheckReport::fail(
                    "nagata.residuals",
                    &[],
                    "the restricted product has both residuals",
                )),
            },
        );
        let universe = (|| {
            let full = nagata_product(&m)?;
            let fr = full.residuated().ok_or(CoreError::MissingComponent("residuals"))?;
            let unit = m.scalars.unit.ok_or(CoreError::MissingComponent("unit"))?;
            let z = m.point.ok_or(CoreError::MissingComponent("point"))?;
            let p = full.space.get(unit, z).ok_or(CoreError::MissingComponent("⟨1,0⟩"))?;
            let image: Vec<(usize, usize)> = double_division_image(&fr, p)?
                .into_iter()
                .map(|k| full.space.pair(k))
                .collect();
            Ok(image)
        })();
        match universe {
            Ok(image) => rec.ok(
                &name,
                image == restricted.space.pairs(),
                "restricted.universe",
                "the restricted universe is the double-division image at ⟨1,0⟩",
            ),
            Err(e) => rec.push(&name, Err(e)),
        }
    }
    rec.finish(2)
}

fn criterion_3() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, m) in pointed_bimodules() {
        let n = match nagata_structure(&m, true) {
            Ok(n) => n,
            Err(e) => {
                rec.push(&name, Err(e));
                continue;
            }
        };
        let p = &n.carrier.poset;
        rec.ok(
            &name,
            classify_operator(p, &n.sigma).is_interior(),
            "recovery.sigma-interior",
            "σ is an interior operator",
        );
        rec.ok(
            &name,
            classify_operator(p, &n.gamma).is_closure(),
            "recovery.gamma-closure",
            "γ is a closure operator",
        );
        rec.push(&name, Ok(check_recovery_maps(&n)));
        rec.push(&name, check_embeddings(&m, &n));
        rec.push(&name, check_action_recovery(&m, &n));
        rec.push(&name, check_counit(&m, &n));
    }
    rec.finish(3)
}

fn criterion_4() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, m) in pointed_bimodules() {
        let n = match nagata_structure(&m, true) {
            Ok(n) => n,
            Err(e) => {
                rec.push(&name, Err(e));
                continue;
            }
        };
        rec.push(&name, check_nagata_posemigroup(&n, true));
        if n.carrier.meet.is_some() && n.carrier.join.is_some() {
            rec.push(&name, check_nagata_lattice(&n, true));
        }
        rec.push(&name, unit_map(&n, true).map(|u| check_unit_map(&n, &u)));
        rec.push(&name, check_triangle_identities(&m, true));
    }
    rec.finish(4)
}

fn criterion_5() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, m) in pointed_bimodules() {
        let n = match nagata_structure(&m, true) {
            Ok(n) => n,
            Err(e) => {
                rec.push(&name, Err(e));
                continue;
            }
        };
        rec.push(&name, check_bilattice_sesquilattice(&n, LatticeVariant::Sesquilattice));
        rec.push(&name, Ok(check_unit_surjectivity(&n, true)));
    }
    rec.finish(5)
}

fn criterion_6() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, t) in corpus::twistable_pairs() {
        match restricted_twist_product(&t) {
            Ok(tw) => {
                rec.ok(
                    &name,
                    tw.residuals.is_some(),
                    "twist.negation.residuals",
                    "the restricted twist product has both residuals",
                );
                rec.push(&name, check_strong_negation(&tw));
                rec.push(&name, check_unit_preserves_negation(&tw));
            }
            Err(e) => rec.push(&name, Err(e)),
        }
        rec.push(&name, check_twist_round_trip(&t));
        rec.push(&name, Ok(check_involutive_collapse(&t)));
    }
    rec.finish(6)
}

fn criterion_7() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, b) in brouwerian_instances() {
        rec.push(&name, brouwerian_lemma_suite(&b));
        let tw = match brouwerian_twist(&b) {
            Ok(tw) => tw,
            Err(e) => {
                rec.push(&name, Err(e));
                continue;
            }
        };
        rec.push(&name, check_mu(&b, &tw));
        rec.push(&name, mu_image(&b, &tw).and_then(|image| check_nu(&b, &tw, &image)));
        rec.push(&name, construct_fractions(&b).and_then(|f| check_fractions(&b, &f)));
    }
    rec.finish(7)
}

fn criterion_8() -> CriterionResult {
    let mut rec = Recorder::new();
    for (name, r, _) in residuated_instances() {
        let round = compute_residuals(&r.base).is_some_and(|c| c.lres == r.lres && c.rres == r.rres);
        rec.ok(
            &name,
            round,
            "oracle.residuals",
            "recomputed residuals equal the stored tables",
        );
    }
    for (name, b) in brouwerian_instances() {
        let agree = construct_fractions(&b).and_then(|f| {
            for x in 0..f.bimonoid.size() {
                if complement_of(&f.bimonoid, x)? != Some(f.complement[x]) {
                    return Ok(CheckReport::fail(
                        "oracle.complement",
                        &[("m", x)],
                        "⊸m is the searched complement",
                    ));
                }
            }
            Ok(CheckReport::pass("oracle.complement", "⊸m is the searched complement"))
        });
        rec.push(&name, agree);
    }
    for n in 1..=4 {
        let (found, orbits) = (posets(n, true).len(), count_poset_orbits(n));
        rec.push(
            &format!("posets-{n}"),
            Ok(if found == orbits {
                CheckReport::pass("oracle.poset-count", format!("{found} posets up to isomorphism"))
            } else {
                CheckReport::fail(
                    "oracle.poset-count",
                    &[("enumerated", found), ("orbits", orbits)],
                    "canonical forms match the orbit count",
                )
            }),
        );
    }
    rec.finish(8)
}

/// The first failing report of a fixture's check, if the file parses.
pub fn fixture_failure(f: &Fixture) -> Result<Option<CheckReport>, String> {
    let s = parse_unchecked(f.text).map_err(|e| e.to_string())?;
    let reports = check(&s, f.level).map_err(|e| e.to_string())?;
    Ok(reports.into_iter().find(|r| !r.passed))
}

fn criterion_9() -> CriterionResult {
    let mut rec = Recorder::new();
    for f in &FIXTURES {
        let report = match fixture_failure(f) {
            Ok(Some(r)) if r.axiom == f.axiom && !r.witness.is_empty() => {
                CheckReport::pass("fixture.named-failure", format!("{r}"))
            }
            Ok(Some(r)) => CheckReport::fail("fixture.named-failure", &[], format!("expected {}, got {r}", f.axiom)),
            Ok(None) => CheckReport::fail(
                "fixture.named-failure",
                &[],
                format!("expected {}, every check passed", f.axiom),
            ),
            Err(e) => CheckReport::fail("fixture.named-failure", &[], e),
        };
        rec.push(f.file, Ok(report));
    }
    rec.finish(9)
}

pub fn run_criterion(number: usize) -> CriterionResult {
    match number {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => panic!("criteria are numbered 1 to 9"),
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=9).map(run_criterion).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_lists_are_nonempty() {
        assert_eq!(pointed_bimodules().len(), 7);
        assert!(residuated_instances().len() > corpus::algebras().len());
        let names: Vec<String> = brouwerian_instances().into_iter().map(|b| b.0).collect();
        assert!(names.contains(&"bool8-bottom".to_owned()));
        assert!(names.contains(&"bp2-1".to_owned()));
    }

    #[test]
    fn fixtures_fail_as_intended() {
        let r = run_criterion(9);
        for o in &r.outcomes {
            assert!(o.report.passed, "{}: {}", o.subject, o.report);
        }
    }

    #[test]
    fn oracle_cross_checks_pass() {
        let r = run_criterion(8);
        assert!(r.passed(), "{:?}", r.failures().next());
    }
}
