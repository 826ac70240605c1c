//! The fixed corpus of small structures every suite runs over.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::algebra::{compute_residuals, BrouwerianAlgebra, Posemigroup, ResiduatedStructure};
use crate::bimodule::{division_bimodule, Bimodule};
use crate::order::Poset;
use crate::table::Table;
use crate::twist::TwistablePair;

/// The `n`-element Gödel chain: `· = ∧`, unit the top.
pub fn godel_chain(n: usize) -> Posemigroup {
    Posemigroup::new(Poset::chain(n), Table::square(n, |a, b| a.min(b)))
        .and_then(|s| s.with_unit(n - 1))
        .and_then(Posemigroup::with_lattice)
        .expect("chains are lattices")
}

/// The `n`-element Łukasiewicz chain: `a·b = max(0, a+b-(n-1))`.
pub fn lukasiewicz_chain(n: usize) -> Posemigroup {
    Posemigroup::new(Poset::chain(n), Table::square(n, |a, b| (a + b).saturating_sub(n - 1)))
        .and_then(|s| s.with_unit(n - 1))
        .and_then(Posemigroup::with_lattice)
        .expect("chains are lattices")
}

/// The Boolean lattice `2^k` as a product of 2-chains.
pub fn boolean_lattice(k: usize) -> Poset {
    (1..k).fold(Poset::chain(2), |p, _| Poset::product(&p, &Poset::chain(2)))
}

pub fn residuated(s: &Posemigroup) -> ResiduatedStructure {
    compute_residuals(s).expect("corpus algebras are residuated")
}

/// A pointed residuated lattice from the corpus, with its Brouwerian
/// presentation when it has one.
#[derive(Clone, Debug)]
pub struct CorpusAlgebra {
    pub name: String,
    pub algebra: ResiduatedStructure,
    pub point: Option<usize>,
    pub brouwerian: Option<BrouwerianAlgebra>,
}

fn brouwerian_member(name: &str, lattice: Poset, point: Option<usize>) -> CorpusAlgebra {
    let b = BrouwerianAlgebra::from_lattice(lattice, point).expect("corpus lattices are Brouwerian");
    CorpusAlgebra {
        name: name.into(),
        algebra: b.as_residuated(),
        point,
        brouwerian: Some(b),
    }
}

/// The residuated lattices of the corpus: the singleton, the 2-chain
/// unpointed and at both points, the Gödel 3-chain at its middle, the
/// Boolean algebras `2²` and `2³` at the bottom, and the Łukasiewicz 3-chain
/// at the bottom.
pub fn algebras() -> Vec<CorpusAlgebra> {
    let b4 = boolean_lattice(2);
    let b8 = boolean_lattice(3);
    let (b4_bot, b8_bot) = (b4.bottom(), b8.bottom());
    vec![
        brouwerian_member("singleton", Poset::chain(1), Some(0)),
        brouwerian_member("c2-boolean", Poset::chain(2), None),
        brouwerian_member("c2-bottom", Poset::chain(2), Some(0)),
        brouwerian_member("c2-top", Poset::chain(2), Some(1)),
        brouwerian_member("godel3-middle", Poset::chain(3), Some(1)),
        brouwerian_member("bool4-bottom", b4, b4_bot),
        brouwerian_member("bool8-bottom", b8, b8_bot),
        CorpusAlgebra {
            name: "luk3-bottom".into(),
            algebra: residuated(&lukasiewicz_chain(3)),
            point: Some(0),
            brouwerian: None,
        },
    ]
}

pub fn pointed_algebras() -> Vec<CorpusAlgebra> {
    algebras().into_iter().filter(|a| a.point.is_some()).collect()
}

/// The Boolean-pointed Brouwerian members.
pub fn brouwerian_algebras() -> Vec<(String, BrouwerianAlgebra)> {
    algebras()
        .into_iter()
        .filter_map(|a| Some((a.name, a.brouwerian?)))
        .filter(|(_, b)| b.point.is_some())
        .collect()
}

/// The division bimodule of every corpus algebra, pointed where the algebra is.
pub fn bimodules() -> Vec<(String, Bimodule)> {
    algebras()
        .into_iter()
        .map(|a| {
            let m = division_bimodule(&a.algebra, a.point).expect("corpus algebras are lattices");
            (format!("div-{}", a.name), m)
        })
        .collect()
}

/// The Gödel 3-chain over the 2-chain: `λ` sends the middle up to the top,
/// `ρ` sends the top to the top.
pub fn collapsing_pair() -> TwistablePair {
    TwistablePair::new(godel_chain(3), residuated(&godel_chain(2)), vec![0, 1, 1], vec![0, 2])
        .and_then(|t| t.with_point(0))
        .expect("well-formed pair")
}

/// The identity pair over every pointed corpus algebra, and the collapsing
/// pair.
pub fn twistable_pairs() -> Vec<(String, TwistablePair)> {
    let mut out: Vec<(String, TwistablePair)> = pointed_algebras()
        .into_iter()
        .map(|a| {
            let t = TwistablePair::identity(&a.algebra)
                .and_then(|t| t.with_point(a.point.expect("pointed")))
                .expect("corpus algebras have meets");
            (format!("id-pair-{}", a.name), t)
        })
        .collect();
    out.push(("collapse-g3-c2".into(), collapsing_pair()));
    out
}
