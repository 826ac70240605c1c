use nagata_core::algebra::{check_residuated_lattice, ResiduatedStructure};
use nagata_core::bimodule::{division_bimodule, Bimodule};
use nagata_core::corpus;
use nagata_core::enumerate::{commutative_residuated_chains, count_poset_orbits, lattices, posets};
use nagata_core::fractions::fractions_algebra;
use nagata_core::nagata::{nagata_product, restricted_nagata_product, NagataProduct};
use nagata_core::twist::{check_twist_round_trip, restricted_twist_product};

fn instances() -> Vec<(String, ResiduatedStructure, Option<usize>)> {
    let mut out: Vec<_> = corpus::algebras()
        .into_iter()
        .map(|a| (a.name, a.algebra, a.point))
        .collect();
    for n in 1..=3 {
        for (i, r) in commutative_residuated_chains(n).into_iter().enumerate() {
            out.push((format!("chain{n}-{i}"), r, Some(0)));
        }
    }
    out
}

/// The product straight from `⟨a,x⟩∘⟨b,y⟩ = ⟨ab, x∗b ∨ a∗y⟩`.
fn formula_product(m: &Bimodule, a: usize, x: usize, b: usize, y: usize) -> (usize, usize) {
    (m.scalars.mul(a, b), m.mjoin(m.ract(x, b), m.lact(a, y)))
}

/// Largest `z` with `le(z)`, by scanning the order.
fn greatest(p: &NagataProduct, le: impl Fn(usize) -> bool) -> Option<usize> {
    let n = p.space.len();
    let cands: Vec<usize> = (0..n).filter(|&z| le(z)).collect();
    cands
        .iter()
        .copied()
        .find(|&z| cands.iter().all(|&w| p.algebra.leq(w, z)))
}

#[test]
fn product_tables_follow_the_formula() {
    for (name, r, point) in instances() {
        let m = division_bimodule(&r, point).unwrap();
        let p = nagata_product(&m).unwrap();
        assert_eq!(p.space.len(), m.scalar_count() * m.module_count(), "{name}");
        for i in 0..p.space.len() {
            for j in 0..p.space.len() {
                let ((a, x), (b, y)) = (p.space.pair(i), p.space.pair(j));
                let k = p.algebra.mul(i, j);
                assert_eq!(p.space.pair(k), formula_product(&m, a, x, b, y), "{name}");
                assert_eq!(p.algebra.leq(i, j), m.scalars.leq(a, b) && m.module.leq(x, y), "{name}");
            }
        }
    }
}

#[test]
fn product_residuals_are_the_scanned_maxima() {
    for (name, r, point) in instances() {
        let m = division_bimodule(&r, point).unwrap();
        let p = nagata_product(&m).unwrap();
        let (lres, rres) = p.residuals.clone().unwrap_or_else(|| panic!("{name} has residuals"));
        let n = p.space.len();
        for i in 0..n {
            for k in 0..n {
                let under = greatest(&p, |z| p.algebra.leq(p.algebra.mul(i, z), k));
                let over = greatest(&p, |z| p.algebra.leq(p.algebra.mul(z, i), k));
                assert_eq!(under, Some(lres.get(i, k)), "{name} {i}∖{k}");
                assert_eq!(over, Some(rres.get(k, i)), "{name} {k}/{i}");
            }
        }
    }
}

#[test]
fn restricted_universe_is_the_defining_set() {
    for (name, r, point) in instances() {
        let Some(z) = point else { continue };
        let m = division_bimodule(&r, Some(z)).unwrap();
        let p = restricted_nagata_product(&m).unwrap();
        let mut expected = Vec::new();
        for a in 0..m.scalar_count() {
            for x in 0..m.module_count() {
                if m.module.leq(m.ract(z, a), x) && m.module.leq(m.lact(a, z), x) {
                    expected.push((a, x));
                }
            }
        }
        assert_eq!(p.space.pairs(), expected.as_slice(), "{name}");
        assert!(
            check_residuated_lattice(&p.residuated().unwrap()).unwrap().passed,
            "{name}"
        );
    }
}

#[test]
fn restricted_twist_universe_of_identity_pairs() {
    for a in corpus::pointed_algebras() {
        let Some(b) = a.brouwerian else { continue };
        let z = a.point.unwrap();
        let t = nagata_core::twist::TwistablePair::identity(&a.algebra)
            .unwrap()
            .with_point(z)
            .unwrap();
        let tw = restricted_twist_product(&t).unwrap();
        let n = b.size();
        let expected = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| b.leq(b.meet(x, y), z))
            .count();
        assert_eq!(tw.size(), expected, "{}", a.name);
        assert!(check_twist_round_trip(&t).unwrap().passed, "{}", a.name);
    }
}

#[test]
fn fractions_of_the_two_chain_at_bottom() {
    let b = corpus::brouwerian_algebras()
        .into_iter()
        .find(|(n, _)| n == "c2-bottom")
        .unwrap()
        .1;
    let f = fractions_algebra(&b).unwrap();
    assert_eq!(f.bimonoid.size(), 2);
    assert_eq!(f.pairs[f.embedding[0]], (0, 1));
    assert_eq!(f.pairs[f.embedding[1]], (1, 0));
}

#[test]
fn enumeration_counts_match_known_sequences() {
    let unlabeled = [1, 2, 5, 16];
    let lattice_counts = [1, 1, 1, 2, 5];
    for n in 1..=4 {
        assert_eq!(posets(n, true).len(), unlabeled[n - 1]);
        assert_eq!(count_poset_orbits(n), unlabeled[n - 1]);
    }
    for n in 1..=5 {
        assert_eq!(lattices(n, true).len(), lattice_counts[n - 1]);
    }
}
