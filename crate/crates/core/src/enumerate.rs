//! Exhaustive enumeration of small structures, optionally up to isomorphism.
//!
//! Isomorphism rejection uses canonical forms: the lexicographically least
//! encoding over all relabellings. This is only feasible at desk scale, so
//! every enumerator is guarded by a size bound.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{check_boolean_pointed, compute_residuals, BrouwerianAlgebra, Posemigroup, ResiduatedStructure};
use crate::error::Error;
use crate::order::Poset;
use crate::table::Table;

/// Default size bound for single-sorted enumeration.
pub const SINGLE_SORTED_BOUND: usize = 5;
/// Default size bound per sort for two-sorted enumeration.
pub const TWO_SORTED_BOUND: usize = 4;

pub fn check_bound(requested: usize, bound: usize) -> Result<(), Error> {
    if requested > bound {
        Err(Error::BoundExceeded { requested, bound })
    } else {
        Ok(())
    }
}

/// Steps `p` to the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `f` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        if !next_permutation(&mut p) {
            break;
        }
    }
}

/// The least `encode(p)` over all permutations `p`, where `p[i]` is the new
/// label of element `i`.
pub fn canonical_form(n: usize, encode: impl Fn(&[usize]) -> Vec<usize>) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for_each_permutation(n, |p| {
        let e = encode(p);
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap_or_default()
}

fn encode_relation(p: &Poset, perm: &[usize]) -> Vec<usize> {
    let n = p.size();
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[perm[i] * n + perm[j]] = usize::from(p.leq(i, j));
        }
    }
    out
}

pub fn poset_canonical_form(p: &Poset) -> Vec<usize> {
    canonical_form(p.size(), |perm| encode_relation(p, perm))
}

fn dedup_by<T>(items: Vec<T>, key: impl Fn(&T) -> Vec<usize>) -> Vec<T> {
    let mut seen = BTreeSet::new();
    items.into_iter().filter(|x| seen.insert(key(x))).collect()
}

/// All partial orders on `0..n`, in a fixed order. Each unordered pair is
/// incomparable, below or above, and transitivity filters the rest.
pub fn labeled_posets(n: usize) -> Vec<Poset> {
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut choice = vec![0u8; pairs.len()];
    let mut out = Vec::new();
    let mut rel = vec![false; n * n];
    loop {
        rel.fill(false);
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (&(i, j), &c) in pairs.iter().zip(&choice) {
            match c {
                1 => rel[i * n + j] = true,
                2 => rel[j * n + i] = true,
                _ => {}
            }
        }
        let transitive =
            (0..n).all(|i| (0..n).all(|j| !rel[i * n + j] || (0..n).all(|k| !rel[j * n + k] || rel[i * n + k])));
        if transitive {
            out.push(Poset::from_relation(n, |i, j| rel[i * n + j]));
        }
        let Some(k) = choice.iter().rposition(|&c| c < 2) else {
            break;
        };
        choice[k] += 1;
        choice[k + 1..].fill(0);
    }
    out
}

pub fn posets(n: usize, up_to_iso: bool) -> Vec<Poset> {
    let all = labeled_posets(n);
    if up_to_iso {
        dedup_by(all, poset_canonical_form)
    } else {
        all
    }
}

/// The number of isomorphism classes of posets on `n` elements counted as
/// orbits of the relabelling action, `(1/n!) Σ_π |Fix(π)|`. This shares no
/// code with the canonical-form route.
pub fn count_poset_orbits(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let all = labeled_posets(n);
    let mut fixed = 0usize;
    let mut perms = 0usize;
    for_each_permutation(n, |p| {
        perms += 1;
        fixed += all
            .iter()
            .filter(|q| (0..n).all(|i| (0..n).all(|j| q.leq(i, j) == q.leq(p[i], p[j]))))
            .count();
    });
    fixed / perms
}

fn is_lattice(p: &Poset) -> bool {
    p.size() > 0 && p.meet_table().is_some() && p.join_table().is_some()
}

fn is_distributive(p: &Poset) -> bool {
    let (Some(m), Some(j)) = (p.meet_table(), p.join_table()) else {
        return false;
    };
    let n = p.size();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m.get(x, j.get(y, z)) == j.get(m.get(x, y), m.get(x, z)))))
}

pub fn lattices(n: usize, up_to_iso: bool) -> Vec<Poset> {
    posets(n, up_to_iso).into_iter().filter(is_lattice).collect()
}

pub fn distributive_lattices(n: usize, up_to_iso: bool) -> Vec<Poset> {
    posets(n, up_to_iso)
        .into_iter()
        .filter(|p| is_lattice(p) && is_distributive(p))
        .collect()
}

/// Boolean-pointed Brouwerian algebras on `n` elements: every point of every
/// distributive lattice that passes the Boolean-pointedness check.
pub fn boolean_pointed_brouwerian(n: usize, up_to_iso: bool) -> Vec<BrouwerianAlgebra> {
    let mut out = Vec::new();
    for l in distributive_lattices(n, up_to_iso) {
        for z in 0..n {
            let b = BrouwerianAlgebra::from_lattice(l.clone(), Some(z)).expect("distributive lattices are Brouwerian");
            if check_boolean_pointed(&b).is_ok_and(|r| r.passed) {
                out.push(b);
            }
        }
    }
    if up_to_iso {
        out = dedup_by(out, |b| {
            let z = b.point.expect("pointed");
            canonical_form(b.size(), |perm| {
                let mut e = encode_relation(&b.lattice.poset, perm);
                e.push(perm[z]);
                e
            })
        });
    }
    out
}

/// Commutative residuated lattices whose order is the chain `0 < … < n-1`.
/// On a finite chain, residuation amounts to isotone products with `0`
/// absorbing. Chains have no non-trivial automorphisms, so the list is
/// already free of isomorphic copies.
pub fn commutative_residuated_chains(n: usize) -> Vec<ResiduatedStructure> {
    if n == 0 {
        return Vec::new();
    }
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut t = vec![0usize; n * n];
    let mut out = Vec::new();
    fill_chain_cells(n, &cells, 0, &mut t, &mut out);
    out
}

fn fill_chain_cells(n: usize, cells: &[(usize, usize)], k: usize, t: &mut [usize], out: &mut Vec<ResiduatedStructure>) {
    if k == cells.len() {
        if let Some(r) = chain_structure(n, t) {
            out.push(r);
        }
        return;
    }
    let (i, j) = cells[k];
    let lo = if i == 0 {
        0
    } else {
        let above = t[(i - 1) * n + j];
        let left = if j > i { t[i * n + j - 1] } else { 0 };
        above.max(left)
    };
    let hi = if i == 0 { 0 } else { n - 1 };
    for v in lo..=hi {
        t[i * n + j] = v;
        t[j * n + i] = v;
        fill_chain_cells(n, cells, k + 1, t, out);
    }
}

fn chain_structure(n: usize, t: &[usize]) -> Option<ResiduatedStructure> {
    let at = |a: usize, b: usize| t[a * n + b];
    let unit = (0..n).find(|&u| (0..n).all(|x| at(u, x) == x))?;
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| at(at(a, b), c) == at(a, at(b, c)))));
    if !assoc {
        return None;
    }
    let s = Posemigroup::new(Poset::chain(n), Table::new(n, n, t.to_vec()).ok()?)
        .ok()?
        .with_unit(unit)
        .ok()?
        .with_lattice()
        .ok()?;
    compute_residuals(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_brouwerian, check_residuated_lattice};
    use crate::iso::{are_isomorphic, FiniteStructure};

    #[test]
    fn poset_counts() {
        let labeled: Vec<usize> = (1..=5).map(|n| labeled_posets(n).len()).collect();
        assert_eq!(labeled, [1, 3, 19, 219, 4231]);
        let unlabeled: Vec<usize> = (1..=5).map(|n| posets(n, true).len()).collect();
        assert_eq!(unlabeled, [1, 2, 5, 16, 63]);
    }

    #[test]
    fn orbit_count_agrees_with_canonical_forms() {
        for n in 1..=4 {
            assert_eq!(count_poset_orbits(n), posets(n, true).len());
        }
    }

    #[test]
    fn two_element_posets_are_chain_and_antichain() {
        let ps = posets(2, true);
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().any(|p| p.is_chain()));
        assert!(ps.iter().any(|p| !p.is_chain()));
    }

    #[test]
    fn lattice_counts() {
        let l: Vec<usize> = (1..=5).map(|n| lattices(n, true).len()).collect();
        assert_eq!(l, [1, 1, 1, 2, 5]);
        let d: Vec<usize> = (1..=5).map(|n| distributive_lattices(n, true).len()).collect();
        assert_eq!(d, [1, 1, 1, 2, 3]);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let reps = posets(4, true);
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                let fa = FiniteStructure::new(4).with_relation((0..16).map(|k| a.leq(k / 4, k % 4)).collect());
                let fb = FiniteStructure::new(4).with_relation((0..16).map(|k| b.leq(k / 4, k % 4)).collect());
                assert!(!are_isomorphic(&fa, &fb).unwrap());
            }
        }
    }

    #[test]
    fn brouwerian_points() {
        let two = boolean_pointed_brouwerian(2, true);
        assert_eq!(two.iter().map(|b| b.point.unwrap()).collect::<Vec<_>>(), [0, 1]);
        for n in 1..=5 {
            for b in boolean_pointed_brouwerian(n, true) {
                assert!(check_brouwerian(&b).unwrap().passed);
            }
        }
        // On the 3-chain only the middle and the top are Boolean points.
        let three: Vec<usize> = boolean_pointed_brouwerian(3, true)
            .iter()
            .map(|b| b.point.unwrap())
            .collect();
        assert_eq!(three, [1, 2]);
    }

    #[test]
    fn residuated_chains() {
        assert_eq!(commutative_residuated_chains(1).len(), 1);
        let two = commutative_residuated_chains(2);
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].base.mul.to_rows(), [[0, 0], [0, 1]]);
        for n in 1..=4 {
            let cs = commutative_residuated_chains(n);
            for r in &cs {
                assert!(check_residuated_lattice(r).unwrap().passed);
                assert!(r.base.is_commutative());
            }
            // Brute force over all n^(n²) tables as an independent count.
            if n <= 3 {
                let mut count = 0;
                let cells = n * n;
                let total = n.pow(cells as u32);
                for code in 0..total {
                    let t: Vec<usize> = (0..cells).map(|k| code / n.pow(k as u32) % n).collect();
                    let s = Posemigroup::new(Poset::chain(n), Table::new(n, n, t).unwrap()).unwrap();
                    let Some(unit) = (0..n).find(|&u| (0..n).all(|x| s.mul(u, x) == x && s.mul(x, u) == x)) else {
                        continue;
                    };
                    let s = s.with_unit(unit).unwrap().with_lattice().unwrap();
                    if s.is_commutative()
                        && compute_residuals(&s).is_some_and(|r| check_residuated_lattice(&r).unwrap().passed)
                    {
                        count += 1;
                    }
                }
                assert_eq!(cs.len(), count, "n = {n}");
            }
        }
    }

    #[test]
    fn bound_errors() {
        assert_eq!(
            check_bound(6, SINGLE_SORTED_BOUND),
            Err(Error::BoundExceeded { requested: 6, bound: 5 })
        );
        assert!(check_bound(4, TWO_SORTED_BOUND).is_ok());
    }
}
