//! Finite posets and order-theoretic operators on them.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::report::{conclude, ensure, CheckReport};
use crate::table::Table;

/// A finite relational structure over elements `0..size`, intended to be a
/// partial order. Construction only checks shape; [`check_poset`] checks the
/// order axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Builds a relation from nested rows. Fails on an empty or ragged table.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, Error> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::EmptySet);
        }
        let mut leq = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    what: "order relation",
                    expected: size,
                    found: row.len(),
                });
            }
            leq.extend_from_slice(row);
        }
        Ok(Poset {
            size,
            leq,
            labels: None,
        })
    }

    pub fn from_relation(size: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(size > 0, "a poset needs at least one element");
        let mut table = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                table.push(leq(i, j));
            }
        }
        Poset {
            size,
            leq: table,
            labels: None,
        }
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_relation(n, |i, j| i <= j)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation(n, |i, j| i == j)
    }

    /// Componentwise order on `a × b`, element `(i, j)` at index `i * |b| + j`.
    pub fn product(a: &Poset, b: &Poset) -> Self {
        let nb = b.size;
        Self::from_relation(a.size * nb, |p, q| a.leq(p / nb, q / nb) && b.leq(p % nb, q % nb))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, Error> {
        if labels.len() != self.size {
            return Err(Error::DimensionMismatch {
                what: "labels",
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.size).map(<[bool]>::to_vec).collect()
    }

    /// The order dual: `leq'[i][j] = leq[j][i]`.
    pub fn dualize(&self) -> Poset {
        Poset {
            size: self.size,
            leq: (0..self.size * self.size)
                .map(|k| self.leq(k % self.size, k / self.size))
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// The induced order on `elems`; element `k` of the result is `elems[k]`.
    pub fn sub_poset(&self, elems: &[usize]) -> Poset {
        let mut sub = Poset::from_relation(elems.len(), |i, j| self.leq(elems[i], elems[j]));
        sub.labels = self
            .labels
            .as_ref()
            .map(|l| elems.iter().map(|&e| l[e].clone()).collect());
        sub
    }

    /// The greatest element of `set`, if it has one.
    pub fn maximum(&self, set: impl IntoIterator<Item = usize>) -> Option<usize> {
        let items: Vec<usize> = set.into_iter().collect();
        items.iter().copied().find(|&m| items.iter().all(|&x| self.leq(x, m)))
    }

    /// The least element of `set`, if it has one.
    pub fn minimum(&self, set: impl IntoIterator<Item = usize>) -> Option<usize> {
        let items: Vec<usize> = set.into_iter().collect();
        items.iter().copied().find(|&m| items.iter().all(|&x| self.leq(m, x)))
    }

    /// Greatest lower bound of `xs`, by scanning all lower bounds.
    pub fn glb(&self, xs: &[usize]) -> Result<Option<usize>, Error> {
        self.check_subset(xs)?;
        Ok(self.maximum((0..self.size).filter(|&l| xs.iter().all(|&x| self.leq(l, x)))))
    }

    /// Least upper bound of `xs`, by scanning all upper bounds.
    pub fn lub(&self, xs: &[usize]) -> Result<Option<usize>, Error> {
        self.check_subset(xs)?;
        Ok(self.minimum((0..self.size).filter(|&u| xs.iter().all(|&x| self.leq(x, u)))))
    }

    fn check_subset(&self, xs: &[usize]) -> Result<(), Error> {
        if xs.is_empty() {
            return Err(Error::EmptySet);
        }
        match xs.iter().find(|&&x| x >= self.size) {
            Some(&index) => Err(Error::IndexOutOfRange {
                what: "element set",
                index,
                size: self.size,
            }),
            None => Ok(()),
        }
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.maximum((0..self.size).filter(|&l| self.leq(l, i) && self.leq(l, j)))
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.minimum((0..self.size).filter(|&u| self.leq(i, u) && self.leq(j, u)))
    }

    /// The full meet table, absent unless every binary meet exists.
    pub fn meet_table(&self) -> Option<Table> {
        self.binary_table(Self::meet)
    }

    pub fn join_table(&self) -> Option<Table> {
        self.binary_table(Self::join)
    }

    fn binary_table(&self, op: impl Fn(&Self, usize, usize) -> Option<usize>) -> Option<Table> {
        let n = self.size;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(op(self, i, j)?);
            }
        }
        Table::new(n, n, data).ok()
    }

    pub fn top(&self) -> Option<usize> {
        self.maximum(0..self.size)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.minimum(0..self.size)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| self.leq(i, j) || self.leq(j, i)))
    }
}

/// Checks reflexivity, antisymmetry and transitivity.
pub fn check_poset(p: &Poset) -> CheckReport {
    conclude("poset", || {
        let n = p.size();
        for i in 0..n {
            ensure(p.leq(i, i), "poset.reflexivity", &[("x", i)], "x ≤ x")?;
        }
        for i in 0..n {
            for j in 0..n {
                ensure(
                    i == j || !(p.leq(i, j) && p.leq(j, i)),
                    "poset.antisymmetry",
                    &[("x", i), ("y", j)],
                    "x ≤ y and y ≤ x imply x = y",
                )?;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !p.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    ensure(
                        !p.leq(j, k) || p.leq(i, k),
                        "poset.transitivity",
                        &[("x", i), ("y", j), ("z", k)],
                        "x ≤ y and y ≤ z imply x ≤ z",
                    )?;
                }
            }
        }
        Ok(())
    })
}

/// A self-map of a poset, given by its table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoMap {
    table: Vec<usize>,
}

impl EndoMap {
    pub fn new(base: &Poset, table: Vec<usize>) -> Result<Self, Error> {
        if table.len() != base.size() {
            return Err(Error::DimensionMismatch {
                what: "map",
                expected: base.size(),
                found: table.len(),
            });
        }
        if let Some(&index) = table.iter().find(|&&v| v >= base.size()) {
            return Err(Error::IndexOutOfRange {
                what: "map",
                index,
                size: base.size(),
            });
        }
        Ok(EndoMap { table })
    }

    pub fn identity(n: usize) -> Self {
        EndoMap {
            table: (0..n).collect(),
        }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> usize) -> Self {
        EndoMap {
            table: (0..n).map(f).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn is_isotone(&self, base: &Poset) -> bool {
        self.isotone_violation(base).is_none()
    }

    pub(crate) fn isotone_violation(&self, base: &Poset) -> Option<(usize, usize)> {
        let n = base.size();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| base.leq(i, j) && !base.leq(self.apply(i), self.apply(j)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotence_violation().is_none()
    }

    pub(crate) fn idempotence_violation(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.apply(self.apply(i)) != self.apply(i))
    }

    /// Elements fixed by the map, in increasing index order.
    pub fn fixpoints(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.apply(i) == i).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Interior,
    Closure,
    Both,
    Neither,
}

impl OperatorKind {
    pub fn is_interior(self) -> bool {
        matches!(self, OperatorKind::Interior | OperatorKind::Both)
    }

    pub fn is_closure(self) -> bool {
        matches!(self, OperatorKind::Closure | OperatorKind::Both)
    }
}

pub fn classify_operator(base: &Poset, f: &EndoMap) -> OperatorKind {
    if !f.is_isotone(base) || !f.is_idempotent() {
        return OperatorKind::Neither;
    }
    let n = base.size();
    let deflationary = (0..n).all(|x| base.leq(f.apply(x), x));
    let inflationary = (0..n).all(|x| base.leq(x, f.apply(x)));
    match (deflationary, inflationary) {
        (true, true) => OperatorKind::Both,
        (true, false) => OperatorKind::Interior,
        (false, true) => OperatorKind::Closure,
        (false, false) => OperatorKind::Neither,
    }
}

/// The fixpoints of an idempotent map, with the order they inherit.
pub fn fixpoint_image(base: &Poset, f: &EndoMap) -> Result<(Vec<usize>, Poset), Error> {
    if let Some(x) = f.idempotence_violation() {
        return Err(Error::NotIdempotent(x));
    }
    let fixed = f.fixpoints();
    let sub = base.sub_poset(&fixed);
    Ok((fixed, sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn diamond() -> Poset {
        // ⊥=0, a=1, b=2, ⊤=3
        Poset::from_relation(4, |i, j| i == j || i == 0 || j == 3)
    }

    #[test]
    fn singleton_and_chain_are_posets() {
        assert!(check_poset(&Poset::chain(1)).passed);
        assert!(check_poset(&Poset::chain(2)).passed);
    }

    #[test]
    fn symmetric_pair_breaks_antisymmetry() {
        let p = Poset::from_rows(&[vec![true, true], vec![true, true]]).unwrap();
        let r = check_poset(&p);
        assert_eq!(r.axiom, "poset.antisymmetry");
        assert_eq!(r.witness, vec![("x".into(), 0), ("y".into(), 1)]);
    }

    #[test]
    fn ragged_relation_is_a_dimension_error() {
        let err = Poset::from_rows(&[vec![true, false], vec![true]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn dualize_reverses_chains() {
        let d = Poset::chain(3).dualize();
        assert!(d.leq(2, 1) && d.leq(1, 0) && !d.leq(0, 1));
        assert_eq!(Poset::antichain(2).dualize(), Poset::antichain(2));
    }

    #[test]
    fn glb_examples() {
        assert_eq!(Poset::chain(2).glb(&[0, 1]), Ok(Some(0)));
        assert_eq!(Poset::antichain(2).glb(&[0, 1]), Ok(None));
        // Lower bounds of {a, b} in the diamond are {⊥}; the scan must find ⊥.
        let d = diamond();
        let lower: Vec<usize> = (0..4).filter(|&l| d.leq(l, 1) && d.leq(l, 2)).collect();
        assert_eq!(lower, vec![0]);
        assert_eq!(d.glb(&[1, 2]), Ok(Some(0)));
        assert_eq!(d.glb(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn classify_examples() {
        let c2 = Poset::chain(2);
        assert_eq!(classify_operator(&c2, &EndoMap::identity(2)), OperatorKind::Both);
        assert_eq!(
            classify_operator(&c2, &EndoMap::from_fn(2, |_| 1)),
            OperatorKind::Closure
        );
        assert_eq!(
            classify_operator(&c2, &EndoMap::from_fn(2, |_| 0)),
            OperatorKind::Interior
        );
        let swap = EndoMap::from_fn(2, |x| 1 - x);
        assert_eq!(classify_operator(&c2, &swap), OperatorKind::Neither);
    }

    #[test]
    fn fixpoint_image_examples() {
        let c3 = Poset::chain(3);
        let (fixed, sub) = fixpoint_image(&c3, &EndoMap::identity(3)).unwrap();
        assert_eq!(fixed, vec![0, 1, 2]);
        assert_eq!(sub, c3);
        let (fixed, _) = fixpoint_image(&Poset::chain(2), &EndoMap::from_fn(2, |_| 1)).unwrap();
        assert_eq!(fixed, vec![1]);
        let f = EndoMap::new(&c3, vec![0, 2, 2]).unwrap();
        let (fixed, sub) = fixpoint_image(&c3, &f).unwrap();
        assert_eq!(fixed, vec![0, 2]);
        assert_eq!(sub, Poset::chain(2));
        let g = EndoMap::new(&c3, vec![1, 2, 0]).unwrap();
        assert_eq!(fixpoint_image(&c3, &g), Err(Error::NotIdempotent(0)));
    }

    #[test]
    fn endomap_shape_is_checked() {
        assert!(EndoMap::new(&Poset::chain(2), vec![0]).is_err());
        assert!(EndoMap::new(&Poset::chain(2), vec![0, 2]).is_err());
    }

    /// Random posets: a random relation closed under reflexivity and
    /// transitivity along a random linear extension.
    fn arb_poset() -> impl Strategy<Value = Poset> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let mut leq = vec![false; n * n];
                for i in 0..n {
                    for j in 0..n {
                        leq[i * n + j] = i == j || (i < j && bits[i * n + j]);
                    }
                }
                for k in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            if leq[i * n + k] && leq[k * n + j] {
                                leq[i * n + j] = true;
                            }
                        }
                    }
                }
                Poset::from_relation(n, |i, j| leq[i * n + j])
            })
        })
    }

    proptest! {
        #[test]
        fn dualize_is_an_involution_swapping_bounds(p in arb_poset()) {
            prop_assert!(check_poset(&p).passed);
            let d = p.dualize();
            prop_assert_eq!(d.dualize(), p.clone());
            for i in 0..p.size() {
                for j in 0..p.size() {
                    prop_assert_eq!(p.glb(&[i, j]).unwrap(), d.lub(&[i, j]).unwrap());
                    prop_assert_eq!(p.lub(&[i, j]).unwrap(), d.glb(&[i, j]).unwrap());
                }
            }
        }

        #[test]
        fn identity_is_both(p in arb_poset()) {
            prop_assert_eq!(classify_operator(&p, &EndoMap::identity(p.size())), OperatorKind::Both);
        }

        #[test]
        fn fixpoints_equal_range_for_idempotent_maps(p in arb_poset(), seed in any::<u64>()) {
            // Retract onto a random subset R: every element goes to some member of R.
            let n = p.size();
            let mut keep: Vec<usize> = (0..n).filter(|i| seed >> i & 1 == 1).collect();
            if keep.is_empty() {
                keep.push(0);
            }
            let f = EndoMap::from_fn(n, |x| {
                if keep.contains(&x) { x } else { keep[(seed as usize >> 8).wrapping_add(x) % keep.len()] }
            });
            let (fixed, _) = fixpoint_image(&p, &f).unwrap();
            let mut range: Vec<usize> = (0..n).map(|x| f.apply(x)).collect();
            range.sort_unstable();
            range.dedup();
            prop_assert_eq!(fixed, range);
        }
    }
}
