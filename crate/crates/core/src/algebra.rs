//! Posemigroups, residuated structures and Brouwerian algebras.

use alloc::vec::Vec;

use crate::error::Error;
use crate::order::{check_poset, Poset};
use crate::report::{conclude, ensure, CheckReport, Verdict};
use crate::table::Table;

/// A poset with an isotone associative multiplication, plus whichever of a
/// unit and lattice tables the structure carries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Posemigroup {
    pub poset: Poset,
    pub mul: Table,
    pub unit: Option<usize>,
    pub meet: Option<Table>,
    pub join: Option<Table>,
}

impl Posemigroup {
    pub fn new(poset: Poset, mul: Table) -> Result<Self, Error> {
        let n = poset.size();
        mul.expect_shape("mul", n, n, n)?;
        Ok(Posemigroup {
            poset,
            mul,
            unit: None,
            meet: None,
            join: None,
        })
    }

    pub fn with_unit(mut self, unit: usize) -> Result<Self, Error> {
        self.check_index("unit", unit)?;
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn with_meet(mut self, meet: Table) -> Result<Self, Error> {
        let n = self.size();
        meet.expect_shape("meet", n, n, n)?;
        self.meet = Some(meet);
        Ok(self)
    }

    pub fn with_join(mut self, join: Table) -> Result<Self, Error> {
        let n = self.size();
        join.expect_shape("join", n, n, n)?;
        self.join = Some(join);
        Ok(self)
    }

    /// Attaches meet and join tables computed from the order.
    pub fn with_lattice(mut self) -> Result<Self, Error> {
        self.meet = Some(self.poset.meet_table().ok_or(Error::MissingComponent("meet"))?);
        self.join = Some(self.poset.join_table().ok_or(Error::MissingComponent("join"))?);
        Ok(self)
    }

    fn check_index(&self, what: &'static str, i: usize) -> Result<(), Error> {
        if i < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                what,
                index: i,
                size: self.size(),
            })
        }
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet.as_ref().map(|t| t.get(a, b))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join.as_ref().map(|t| t.get(a, b))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The substructure on `elems`, which must be closed under `·`.
    /// Unit and lattice tables are carried over when they restrict.
    pub fn restrict(&self, elems: &[usize]) -> Result<(Posemigroup, Vec<Option<usize>>), Error> {
        let mut index = alloc::vec![None; self.size()];
        for (k, &e) in elems.iter().enumerate() {
            index[e] = Some(k);
        }
        let k = elems.len();
        let lookup = |v: usize, what: &'static str| index[v].ok_or(Error::NotClosed(what));
        let mut mul = Vec::with_capacity(k * k);
        for &a in elems {
            for &b in elems {
                mul.push(lookup(self.mul(a, b), "mul")?);
            }
        }
        let sub_table = |t: &Option<Table>| -> Option<Table> {
            let t = t.as_ref()?;
            let mut data = Vec::with_capacity(k * k);
            for &a in elems {
                for &b in elems {
                    data.push(index[t.get(a, b)]?);
                }
            }
            Table::new(k, k, data).ok()
        };
        let poset = self.poset.sub_poset(elems);
        let meet = sub_table(&self.meet).or_else(|| poset.meet_table());
        let join = sub_table(&self.join).or_else(|| poset.join_table());
        let sub = Posemigroup {
            poset,
            mul: Table::new(k, k, mul)?,
            unit: self.unit.and_then(|u| index[u]),
            meet,
            join,
        };
        Ok((sub, index))
    }
}

pub(crate) fn scan_posemigroup(s: &Posemigroup) -> Verdict {
    check_poset(&s.poset).into_verdict()?;
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                ensure(
                    s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)),
                    "posemigroup.associativity",
                    &[("a", a), ("b", b), ("c", c)],
                    "(a·b)·c = a·(b·c)",
                )?;
            }
        }
    }
    for a in 0..n {
        for a2 in 0..n {
            if !s.leq(a, a2) {
                continue;
            }
            for b in 0..n {
                ensure(
                    s.leq(s.mul(a, b), s.mul(a2, b)),
                    "posemigroup.isotone",
                    &[("a", a), ("a'", a2), ("b", b)],
                    "a ≤ a' implies a·b ≤ a'·b",
                )?;
                ensure(
                    s.leq(s.mul(b, a), s.mul(b, a2)),
                    "posemigroup.isotone",
                    &[("a", a), ("a'", a2), ("b", b)],
                    "a ≤ a' implies b·a ≤ b·a'",
                )?;
            }
        }
    }
    if let Some(u) = s.unit {
        for a in 0..n {
            ensure(
                s.mul(u, a) == a && s.mul(a, u) == a,
                "posemigroup.unit",
                &[("a", a)],
                "1·a = a = a·1",
            )?;
        }
    }
    scan_lattice_tables(&s.poset, s.meet.as_ref(), s.join.as_ref(), "posemigroup")
}

/// Checks that the given tables are the meet and join of `p`.
pub(crate) fn scan_lattice_tables(p: &Poset, meet: Option<&Table>, join: Option<&Table>, scope: &str) -> Verdict {
    let n = p.size();
    let mut axiom = alloc::string::String::from(scope);
    let base = axiom.len();
    if let Some(m) = meet {
        axiom.push_str(".meet");
        for x in 0..n {
            for y in 0..n {
                ensure(
                    p.meet(x, y) == Some(m.get(x, y)),
                    &axiom,
                    &[("x", x), ("y", y)],
                    "x ∧ y is the greatest lower bound",
                )?;
            }
        }
        axiom.truncate(base);
    }
    if let Some(j) = join {
        axiom.push_str(".join");
        for x in 0..n {
            for y in 0..n {
                ensure(
                    p.join(x, y) == Some(j.get(x, y)),
                    &axiom,
                    &[("x", x), ("y", y)],
                    "x ∨ y is the least upper bound",
                )?;
            }
        }
    }
    Ok(())
}

pub fn check_posemigroup(s: &Posemigroup) -> CheckReport {
    conclude("posemigroup", || scan_posemigroup(s))
}

/// A posemigroup with both residuals: `lres[a][c] = a∖c`, `rres[c][b] = c/b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResiduatedStructure {
    pub base: Posemigroup,
    pub lres: Table,
    pub rres: Table,
}

impl ResiduatedStructure {
    pub fn new(base: Posemigroup, lres: Table, rres: Table) -> Result<Self, Error> {
        let n = base.size();
        lres.expect_shape("left residual", n, n, n)?;
        rres.expect_shape("right residual", n, n, n)?;
        Ok(ResiduatedStructure { base, lres, rres })
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    /// `a ∖ c`
    #[inline]
    pub fn under(&self, a: usize, c: usize) -> usize {
        self.lres.get(a, c)
    }

    /// `c / b`
    #[inline]
    pub fn over(&self, c: usize, b: usize) -> usize {
        self.rres.get(c, b)
    }
}

/// Residuals by maximum-of-set scan; absent if some residual does not exist.
pub fn compute_residuals(s: &Posemigroup) -> Option<ResiduatedStructure> {
    let n = s.size();
    let mut lres = Vec::with_capacity(n * n);
    for a in 0..n {
        for c in 0..n {
            lres.push(s.poset.maximum((0..n).filter(|&b| s.leq(s.mul(a, b), c)))?);
        }
    }
    let mut rres = Vec::with_capacity(n * n);
    for c in 0..n {
        for b in 0..n {
            rres.push(s.poset.maximum((0..n).filter(|&a| s.leq(s.mul(a, b), c)))?);
        }
    }
    Some(ResiduatedStructure {
        base: s.clone(),
        lres: Table::new(n, n, lres).ok()?,
        rres: Table::new(n, n, rres).ok()?,
    })
}

pub(crate) fn scan_residuation(r: &ResiduatedStructure) -> Verdict {
    let s = &r.base;
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let prod = s.leq(s.mul(a, b), c);
                ensure(
                    s.leq(b, r.under(a, c)) == prod,
                    "residuation.left",
                    &[("a", a), ("b", b), ("c", c)],
                    "b ≤ a∖c iff a·b ≤ c",
                )?;
                ensure(
                    s.leq(a, r.over(c, b)) == prod,
                    "residuation.right",
                    &[("a", a), ("b", b), ("c", c)],
                    "a ≤ c/b iff a·b ≤ c",
                )?;
            }
        }
    }
    Ok(())
}

pub fn check_residuation(r: &ResiduatedStructure) -> CheckReport {
    conclude("residuation", || scan_residuation(r))
}

/// Residuated ℓ-semigroup: a lattice-ordered residuated posemigroup.
pub fn check_residuated_l_semigroup(r: &ResiduatedStructure) -> Result<CheckReport, Error> {
    if r.base.meet.is_none() {
        return Err(Error::MissingComponent("meet"));
    }
    if r.base.join.is_none() {
        return Err(Error::MissingComponent("join"));
    }
    Ok(conclude("residuated-l-semigroup", || {
        scan_posemigroup(&r.base)?;
        scan_residuation(r)
    }))
}

pub fn check_residuated_lattice(r: &ResiduatedStructure) -> Result<CheckReport, Error> {
    if r.base.unit.is_none() {
        return Err(Error::MissingComponent("unit"));
    }
    let mut report = check_residuated_l_semigroup(r)?;
    if report.passed {
        report.axiom = "residuated-lattice".into();
    }
    Ok(report)
}

/// A distributive lattice with relative pseudocomplement `x → y` and an
/// optional point `0`. The multiplication is the meet and the unit the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrouwerianAlgebra {
    pub lattice: Posemigroup,
    pub imp: Table,
    pub point: Option<usize>,
}

impl BrouwerianAlgebra {
    pub fn new(lattice: Posemigroup, imp: Table, point: Option<usize>) -> Result<Self, Error> {
        let n = lattice.size();
        imp.expect_shape("imp", n, n, n)?;
        if let Some(p) = point {
            if p >= n {
                return Err(Error::IndexOutOfRange {
                    what: "point",
                    index: p,
                    size: n,
                });
            }
        }
        Ok(BrouwerianAlgebra { lattice, imp, point })
    }

    /// Builds the algebra on a lattice order, computing `→` by scan.
    /// Fails if the order is not a lattice; distributivity is left to
    /// [`check_brouwerian`].
    pub fn from_lattice(poset: Poset, point: Option<usize>) -> Result<Self, Error> {
        let meet = poset.meet_table().ok_or(Error::MissingComponent("meet"))?;
        let top = poset.top().ok_or(Error::MissingComponent("top"))?;
        let lattice = Posemigroup::new(poset, meet.clone())?
            .with_unit(top)?
            .with_meet(meet)?
            .with_lattice()?;
        let n = lattice.size();
        let mut imp = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let z = lattice
                    .poset
                    .maximum((0..n).filter(|&z| lattice.leq(lattice.mul(x, z), y)))
                    .ok_or(Error::MissingComponent("relative pseudocomplement"))?;
                imp.push(z);
            }
        }
        Self::new(lattice, Table::new(n, n, imp)?, point)
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    #[inline]
    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.imp.get(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.lattice.mul(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.lattice.join(x, y).expect("Brouwerian algebra without join table")
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.lattice.leq(x, y)
    }

    pub fn top(&self) -> usize {
        self.lattice.unit.expect("Brouwerian algebra without top")
    }

    /// `¬x = x → 0`. Panics if the algebra has no point.
    pub fn neg(&self, x: usize) -> usize {
        self.imp(x, self.point.expect("unpointed Brouwerian algebra"))
    }

    /// The same algebra viewed as a commutative residuated lattice.
    pub fn as_residuated(&self) -> ResiduatedStructure {
        let n = self.size();
        ResiduatedStructure {
            base: self.lattice.clone(),
            lres: self.imp.clone(),
            rres: Table::square(n, |c, b| self.imp(b, c)),
        }
    }
}

pub fn check_brouwerian(b: &BrouwerianAlgebra) -> Result<CheckReport, Error> {
    let meet = b.lattice.meet.as_ref().ok_or(Error::MissingComponent("meet"))?;
    let join = b.lattice.join.as_ref().ok_or(Error::MissingComponent("join"))?;
    Ok(conclude("brouwerian", || {
        let s = &b.lattice;
        let n = s.size();
        check_poset(&s.poset).into_verdict()?;
        scan_lattice_tables(&s.poset, Some(meet), Some(join), "brouwerian")?;
        for x in 0..n {
            for y in 0..n {
                ensure(
                    s.mul(x, y) == meet.get(x, y),
                    "brouwerian.mul-is-meet",
                    &[("x", x), ("y", y)],
                    "x·y = x ∧ y",
                )?;
            }
        }
        let top = s.unit;
        for x in 0..n {
            ensure(
                top.is_some_and(|t| s.leq(x, t)),
                "brouwerian.top",
                &[("x", x)],
                "the unit is the greatest element",
            )?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = meet.get(x, join.get(y, z));
                    let rhs = join.get(meet.get(x, y), meet.get(x, z));
                    ensure(
                        lhs == rhs,
                        "brouwerian.distributivity",
                        &[("x", x), ("y", y), ("z", z)],
                        "x∧(y∨z) = (x∧y)∨(x∧z)",
                    )?;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ensure(
                        s.leq(z, b.imp(x, y)) == s.leq(meet.get(x, z), y),
                        "brouwerian.pseudocomplement",
                        &[("x", x), ("y", y), ("z", z)],
                        "z ≤ x→y iff x∧z ≤ y",
                    )?;
                }
            }
        }
        Ok(())
    }))
}

/// `¬¬x = x ∨ 0` for every `x`.
pub fn check_boolean_pointed(b: &BrouwerianAlgebra) -> Result<CheckReport, Error> {
    let zero = b.point.ok_or(Error::MissingComponent("point"))?;
    if b.lattice.join.is_none() {
        return Err(Error::MissingComponent("join"));
    }
    Ok(conclude("brouwerian.boolean-pointed", || {
        for x in 0..b.size() {
            ensure(
                b.neg(b.neg(x)) == b.join(x, zero),
                "brouwerian.boolean-pointed",
                &[("x", x)],
                "¬¬x = x ∨ 0",
            )?;
        }
        Ok(())
    }))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    pub(crate) fn chain_meet_monoid(n: usize) -> Posemigroup {
        Posemigroup::new(Poset::chain(n), Table::square(n, |a, b| a.min(b)))
            .unwrap()
            .with_unit(n - 1)
            .unwrap()
            .with_lattice()
            .unwrap()
    }

    /// Łukasiewicz chain on `0..n` with a·b = max(0, a+b-(n-1)).
    pub(crate) fn lukasiewicz(n: usize) -> Posemigroup {
        Posemigroup::new(Poset::chain(n), Table::square(n, |a, b| (a + b).saturating_sub(n - 1)))
            .unwrap()
            .with_unit(n - 1)
            .unwrap()
            .with_lattice()
            .unwrap()
    }

    #[test]
    fn meet_monoid_on_two_chain_passes() {
        assert!(check_posemigroup(&chain_meet_monoid(2)).passed);
    }

    #[test]
    fn join_with_top_unit_fails_unit_law() {
        let s = Posemigroup::new(Poset::chain(2), Table::square(2, |a, b| a.max(b)))
            .unwrap()
            .with_unit(1)
            .unwrap();
        let r = check_posemigroup(&s);
        assert_eq!(r.axiom, "posemigroup.unit");
        assert_eq!(r.witness, vec![("a".into(), 0)]);
    }

    #[test]
    fn lukasiewicz_three_chain_is_a_pomonoid() {
        let s = lukasiewicz(3);
        // Independent associativity oracle on the real-valued definition.
        let val = |i: usize| i as f64 / 2.0;
        let mul = |x: f64, y: f64| (x + y - 1.0).max(0.0);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(val(s.mul(a, b)), mul(val(a), val(b)));
                for c in 0..3 {
                    assert_eq!(mul(mul(val(a), val(b)), val(c)), mul(val(a), mul(val(b), val(c))));
                }
            }
        }
        assert!(check_posemigroup(&s).passed);
    }

    #[test]
    fn boolean_implication_on_two_chain() {
        let r = compute_residuals(&chain_meet_monoid(2)).unwrap();
        assert_eq!(
            (r.under(1, 0), r.under(0, 0), r.under(0, 1), r.under(1, 1)),
            (0, 1, 1, 1)
        );
    }

    #[test]
    fn antichain_residuals_are_absent() {
        // Left-zero band a·b = a on the 2-antichain: {b : 0·b ≤ 1} is empty.
        let s = Posemigroup::new(Poset::antichain(2), Table::square(2, |a, _| a)).unwrap();
        assert!(check_posemigroup(&s).passed);
        assert!((0..2).any(|a| (0..2).any(|c| c != a && (0..2).all(|b| !s.leq(s.mul(a, b), c)))));
        assert!(compute_residuals(&s).is_none());
    }

    #[test]
    fn lukasiewicz_half_under_zero_is_half() {
        let s = lukasiewicz(3);
        let oracle = (0..3).filter(|&b| (1usize + b).saturating_sub(2) == 0).max().unwrap();
        assert_eq!(oracle, 1);
        let r = compute_residuals(&s).unwrap();
        assert_eq!(r.under(1, 0), oracle);
        assert!(check_residuated_lattice(&r).unwrap().passed);
    }

    #[test]
    fn corrupted_residual_is_caught() {
        let mut r = compute_residuals(&lukasiewicz(3)).unwrap();
        r.lres.set(1, 0, 2);
        let rep = check_residuated_lattice(&r).unwrap();
        assert_eq!(rep.axiom, "residuation.left");
        assert_eq!(rep.witness, vec![("a".into(), 1), ("b".into(), 2), ("c".into(), 0)]);
    }

    #[test]
    fn missing_tables_are_errors() {
        let s = Posemigroup::new(Poset::chain(2), Table::square(2, |a, b| a.min(b))).unwrap();
        let r = compute_residuals(&s).unwrap();
        assert_eq!(check_residuated_lattice(&r), Err(Error::MissingComponent("unit")));
        let s = s.with_unit(1).unwrap();
        let r = compute_residuals(&s).unwrap();
        assert_eq!(check_residuated_lattice(&r), Err(Error::MissingComponent("meet")));
    }

    fn godel3(point: Option<usize>) -> BrouwerianAlgebra {
        BrouwerianAlgebra::from_lattice(Poset::chain(3), point).unwrap()
    }

    #[test]
    fn brouwerian_examples() {
        let b2 = BrouwerianAlgebra::from_lattice(Poset::chain(2), None).unwrap();
        assert!(check_brouwerian(&b2).unwrap().passed);
        let g = godel3(None);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(g.imp(x, y), if x <= y { 2 } else { y });
            }
        }
        assert!(check_brouwerian(&g).unwrap().passed);
        let bad = BrouwerianAlgebra::new(g.lattice.clone(), Table::square(3, |_, y| y), None).unwrap();
        let r = check_brouwerian(&bad).unwrap();
        assert_eq!(r.axiom, "brouwerian.pseudocomplement");
        assert_eq!(r.witness, vec![("x".into(), 0), ("y".into(), 0), ("z".into(), 1)]);
    }

    #[test]
    fn boolean_pointed_examples() {
        let b2 = BrouwerianAlgebra::from_lattice(Poset::chain(2), Some(0)).unwrap();
        assert!(check_boolean_pointed(&b2).unwrap().passed);
        assert!(check_boolean_pointed(&godel3(Some(1))).unwrap().passed);
        let g = godel3(Some(0));
        assert_eq!((g.neg(1), g.neg(0)), (0, 2));
        let r = check_boolean_pointed(&g).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness, vec![("x".into(), 1)]);
        assert_eq!(
            check_boolean_pointed(&godel3(None)),
            Err(Error::MissingComponent("point"))
        );
    }

    /// Random pomonoid on a chain: isotone commutative mul built as
    /// a·b = f(a + b) for an isotone f, with top as unit when that works.
    fn arb_chain_mul() -> impl Strategy<Value = Posemigroup> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(0..n, 2 * n - 1).prop_map(move |mut f| {
                f.sort_unstable();
                Posemigroup::new(Poset::chain(n), Table::square(n, |a, b| f[a + b])).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn computed_residuals_satisfy_residuation(s in arb_chain_mul()) {
            if let Some(r) = compute_residuals(&s) {
                prop_assert!(check_residuation(&r).passed);
            }
        }

        #[test]
        fn recomputing_residuals_is_stable(n in 1usize..5) {
            for s in [lukasiewicz(n), chain_meet_monoid(n)] {
                let r = compute_residuals(&s).unwrap();
                prop_assert_eq!(compute_residuals(&r.base).unwrap(), r);
            }
        }
    }
}
