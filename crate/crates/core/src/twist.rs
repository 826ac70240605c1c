//! Twistable pairs, twist products with strong negation, and the untwist
//! construction recovering a pair from a Nagata structure with strong
//! negation.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{compute_residuals, scan_posemigroup, scan_residuation, Posemigroup, ResiduatedStructure};
use crate::bimodule::{ActionResiduals, Bimodule};
use crate::error::Error;
use crate::iso::{find_isomorphism, FiniteStructure};
use crate::nagata::{check_nagata_posemigroup, nagata_structure, NagataStructure, PairSpace};
use crate::order::EndoMap;
use crate::report::{conclude, ensure, CheckReport};
use crate::table::{PartialTable, Table};

/// `⟨S₊, S₋, λ, ρ⟩` with an optional point `0 ∈ S₋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistablePair {
    pub plus: Posemigroup,
    pub minus: ResiduatedStructure,
    pub lam: Vec<usize>,
    pub rho: Vec<usize>,
    pub point: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistLevel {
    Posemigroup,
    ResiduatedLattice,
}

fn check_map(what: &'static str, map: &[usize], from: usize, to: usize) -> Result<(), Error> {
    if map.len() != from {
        return Err(Error::DimensionMismatch {
            what,
            expected: from,
            found: map.len(),
        });
    }
    if let Some(&index) = map.iter().find(|&&v| v >= to) {
        return Err(Error::IndexOutOfRange { what, index, size: to });
    }
    Ok(())
}

impl TwistablePair {
    pub fn new(plus: Posemigroup, minus: ResiduatedStructure, lam: Vec<usize>, rho: Vec<usize>) -> Result<Self, Error> {
        let t = TwistablePair {
            plus,
            minus,
            lam,
            rho,
            point: None,
        };
        t.validate_shape()?;
        Ok(t)
    }

    pub fn with_point(mut self, point: usize) -> Result<Self, Error> {
        if point >= self.minus.size() {
            return Err(Error::IndexOutOfRange {
                what: "point",
                index: point,
                size: self.minus.size(),
            });
        }
        self.point = Some(point);
        Ok(self)
    }

    /// `⟨L, L, id, id⟩`.
    pub fn identity(l: &ResiduatedStructure) -> Result<Self, Error> {
        let n = l.size();
        TwistablePair::new(l.base.clone(), l.clone(), (0..n).collect(), (0..n).collect())
    }

    fn validate_shape(&self) -> Result<(), Error> {
        let (np, nm) = (self.plus.size(), self.minus.size());
        check_map("lambda", &self.lam, np, nm)?;
        check_map("rho", &self.rho, nm, np)?;
        if self.minus.base.meet.is_none() {
            return Err(Error::MissingComponent("meet"));
        }
        Ok(())
    }

    #[inline]
    pub fn lam(&self, a: usize) -> usize {
        self.lam[a]
    }

    #[inline]
    pub fn rho(&self, x: usize) -> usize {
        self.rho[x]
    }
}

/// Checks the twistable pair conditions: λ and ρ isotone homomorphisms,
/// `λ∘ρ = id`, `λa ≤ x ⟺ a ≤ ρx`, and `λa ∖ 0 = 0 / λa` when pointed. The
/// residuated-lattice level also requires both sorts to be residuated
/// lattices and ρ to preserve the unit.
pub fn check_twistable_pair(t: &TwistablePair, level: TwistLevel) -> Result<CheckReport, Error> {
    t.validate_shape()?;
    let (p, m) = (&t.plus, &t.minus);
    let ms = &m.base;
    if level == TwistLevel::ResiduatedLattice {
        for (s, what) in [(p, "plus"), (ms, "minus")] {
            if s.unit.is_none() {
                return Err(Error::MissingComponent(if what == "plus" {
                    "plus unit"
                } else {
                    "minus unit"
                }));
            }
            if s.meet.is_none() || s.join.is_none() {
                return Err(Error::MissingComponent(if what == "plus" {
                    "plus lattice"
                } else {
                    "minus lattice"
                }));
            }
        }
    }
    Ok(conclude("twist.pair", || {
        scan_posemigroup(p).map_err(|r| r.scoped("twist.pair.plus"))?;
        scan_posemigroup(ms).map_err(|r| r.scoped("twist.pair.minus"))?;
        scan_residuation(m).map_err(|r| r.scoped("twist.pair.minus"))?;
        let (np, nm) = (p.size(), m.size());
        for a in 0..np {
            for b in 0..np {
                let w = [("a", a), ("b", b)];
                ensure(
                    !p.leq(a, b) || ms.leq(t.lam(a), t.lam(b)),
                    "twist.pair.lambda-isotone",
                    &w,
                    "a ≤ b implies λa ≤ λb",
                )?;
                ensure(
                    t.lam(p.mul(a, b)) == ms.mul(t.lam(a), t.lam(b)),
                    "twist.pair.lambda-homomorphism",
                    &w,
                    "λ(ab) = λa·λb",
                )?;
            }
        }
        for x in 0..nm {
            for y in 0..nm {
                let w = [("x", x), ("y", y)];
                ensure(
                    !ms.leq(x, y) || p.leq(t.rho(x), t.rho(y)),
                    "twist.pair.rho-isotone",
                    &w,
                    "x ≤ y implies ρx ≤ ρy",
                )?;
                ensure(
                    t.rho(ms.mul(x, y)) == p.mul(t.rho(x), t.rho(y)),
                    "twist.pair.rho-homomorphism",
                    &w,
                    "ρ(xy) = ρx·ρy",
                )?;
            }
        }
        for x in 0..nm {
            ensure(t.lam(t.rho(x)) == x, "twist.pair.retraction", &[("x", x)], "λρx = x")?;
        }
        for a in 0..np {
            for x in 0..nm {
                ensure(
                    ms.leq(t.lam(a), x) == p.leq(a, t.rho(x)),
                    "twist.pair.adjunction",
                    &[("a", a), ("x", x)],
                    "λa ≤ x iff a ≤ ρx",
                )?;
            }
        }
        if level == TwistLevel::ResiduatedLattice {
            if compute_residuals(p).is_none() {
                return Err(CheckReport::fail("twist.pair.plus-residuated", &[], "S₊ is residuated"));
            }
            let (u1, u2) = (p.unit.expect("checked"), ms.unit.expect("checked"));
            for a in 0..np {
                ensure(
                    p.mul(u1, a) == a && p.mul(a, u1) == a,
                    "twist.pair.plus-unit",
                    &[("a", a)],
                    "1·a = a = a·1",
                )?;
            }
            for x in 0..nm {
                ensure(
                    ms.mul(u2, x) == x && ms.mul(x, u2) == x,
                    "twist.pair.minus-unit",
                    &[("x", x)],
                    "1·x = x = x·1",
                )?;
            }
            ensure(t.rho(u2) == u1, "twist.pair.rho-unit", &[], "ρ1 = 1")?;
            crate::algebra::scan_lattice_tables(&p.poset, p.meet.as_ref(), p.join.as_ref(), "twist.pair.plus")?;
            crate::algebra::scan_lattice_tables(&ms.poset, ms.meet.as_ref(), ms.join.as_ref(), "twist.pair.minus")?;
        } else {
            crate::algebra::scan_lattice_tables(&ms.poset, ms.meet.as_ref(), None, "twist.pair.minus")?;
        }
        if let Some(z) = t.point {
            for a in 0..np {
                let la = t.lam(a);
                ensure(
                    m.under(la, z) == m.over(z, la),
                    "twist.pair.cyclic",
                    &[("a", a)],
                    "λa ∖ 0 = 0 / λa",
                )?;
            }
        }
        Ok(())
    }))
}

/// `S₊` acting on `S₋^∂` by `a∗x = x/λa`, `x∗a = λa∖x`, with residuals
/// `x∗⟍y = ρ(x/y)`, `a⟍∗x = x·λa`, `y/∗x = ρ(y∖x)`, `x∗/a = λa·x`.
pub fn induced_bimodule(t: &TwistablePair) -> Result<Bimodule, Error> {
    t.validate_shape()?;
    let m = &t.minus;
    let ms = &m.base;
    let (np, nm) = (t.plus.size(), m.size());
    let meet = ms.meet.clone().ok_or(Error::MissingComponent("meet"))?;
    let lact = Table::from_fn(np, nm, |a, x| m.over(x, t.lam(a)));
    let ract = Table::from_fn(nm, np, |x, a| m.under(t.lam(a), x));
    let residuals = ActionResiduals {
        left_under: Table::from_fn(np, nm, |a, x| ms.mul(x, t.lam(a))),
        left_over: Table::square(nm, |y, x| t.rho(m.under(y, x))),
        right_under: Table::square(nm, |x, y| t.rho(m.over(x, y))),
        right_over: Table::from_fn(nm, np, |x, a| ms.mul(t.lam(a), x)),
    };
    let mut b = Bimodule::new(t.plus.clone(), ms.poset.dualize(), meet, lact, ract)?.with_residuals(residuals)?;
    if let Some(j) = &ms.join {
        b = b.with_module_meet(j.clone())?;
    }
    if let Some(z) = t.point {
        b = b.with_point(z)?;
    }
    Ok(b)
}

/// `⊸⟨a,x⟩ = ⟨ρx, λa⟩` on a space of pairs, if the space is closed under it.
fn negation_on(t: &TwistablePair, space: &PairSpace) -> Option<Vec<usize>> {
    (0..space.len())
        .map(|i| {
            let (a, x) = space.pair(i);
            space.get(t.rho(x), t.lam(a))
        })
        .collect()
}

fn with_negation(t: &TwistablePair, mut n: NagataStructure) -> Result<NagataStructure, Error> {
    let space = n.space.as_ref().expect("product structures carry coordinates");
    let neg = negation_on(t, space).ok_or(Error::NotClosed("negation"))?;
    n.negation = Some(EndoMap::new(&n.carrier.poset, neg)?);
    Ok(n)
}

/// The twist product: the Nagata product of the induced bimodule with `⊸`.
pub fn twist_product(t: &TwistablePair) -> Result<NagataStructure, Error> {
    with_negation(t, nagata_structure(&induced_bimodule(t)?, false)?)
}

/// The restricted twist product on `{⟨a,x⟩ : x·λa ≤ 0, λa·x ≤ 0}`.
pub fn restricted_twist_product(t: &TwistablePair) -> Result<NagataStructure, Error> {
    if t.point.is_none() {
        return Err(Error::MissingComponent("point"));
    }
    with_negation(t, nagata_structure(&induced_bimodule(t)?, true)?)
}

/// The strong negation axioms, plus the three residuated-lattice equations
/// when the carrier has full residuals.
pub fn check_strong_negation(n: &NagataStructure) -> Result<CheckReport, Error> {
    let neg = n.negation.as_ref().ok_or(Error::MissingComponent("negation"))?;
    let ng = |x: usize| neg.apply(x);
    Ok(conclude("twist.negation", || {
        let size = n.size();
        for x in 0..size {
            let w = [("x", x)];
            let nnx = ng(ng(x));
            ensure(n.leq(x, nnx), "twist.negation.double", &w, "x ≤ ⊸⊸x")?;
            ensure(ng(nnx) == ng(x), "twist.negation.triple", &w, "⊸⊸⊸x = ⊸x")?;
            ensure(ng(n.s(ng(x))) == n.g(x), "twist.negation.sigma", &w, "⊸σ⊸x = γx")?;
            ensure(
                ng(n.g(ng(x))) == ng(ng(n.s(x))),
                "twist.negation.gamma",
                &w,
                "⊸γ⊸x = ⊸⊸σx",
            )?;
            ensure(
                ng(ng(n.s(x))) == n.s(nnx),
                "twist.negation.sigma-double",
                &w,
                "⊸⊸σx = σ⊸⊸x",
            )?;
        }
        let g = |v: Option<usize>| v.map(|k| n.g(k));
        for x in 0..size {
            for y in 0..size {
                let w = [("x", x), ("y", y)];
                let lhs = g(n.gl(ng(x), y));
                ensure(
                    lhs.is_some() && lhs == g(n.gr(x, ng(y))),
                    "twist.negation.residual-swap",
                    &w,
                    "γ(⊸x ∖γ γy) = γ(γx /γ ⊸y)",
                )?;
                let lhs = g(n.gl(ng(ng(y)), ng(x)));
                ensure(
                    lhs == Some(n.g(ng(n.mul(x, y)))),
                    "twist.negation.product",
                    &w,
                    "γ(⊸⊸y ∖γ γ⊸x) = γ(⊸(x·y))",
                )?;
                let rhs = n.gl(ng(y), x).map(|k| n.s(ng(k)));
                ensure(
                    Some(n.mul(n.s(ng(x)), n.s(ng(y)))) == rhs,
                    "twist.negation.sigma-product",
                    &w,
                    "(σ⊸x)(σ⊸y) = σ⊸(⊸y ∖γ γx)",
                )?;
            }
        }
        if let Some((l, r)) = &n.residuals {
            for x in 0..size {
                for y in 0..size {
                    let w = [("x", x), ("y", y)];
                    ensure(
                        n.g(l.get(ng(x), y)) == n.g(r.get(x, ng(y))),
                        "twist.negation.lattice-residual-swap",
                        &w,
                        "γ(⊸x ∖ y) = γ(x / ⊸y)",
                    )?;
                    ensure(
                        n.g(l.get(ng(ng(y)), ng(x))) == n.g(ng(n.mul(x, y))),
                        "twist.negation.lattice-product",
                        &w,
                        "γ(⊸⊸y ∖ ⊸x) = γ(⊸(xy))",
                    )?;
                    ensure(
                        n.mul(n.s(ng(x)), n.s(ng(y))) == n.s(ng(l.get(ng(y), x))),
                        "twist.negation.lattice-sigma-product",
                        &w,
                        "(σ⊸x)(σ⊸y) = σ⊸(⊸y ∖ x)",
                    )?;
                }
            }
        }
        Ok(())
    }))
}

/// `⊸` is antitone, and with a unit, `(⊸1)/x = ⊸x = x∖(⊸1)`.
pub fn check_negation_invariants(n: &NagataStructure) -> Result<CheckReport, Error> {
    let neg = n.negation.as_ref().ok_or(Error::MissingComponent("negation"))?;
    Ok(conclude("twist.negation-invariants", || {
        for x in 0..n.size() {
            for y in 0..n.size() {
                ensure(
                    !n.leq(x, y) || n.leq(neg.apply(y), neg.apply(x)),
                    "twist.negation-invariants.antitone",
                    &[("x", x), ("y", y)],
                    "x ≤ y implies ⊸y ≤ ⊸x",
                )?;
            }
        }
        if let (Some(u), Some((l, r))) = (n.carrier.unit, &n.residuals) {
            let nu = neg.apply(u);
            for x in 0..n.size() {
                ensure(
                    r.get(nu, x) == neg.apply(x) && l.get(x, nu) == neg.apply(x),
                    "twist.negation-invariants.constant",
                    &[("x", x)],
                    "(⊸1)/x = ⊸x = x∖(⊸1)",
                )?;
            }
        }
        Ok(())
    }))
}

/// A pair recovered from a Nagata structure with strong negation, with the
/// carrier elements its sorts stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Untwisted {
    pub pair: TwistablePair,
    /// `N_σ`, indexing `S₊`.
    pub plus: Vec<usize>,
    /// `N_γ`, indexing `S₋` (whose order is the dual of the carrier's).
    pub minus: Vec<usize>,
}

/// `S₊ = N_σ`, `S₋ = (N_γ)^∂` with `x·₋y = γ(⊸y ∖γ γx)`, `x∖₋y = γ(y·⊸x)`,
/// `x/₋y = γ(⊸y·x)`, meet `⊔`, `λ = γ∘⊸`, `ρ = σ∘⊸`.
pub fn untwist(n: &NagataStructure) -> Result<Untwisted, Error> {
    let neg = n.negation.as_ref().ok_or(Error::MissingComponent("negation"))?;
    for r in [check_strong_negation(n)?, check_nagata_posemigroup(n, false)?] {
        if !r.passed {
            return Err(Error::AxiomFailure(r));
        }
    }
    let plus_elems = n.sigma_image();
    let minus_elems = n.gamma_image();
    let (plus, _) = n.carrier.restrict(&plus_elems)?;
    let mut pidx = vec![usize::MAX; n.size()];
    for (k, &e) in plus_elems.iter().enumerate() {
        pidx[e] = k;
    }
    let mut midx = vec![usize::MAX; n.size()];
    for (k, &e) in minus_elems.iter().enumerate() {
        midx[e] = k;
    }
    let nm = minus_elems.len();
    let ng = |x: usize| neg.apply(x);
    let gl = |m: usize, k: usize| n.gl(m, k).expect("γ-residuals checked");
    let order = n.carrier.poset.sub_poset(&minus_elems).dualize();
    let mul = Table::square(nm, |x, y| midx[n.g(gl(ng(minus_elems[y]), minus_elems[x]))]);
    let mut base = Posemigroup::new(order, mul)?;
    base.meet = Some(Table::square(nm, |x, y| {
        midx[n.gj(minus_elems[x], minus_elems[y]).expect("γ-joins checked")]
    }));
    base.join = base.poset.join_table();
    let lam: Vec<usize> = plus_elems.iter().map(|&a| midx[n.g(ng(a))]).collect();
    let rho: Vec<usize> = minus_elems.iter().map(|&x| pidx[n.s(ng(x))]).collect();
    base.unit = plus.unit.map(|u| lam[u]);
    let (me, mm) = (&minus_elems, &midx);
    let lres = Table::square(nm, |x, y| mm[n.g(n.mul(me[y], ng(me[x])))]);
    let rres = Table::square(nm, |x, y| mm[n.g(n.mul(ng(me[y]), me[x]))]);
    let minus = ResiduatedStructure::new(base, lres, rres)?;
    let mut pair = TwistablePair::new(plus, minus, lam, rho)?;
    pair.point = Some(midx[n.point]);
    Ok(Untwisted {
        pair,
        plus: plus_elems,
        minus: minus_elems,
    })
}

/// A twistable pair over the disjoint union `S₊ ⊔ S₋`, `S₊` first.
pub fn pair_structure(t: &TwistablePair) -> FiniteStructure {
    let (np, nm) = (t.plus.size(), t.minus.size());
    let n = np + nm;
    let (p, ms) = (&t.plus, &t.minus.base);
    let op = |f: &dyn Fn(usize, usize) -> Option<usize>| PartialTable::from_fn(n, n, f);
    let both_minus = |i: usize, j: usize| i >= np && j >= np;
    let mut st = FiniteStructure::new(n)
        .with_predicate((0..n).map(|x| x < np).collect())
        .with_relation(
            (0..n * n)
                .map(|k| {
                    let (i, j) = (k / n, k % n);
                    match (i < np, j < np) {
                        (true, true) => p.leq(i, j),
                        (false, false) => ms.leq(i - np, j - np),
                        _ => false,
                    }
                })
                .collect(),
        )
        .with_operation(op(&|i, j| (i < np && j < np).then(|| p.mul(i, j))))
        .with_operation(op(&|i, j| both_minus(i, j).then(|| np + ms.mul(i - np, j - np))))
        .with_operation(op(&|i, j| both_minus(i, j).then(|| np + t.minus.under(i - np, j - np))))
        .with_operation(op(&|i, j| both_minus(i, j).then(|| np + t.minus.over(i - np, j - np))))
        .with_unary((0..n).map(|i| (i < np).then(|| np + t.lam(i))).collect())
        .with_unary((0..n).map(|i| (i >= np).then(|| t.rho(i - np))).collect());
    if let Some(z) = t.point {
        st = st.with_constant(np + z);
    }
    st
}

/// Checks that `⟨fp, fm⟩` is an isomorphism of twistable pairs: bijective on
/// both sorts, an order isomorphism preserving products and residuals, and
/// commuting with λ and ρ and the point.
pub fn check_pair_iso(a: &TwistablePair, b: &TwistablePair, fp: &[usize], fm: &[usize]) -> CheckReport {
    conclude("twist.pair-iso", || {
        let (np, nm) = (a.plus.size(), a.minus.size());
        ensure(
            np == b.plus.size() && nm == b.minus.size() && fp.len() == np && fm.len() == nm,
            "twist.pair-iso.sizes",
            &[],
            "both sorts have matching sizes",
        )?;
        for (k, f) in [fp, fm].iter().enumerate() {
            let mut seen = vec![false; f.len()];
            for (i, &v) in f.iter().enumerate() {
                ensure(
                    v < seen.len() && !seen[v],
                    "twist.pair-iso.bijective",
                    &[("sort", k), ("x", i)],
                    "the map is a bijection",
                )?;
                seen[v] = true;
            }
        }
        for x in 0..np {
            for y in 0..np {
                let w = [("a", x), ("b", y)];
                ensure(
                    a.plus.leq(x, y) == b.plus.leq(fp[x], fp[y]),
                    "twist.pair-iso.plus-order",
                    &w,
                    "a ≤ b iff fa ≤ fb",
                )?;
                ensure(
                    fp[a.plus.mul(x, y)] == b.plus.mul(fp[x], fp[y]),
                    "twist.pair-iso.plus-mul",
                    &w,
                    "f(ab) = fa·fb",
                )?;
            }
            ensure(
                fm[a.lam(x)] == b.lam(fp[x]),
                "twist.pair-iso.lambda",
                &[("a", x)],
                "f(λa) = λ(fa)",
            )?;
        }
        let (ma, mb) = (&a.minus, &b.minus);
        for x in 0..nm {
            for y in 0..nm {
                let w = [("x", x), ("y", y)];
                ensure(
                    ma.base.leq(x, y) == mb.base.leq(fm[x], fm[y]),
                    "twist.pair-iso.minus-order",
                    &w,
                    "x ≤ y iff fx ≤ fy",
                )?;
                ensure(
                    fm[ma.base.mul(x, y)] == mb.base.mul(fm[x], fm[y]),
                    "twist.pair-iso.minus-mul",
                    &w,
                    "f(xy) = fx·fy",
                )?;
                ensure(
                    fm[ma.under(x, y)] == mb.under(fm[x], fm[y]),
                    "twist.pair-iso.minus-under",
                    &w,
                    "f(x∖y) = fx∖fy",
                )?;
                ensure(
                    fm[ma.over(x, y)] == mb.over(fm[x], fm[y]),
                    "twist.pair-iso.minus-over",
                    &w,
                    "f(x/y) = fx/fy",
                )?;
            }
            ensure(
                fp[a.rho(x)] == b.rho(fm[x]),
                "twist.pair-iso.rho",
                &[("x", x)],
                "f(ρx) = ρ(fx)",
            )?;
        }
        ensure(
            a.point.map(|z| fm[z]) == b.point,
            "twist.pair-iso.point",
            &[],
            "f(0) = 0",
        )
    })
}

/// `t ≅ untwist(restricted_twist_product(t))`, first along the candidate
/// `a ↦ ⟨a, λa∖0⟩`, `x ↦ ⟨ρ(0/x), x⟩`, then by generic search.
pub fn check_twist_round_trip(t: &TwistablePair) -> Result<CheckReport, Error> {
    let n = restricted_twist_product(t)?;
    let u = untwist(&n)?;
    let sp = n.space.as_ref().expect("product");
    let z = t.point.expect("restricted product requires a point");
    let fp: Option<Vec<usize>> = (0..t.plus.size())
        .map(|a| {
            sp.get(a, t.minus.under(t.lam(a), z))
                .and_then(|e| u.plus.binary_search(&e).ok())
        })
        .collect();
    let fm: Option<Vec<usize>> = (0..t.minus.size())
        .map(|x| {
            sp.get(t.rho(t.minus.over(z, x)), x)
                .and_then(|e| u.minus.binary_search(&e).ok())
        })
        .collect();
    if let (Some(fp), Some(fm)) = (fp, fm) {
        let r = check_pair_iso(t, &u.pair, &fp, &fm);
        if r.passed {
            return Ok(CheckReport::pass("twist.round-trip", "isomorphic along ⟨ε₊, ε₋⟩"));
        }
    }
    let (a, b) = (pair_structure(t), pair_structure(&u.pair));
    Ok(match find_isomorphism(&a, &b)? {
        Some(_) => CheckReport::pass("twist.round-trip", "isomorphic by search"),
        None => CheckReport::fail("twist.round-trip", &[], "no isomorphism of twistable pairs"),
    })
}

/// The unit `m ↦ ⟨σm, γm⟩` into the restricted twist product of the
/// untwisting preserves `⊸`, the product and the order.
pub fn check_unit_preserves_negation(n: &NagataStructure) -> Result<CheckReport, Error> {
    let u = untwist(n)?;
    let target = restricted_twist_product(&u.pair)?;
    let sp = target.space.as_ref().expect("product");
    let image: Vec<Option<usize>> = (0..n.size())
        .map(|m| {
            let a = u.plus.binary_search(&n.s(m)).ok()?;
            let x = u.minus.binary_search(&n.g(m)).ok()?;
            sp.get(a, x)
        })
        .collect();
    Ok(conclude("twist.unit", || {
        for (m, v) in image.iter().enumerate() {
            ensure(
                v.is_some(),
                "twist.unit.membership",
                &[("m", m)],
                "⟨σm, γm⟩ lies in the restricted twist product",
            )?;
        }
        let f: Vec<usize> = image.iter().map(|v| v.expect("checked")).collect();
        for x in 0..n.size() {
            ensure(
                f[n.neg(x)] == target.neg(f[x]),
                "twist.unit.negation",
                &[("x", x)],
                "u(⊸x) = ⊸u(x)",
            )?;
            for y in 0..n.size() {
                let w = [("x", x), ("y", y)];
                ensure(
                    f[n.mul(x, y)] == target.mul(f[x], f[y]),
                    "twist.unit.mul",
                    &w,
                    "u(xy) = ux∘uy",
                )?;
                ensure(
                    n.leq(x, y) == target.leq(f[x], f[y]),
                    "twist.unit.order",
                    &w,
                    "x ≤ y iff ux ≤ uy",
                )?;
            }
        }
        Ok(())
    }))
}

/// `(⊸⊸ = id on the full twist product) ⟺ (ρ∘λ = id on S₊)`, with the two
/// sides computed independently.
pub fn involutive_sides(t: &TwistablePair) -> (bool, bool) {
    let space = PairSpace::new(t.plus.size(), t.minus.size(), |_, _| true);
    let neg = negation_on(t, &space).expect("the full product is closed under ⊸");
    let double_negation_is_identity = (0..space.len()).all(|i| neg[neg[i]] == i);
    let rho_lambda_is_identity = (0..t.plus.size()).all(|a| t.rho(t.lam(a)) == a);
    (double_negation_is_identity, rho_lambda_is_identity)
}

pub fn check_involutive_collapse(t: &TwistablePair) -> CheckReport {
    let (nn, rl) = involutive_sides(t);
    let detail = alloc::format!("⊸⊸ = id: {nn}; ρλ = id: {rl}");
    if nn == rl {
        CheckReport::pass("twist.involutive", detail)
    } else {
        CheckReport::fail("twist.involutive", &[], detail)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::tests::{chain_meet_monoid, lukasiewicz};
    use crate::bimodule::{check_bimodule, division_bimodule, BimoduleLevel};
    use crate::nagata::{check_nagata_lattice, check_unit_map, unit_map};

    fn rl(s: Posemigroup) -> ResiduatedStructure {
        compute_residuals(&s).unwrap()
    }

    /// Gödel 3-chain over the Boolean 2-chain, collapsing the middle upward.
    pub(crate) fn collapsing_pair() -> TwistablePair {
        TwistablePair::new(
            chain_meet_monoid(3),
            rl(chain_meet_monoid(2)),
            vec![0, 1, 1],
            vec![0, 2],
        )
        .unwrap()
    }

    #[test]
    fn identity_pair_passes_every_level() {
        let t = TwistablePair::identity(&rl(chain_meet_monoid(2)))
            .unwrap()
            .with_point(0)
            .unwrap();
        assert!(check_twistable_pair(&t, TwistLevel::Posemigroup).unwrap().passed);
        assert!(check_twistable_pair(&t, TwistLevel::ResiduatedLattice).unwrap().passed);
    }

    #[test]
    fn collapsing_pair_and_broken_retraction() {
        let t = collapsing_pair();
        // a ≤ ρλa on the middle element: ρλm = ρ1 = top.
        assert_eq!(t.rho(t.lam(1)), 2);
        assert!(check_twistable_pair(&t, TwistLevel::Posemigroup).unwrap().passed);
        let mut bad = t.clone();
        bad.rho[1] = 0;
        let r = check_twistable_pair(&bad, TwistLevel::Posemigroup).unwrap();
        assert_eq!(r.axiom, "twist.pair.retraction");
        assert_eq!(r.witness[0].1, 1);
    }

    #[test]
    fn shape_errors() {
        let t = collapsing_pair();
        let e = TwistablePair::new(t.plus.clone(), t.minus.clone(), vec![0, 1], t.rho.clone());
        assert!(matches!(e, Err(Error::DimensionMismatch { what: "lambda", .. })));
        let e = TwistablePair::new(t.plus.clone(), t.minus.clone(), t.lam.clone(), vec![0, 3]);
        assert!(matches!(e, Err(Error::IndexOutOfRange { what: "rho", .. })));
    }

    #[test]
    fn identity_pair_induces_the_division_bimodule() {
        for s in [chain_meet_monoid(2), lukasiewicz(3)] {
            let l = rl(s);
            let t = TwistablePair::identity(&l).unwrap().with_point(0).unwrap();
            assert_eq!(induced_bimodule(&t).unwrap(), division_bimodule(&l, Some(0)).unwrap());
        }
    }

    #[test]
    fn collapsing_pair_bimodule_is_residuated() {
        let b = induced_bimodule(&collapsing_pair()).unwrap();
        assert!(check_bimodule(&b, BimoduleLevel::Residuated).unwrap().passed);
        let computed = crate::bimodule::compute_action_residuals(&b).unwrap();
        assert_eq!(Some(computed), b.residuals);
    }

    #[test]
    fn two_chain_restricted_twist_product() {
        let t = TwistablePair::identity(&rl(chain_meet_monoid(2)))
            .unwrap()
            .with_point(0)
            .unwrap();
        let n = restricted_twist_product(&t).unwrap();
        let sp = n.space.as_ref().unwrap();
        assert_eq!(sp.pairs(), &[(0, 0), (0, 1), (1, 0)]);
        // ⊸⟨a,x⟩ = ⟨x, a⟩ since λ = ρ = id.
        for (i, &(a, x)) in sp.pairs().iter().enumerate() {
            assert_eq!(sp.pair(n.neg(i)), (x, a));
            assert_eq!(n.neg(n.neg(i)), i);
        }
        assert_eq!(n.carrier.unit.map(|u| sp.pair(u)), Some((1, 0)));
        assert!(check_strong_negation(&n).unwrap().passed);
        assert!(check_negation_invariants(&n).unwrap().passed);
    }

    #[test]
    fn twist_sigma_gamma_formulas() {
        let t = TwistablePair::identity(&rl(lukasiewicz(3)))
            .unwrap()
            .with_point(0)
            .unwrap();
        let n = restricted_twist_product(&t).unwrap();
        let sp = n.space.as_ref().unwrap();
        let m = &t.minus;
        for i in 0..n.size() {
            let (a, x) = sp.pair(i);
            assert_eq!(sp.pair(n.s(i)), (a, m.under(t.lam(a), 0)));
            assert_eq!(sp.pair(n.g(i)), (t.rho(m.over(0, x)), x));
            // Restricted membership: x·λa ≤ 0 and λa·x ≤ 0.
            assert!(m.base.leq(m.base.mul(x, t.lam(a)), 0) && m.base.leq(m.base.mul(t.lam(a), x), 0));
        }
    }

    #[test]
    fn identity_negation_fails_sigma_axiom() {
        let t = TwistablePair::identity(&rl(chain_meet_monoid(2)))
            .unwrap()
            .with_point(0)
            .unwrap();
        let mut n = restricted_twist_product(&t).unwrap();
        n.negation = Some(EndoMap::identity(3));
        let r = check_strong_negation(&n).unwrap();
        assert_eq!(r.axiom, "twist.negation.sigma");
    }

    #[test]
    fn involutive_collapse_examples() {
        let id = TwistablePair::identity(&rl(chain_meet_monoid(2))).unwrap();
        assert_eq!(involutive_sides(&id), (true, true));
        let c = collapsing_pair();
        assert_eq!(involutive_sides(&c), (false, false));
        // Witness ⟨m, 0⟩: ⊸⊸⟨m,0⟩ = ⟨ρλm, λρ0⟩ = ⟨1, 0⟩.
        let (a, x) = (1, 0);
        assert_eq!((c.rho(c.lam(a)), c.lam(c.rho(x))), (2, 0));
        assert!(check_involutive_collapse(&c).passed);
    }

    #[test]
    fn round_trips() {
        let pairs = [
            TwistablePair::identity(&rl(chain_meet_monoid(2)))
                .unwrap()
                .with_point(0)
                .unwrap(),
            TwistablePair::identity(&rl(lukasiewicz(3)))
                .unwrap()
                .with_point(0)
                .unwrap(),
            collapsing_pair().with_point(0).unwrap(),
            collapsing_pair().with_point(1).unwrap(),
        ];
        for t in pairs {
            assert!(check_twistable_pair(&t, TwistLevel::Posemigroup).unwrap().passed);
            let n = restricted_twist_product(&t).unwrap();
            for r in [
                check_nagata_posemigroup(&n, true).unwrap(),
                check_nagata_lattice(&n, true).unwrap(),
                check_strong_negation(&n).unwrap(),
                check_negation_invariants(&n).unwrap(),
                check_twist_round_trip(&t).unwrap(),
                check_unit_preserves_negation(&n).unwrap(),
                check_unit_map(&n, &unit_map(&n, true).unwrap()),
            ] {
                assert!(r.passed, "{r}");
            }
            let u = untwist(&n).unwrap();
            assert!(check_twistable_pair(&u.pair, TwistLevel::Posemigroup).unwrap().passed);
            for (k, &a) in u.plus.iter().enumerate() {
                assert_eq!(u.minus[u.pair.lam(k)], n.g(n.neg(a)));
            }
            for (k, &x) in u.minus.iter().enumerate() {
                assert_eq!(u.plus[u.pair.rho(k)], n.s(n.neg(x)));
            }
        }
    }

    #[test]
    fn full_twist_products() {
        for t in [
            TwistablePair::identity(&rl(lukasiewicz(3)))
                .unwrap()
                .with_point(0)
                .unwrap(),
            collapsing_pair().with_point(0).unwrap(),
        ] {
            let n = twist_product(&t).unwrap();
            for r in [
                check_strong_negation(&n).unwrap(),
                check_nagata_posemigroup(&n, false).unwrap(),
            ] {
                assert!(r.passed, "{r}");
            }
        }
    }

    #[test]
    fn singleton_pair() {
        let t = TwistablePair::identity(&rl(chain_meet_monoid(1)))
            .unwrap()
            .with_point(0)
            .unwrap();
        let n = restricted_twist_product(&t).unwrap();
        assert_eq!(n.size(), 1);
        let u = untwist(&n).unwrap();
        assert_eq!((u.pair.plus.size(), u.pair.minus.size()), (1, 1));
        assert!(check_involutive_collapse(&t).passed);
    }
}
