//! Commutative bimonoids, complements, and the bimonoid of fractions of a
//! Boolean-pointed Brouwerian algebra, built inside its restricted twist
//! product as `((B⋈₀)_μ)_ν`.

use alloc::vec::Vec;

use crate::algebra::{check_boolean_pointed, BrouwerianAlgebra, Posemigroup};
use crate::error::Error;
use crate::nagata::NagataStructure;
use crate::order::{check_poset, classify_operator, EndoMap, Poset};
use crate::report::{conclude, ensure, CheckReport, Verdict};
use crate::table::Table;
use crate::twist::{restricted_twist_product, TwistablePair};

/// A poset with a multiplication `·` (unit `1`) and an addition `+`
/// (unit `0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bimonoid {
    pub poset: Poset,
    pub mul: Table,
    pub one: usize,
    pub add: Table,
    pub zero: usize,
}

impl Bimonoid {
    pub fn new(poset: Poset, mul: Table, one: usize, add: Table, zero: usize) -> Result<Self, Error> {
        let n = poset.size();
        mul.expect_shape("mul", n, n, n)?;
        add.expect_shape("add", n, n, n)?;
        for (what, c) in [("one", one), ("zero", zero)] {
            if c >= n {
                return Err(Error::IndexOutOfRange {
                    what,
                    index: c,
                    size: n,
                });
            }
        }
        Ok(Bimonoid {
            poset,
            mul,
            one,
            add,
            zero,
        })
    }

    /// A bounded lattice with `· = ∧`, `+ = ∨`.
    pub fn from_lattice(poset: Poset) -> Result<Self, Error> {
        let meet = poset.meet_table().ok_or(Error::MissingComponent("meet"))?;
        let join = poset.join_table().ok_or(Error::MissingComponent("join"))?;
        let top = poset.top().ok_or(Error::MissingComponent("top"))?;
        let bottom = poset.bottom().ok_or(Error::MissingComponent("bottom"))?;
        Bimonoid::new(poset, meet, top, join, bottom)
    }

    /// A monoid with `+ := ·` and `0 := 1`.
    pub fn from_monoid(m: &Posemigroup) -> Result<Self, Error> {
        let u = m.unit.ok_or(Error::MissingComponent("unit"))?;
        Bimonoid::new(m.poset.clone(), m.mul.clone(), u, m.mul.clone(), u)
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul.get(x, y)
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add.get(x, y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }
}

fn scan_commutative_monoid(b: &Bimonoid, op: &Table, unit: usize, name: &str) -> Verdict {
    let n = b.size();
    let ax = |law: &str| alloc::format!("bimonoid.{name}.{law}");
    for x in 0..n {
        ensure(op.get(unit, x) == x, &ax("unit"), &[("x", x)], "the unit is neutral")?;
        for y in 0..n {
            ensure(
                op.get(x, y) == op.get(y, x),
                &ax("commutativity"),
                &[("x", x), ("y", y)],
                "x∘y = y∘x",
            )?;
            for z in 0..n {
                ensure(
                    op.get(op.get(x, y), z) == op.get(x, op.get(y, z)),
                    &ax("associativity"),
                    &[("x", x), ("y", y), ("z", z)],
                    "(x∘y)∘z = x∘(y∘z)",
                )?;
                ensure(
                    !b.leq(x, y) || b.leq(op.get(x, z), op.get(y, z)),
                    &ax("isotone"),
                    &[("x", x), ("y", y), ("z", z)],
                    "x ≤ y implies x∘z ≤ y∘z",
                )?;
            }
        }
    }
    Ok(())
}

/// Both operations commutative, associative, isotone and unital, and
/// `x·(y+z) ≤ (x·y)+z`.
pub fn check_bimonoid(b: &Bimonoid) -> CheckReport {
    conclude("bimonoid", || {
        check_poset(&b.poset).into_verdict()?;
        scan_commutative_monoid(b, &b.mul, b.one, "mul")?;
        scan_commutative_monoid(b, &b.add, b.zero, "add")?;
        let n = b.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ensure(
                        b.leq(b.mul(x, b.add(y, z)), b.add(b.mul(x, y), z)),
                        "bimonoid.linking",
                        &[("x", x), ("y", y), ("z", z)],
                        "x·(y+z) ≤ (x·y)+z",
                    )?;
                }
            }
        }
        Ok(())
    })
}

/// The `y` with `x·y ≤ 0` and `1 ≤ x+y`, if there is one.
pub fn complement_of(b: &Bimonoid, x: usize) -> Result<Option<usize>, Error> {
    let mut found = None;
    for y in 0..b.size() {
        if b.leq(b.mul(x, y), b.zero) && b.leq(b.one, b.add(x, y)) {
            if let Some(first) = found {
                return Err(Error::NonUniqueComplement {
                    element: x,
                    first,
                    second: y,
                });
            }
            found = Some(y);
        }
    }
    Ok(found)
}

/// Complements of every element, or `NotComplemented` at the first element
/// without one.
pub fn complements(b: &Bimonoid) -> Result<Vec<usize>, Error> {
    (0..b.size())
        .map(|x| complement_of(b, x)?.ok_or(Error::NotComplemented(x)))
        .collect()
}

/// The passage to a commutative involutive residuated pomonoid with
/// `x→y := x̄ + y`, and back via `x̄ = x→0`, `x+y = (ȳ·x̄)‾`.
pub fn check_term_equivalence(b: &Bimonoid) -> Result<CheckReport, Error> {
    let c = complements(b)?;
    let imp = |x: usize, y: usize| b.add(c[x], y);
    Ok(conclude("term-equivalence", || {
        let n = b.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ensure(
                        b.leq(b.mul(x, y), z) == b.leq(y, imp(x, z)),
                        "term-equivalence.residuation",
                        &[("x", x), ("y", y), ("z", z)],
                        "x·y ≤ z iff y ≤ x→z",
                    )?;
                }
            }
        }
        for x in 0..n {
            ensure(
                c[x] == imp(x, b.zero),
                "term-equivalence.negation",
                &[("x", x)],
                "x̄ = x→0",
            )?;
            ensure(c[c[x]] == x, "term-equivalence.involution", &[("x", x)], "x̄̄ = x")?;
            for y in 0..n {
                ensure(
                    b.add(x, y) == c[b.mul(c[y], c[x])],
                    "term-equivalence.addition",
                    &[("x", x), ("y", y)],
                    "x+y = (ȳ·x̄)‾",
                )?;
            }
        }
        Ok(())
    }))
}

/// `· = ∧`, `1 = ⊤`, `x+y = (0→(x∧y)) ∧ (x∨y)`, `0` the point.
pub fn bimonoid_of_brouwerian(b: &BrouwerianAlgebra) -> Result<Bimonoid, Error> {
    let z = b.point.ok_or(Error::MissingComponent("point"))?;
    if b.lattice.join.is_none() {
        return Err(Error::MissingComponent("join"));
    }
    let n = b.size();
    let add = Table::square(n, |x, y| b.meet(b.imp(z, b.meet(x, y)), b.join(x, y)));
    Bimonoid::new(b.lattice.poset.clone(), b.lattice.mul.clone(), b.top(), add, z)
}

/// The three arithmetic lemmas of Boolean-pointed Brouwerian algebras:
/// `0∧a = 0∧b ∧ ¬a = ¬b ⇒ a = b`, `¬a→a = a`, `a+b = (¬a→b)∧(¬b→a)`.
pub fn brouwerian_lemma_suite(b: &BrouwerianAlgebra) -> Result<CheckReport, Error> {
    let z = b.point.ok_or(Error::MissingComponent("point"))?;
    let bm = bimonoid_of_brouwerian(b)?;
    Ok(conclude("brouwerian.lemmas", || {
        let n = b.size();
        for a in 0..n {
            ensure(
                b.imp(b.neg(a), a) == a,
                "brouwerian.lemmas.double-negation-implication",
                &[("a", a)],
                "¬a→a = a",
            )?;
            for c in 0..n {
                let w = [("a", a), ("b", c)];
                ensure(
                    !(b.meet(z, a) == b.meet(z, c) && b.neg(a) == b.neg(c)) || a == c,
                    "brouwerian.lemmas.separation",
                    &w,
                    "0∧a = 0∧b and ¬a = ¬b imply a = b",
                )?;
                ensure(
                    bm.add(a, c) == b.meet(b.imp(b.neg(a), c), b.imp(b.neg(c), a)),
                    "brouwerian.lemmas.addition",
                    &w,
                    "a+b = (¬a→b)∧(¬b→a)",
                )?;
            }
        }
        Ok(())
    }))
}

/// The restricted twist product `B⋈₀` of the identity pair over `B`, after
/// checking that `B` is Boolean-pointed.
pub fn brouwerian_twist(b: &BrouwerianAlgebra) -> Result<NagataStructure, Error> {
    let r = check_boolean_pointed(b)?;
    if !r.passed {
        return Err(Error::NotBooleanPointed(r.witness.first().map_or(0, |w| w.1)));
    }
    let z = b.point.expect("checked");
    let pair = TwistablePair::identity(&b.as_residuated())?.with_point(z)?;
    restricted_twist_product(&pair)
}

fn pair_index(tw: &NagataStructure, a: usize, x: usize) -> Option<usize> {
    tw.space.as_ref().expect("twist products carry coordinates").get(a, x)
}

fn pair_of(tw: &NagataStructure, i: usize) -> (usize, usize) {
    tw.space.as_ref().expect("twist products carry coordinates").pair(i)
}

/// `ι_B a = ⟨a, ¬a⟩` as an element of `B⋈₀`.
pub fn embed(b: &BrouwerianAlgebra, tw: &NagataStructure, a: usize) -> usize {
    pair_index(tw, a, b.neg(a)).expect("⟨a, ¬a⟩ lies in the restricted universe")
}

/// `μ⟨a,b⟩ = ⟨a, a→b⟩` on `B⋈₀`.
pub fn mu_map(b: &BrouwerianAlgebra, tw: &NagataStructure) -> Result<EndoMap, Error> {
    let table = (0..tw.size())
        .map(|i| {
            let (a, x) = pair_of(tw, i);
            pair_index(tw, a, b.imp(a, x)).ok_or(Error::NotClosed("mu"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    EndoMap::new(&tw.carrier.poset, table)
}

/// The μ-fixed elements of `B⋈₀` (as indices of `tw`) with the inherited
/// order and product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuImage {
    pub elems: Vec<usize>,
    pub algebra: Posemigroup,
}

pub fn mu_image(b: &BrouwerianAlgebra, tw: &NagataStructure) -> Result<MuImage, Error> {
    let elems = mu_map(b, tw)?.fixpoints();
    let (algebra, _) = tw.carrier.restrict(&elems)?;
    Ok(MuImage { elems, algebra })
}

/// `u + v := ⊸(⊸u ∘ ⊸v)` in `B⋈₀`.
fn twist_add(tw: &NagataStructure, u: usize, v: usize) -> usize {
    tw.neg(tw.mul(tw.neg(u), tw.neg(v)))
}

/// Elements of the form `ι x ∘ ⊸ι y`, by exhaustive search.
pub fn co_fractions(b: &BrouwerianAlgebra, tw: &NagataStructure) -> Vec<bool> {
    let mut out = alloc::vec![false; tw.size()];
    for x in 0..b.size() {
        for y in 0..b.size() {
            out[tw.mul(embed(b, tw, x), tw.neg(embed(b, tw, y)))] = true;
        }
    }
    out
}

/// Elements of the form `ι x + ⊸ι y`, by exhaustive search.
pub fn fractions(b: &BrouwerianAlgebra, tw: &NagataStructure) -> Vec<bool> {
    let mut out = alloc::vec![false; tw.size()];
    for x in 0..b.size() {
        for y in 0..b.size() {
            out[twist_add(tw, embed(b, tw, x), tw.neg(embed(b, tw, y)))] = true;
        }
    }
    out
}

/// μ is an interior operator preserving `∘` whose fixpoints are exactly the
/// co-fractions, which are the pairs with `b = a→b`.
pub fn check_mu(b: &BrouwerianAlgebra, tw: &NagataStructure) -> Result<CheckReport, Error> {
    let mu = mu_map(b, tw)?;
    let cof = co_fractions(b, tw);
    Ok(conclude("fractions.mu", || {
        ensure(
            classify_operator(&tw.carrier.poset, &mu).is_interior(),
            "fractions.mu.interior",
            &[],
            "μ is an interior operator",
        )?;
        let n = tw.size();
        for x in 0..n {
            for y in 0..n {
                ensure(
                    mu.apply(tw.mul(x, y)) == tw.mul(mu.apply(x), mu.apply(y)),
                    "fractions.mu.product",
                    &[("x", x), ("y", y)],
                    "μ(x∘y) = μx∘μy",
                )?;
            }
        }
        for (i, &co) in cof.iter().enumerate() {
            let (a, x) = pair_of(tw, i);
            let w = [("m", i)];
            ensure(
                (mu.apply(i) == i) == co,
                "fractions.mu.image",
                &w,
                "μm = m iff m is a co-fraction",
            )?;
            ensure(
                co == (b.imp(a, x) == x),
                "fractions.mu.co-fraction",
                &w,
                "⟨a,b⟩ is a co-fraction iff b = a→b",
            )?;
            ensure(
                !co || tw.mul(embed(b, tw, a), tw.neg(embed(b, tw, x))) == i,
                "fractions.mu.co-fraction-form",
                &w,
                "a co-fraction ⟨a,b⟩ equals ι a ∘ ⊸ι b",
            )?;
        }
        Ok(())
    }))
}

/// `ν⟨a,b⟩ = ⟨b→a, b⟩` on the μ-image, indexed by position in `image.elems`.
pub fn nu_map(b: &BrouwerianAlgebra, tw: &NagataStructure, image: &MuImage) -> Result<EndoMap, Error> {
    let table = image
        .elems
        .iter()
        .map(|&i| {
            let (a, x) = pair_of(tw, i);
            pair_index(tw, b.imp(x, a), x)
                .and_then(|j| image.elems.binary_search(&j).ok())
                .ok_or(Error::NotClosed("nu"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    EndoMap::new(&image.algebra.poset, table)
}

/// ν is a closure operator on the μ-image with `νx∘νy ≤ ν(x∘y)`, whose
/// fixpoints are exactly the fractions, which are the pairs with `a = b→a`.
pub fn check_nu(b: &BrouwerianAlgebra, tw: &NagataStructure, image: &MuImage) -> Result<CheckReport, Error> {
    let nu = nu_map(b, tw, image)?;
    let fr = fractions(b, tw);
    let alg = &image.algebra;
    Ok(conclude("fractions.nu", || {
        ensure(
            classify_operator(&alg.poset, &nu).is_closure(),
            "fractions.nu.closure",
            &[],
            "ν is a closure operator",
        )?;
        let n = alg.size();
        for x in 0..n {
            for y in 0..n {
                ensure(
                    alg.leq(alg.mul(nu.apply(x), nu.apply(y)), nu.apply(alg.mul(x, y))),
                    "fractions.nu.nucleus",
                    &[("x", x), ("y", y)],
                    "νx∘νy ≤ ν(x∘y)",
                )?;
            }
        }
        for (k, &i) in image.elems.iter().enumerate() {
            let (a, x) = pair_of(tw, i);
            let w = [("m", i)];
            ensure(
                (nu.apply(k) == k) == fr[i],
                "fractions.nu.image",
                &w,
                "νm = m iff m is a fraction",
            )?;
            ensure(
                fr[i] == (b.imp(x, a) == a),
                "fractions.nu.fraction",
                &w,
                "⟨a,b⟩ is a fraction iff a = b→a",
            )?;
            ensure(
                b.leq(b.meet(b.imp(x, a), x), b.point.expect("pointed")),
                "fractions.nu.universe",
                &w,
                "(b→a)∧b ≤ 0",
            )?;
        }
        Ok(())
    }))
}

/// The bimonoid of fractions `((B⋈₀)_μ)_ν` together with its embedding of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fractions {
    pub bimonoid: Bimonoid,
    /// The pair `⟨a,b⟩` each element stands for.
    pub pairs: Vec<(usize, usize)>,
    /// `ι_B a = ⟨a, ¬a⟩`.
    pub embedding: Vec<usize>,
    /// `⟨a,b⟩‾ = ⟨b,a⟩`.
    pub complement: Vec<usize>,
}

impl Fractions {
    pub fn index_of(&self, a: usize, x: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, x)).ok()
    }
}

/// Builds `((B⋈₀)_μ)_ν` with `x·y = ν(x∘y)`, `1 = ⟨⊤,0⟩`, complement `⊸`,
/// `x+y = (ȳ·x̄)‾` and `0 = ⟨0,⊤⟩`, without verifying it.
pub fn construct_fractions(b: &BrouwerianAlgebra) -> Result<Fractions, Error> {
    let tw = brouwerian_twist(b)?;
    let image = mu_image(b, &tw)?;
    let nu = nu_map(b, &tw, &image)?;
    let kept: Vec<usize> = nu.fixpoints();
    let elems: Vec<usize> = kept.iter().map(|&k| image.elems[k]).collect();
    let pairs: Vec<(usize, usize)> = elems.iter().map(|&i| pair_of(&tw, i)).collect();
    let find =
        |a: usize, x: usize, what: &'static str| pairs.binary_search(&(a, x)).map_err(|_| Error::NotClosed(what));
    let n = elems.len();
    let mut mul = Vec::with_capacity(n * n);
    for &i in &elems {
        for &j in &elems {
            let k = image
                .elems
                .binary_search(&tw.mul(i, j))
                .map_err(|_| Error::NotClosed("mul"))?;
            let (a, x) = pair_of(&tw, image.elems[nu.apply(k)]);
            mul.push(find(a, x, "mul")?);
        }
    }
    let mul = Table::new(n, n, mul)?;
    let complement = pairs
        .iter()
        .map(|&(a, x)| find(x, a, "complement"))
        .collect::<Result<Vec<_>, _>>()?;
    let add = Table::square(n, |x, y| complement[mul.get(complement[y], complement[x])]);
    let z = b.point.expect("checked");
    let one = find(b.top(), z, "one")?;
    let zero = find(z, b.top(), "zero")?;
    let embedding = (0..b.size())
        .map(|a| find(a, b.neg(a), "embedding"))
        .collect::<Result<Vec<_>, _>>()?;
    let bimonoid = Bimonoid::new(tw.carrier.poset.sub_poset(&elems), mul, one, add, zero)?;
    Ok(Fractions {
        bimonoid,
        pairs,
        embedding,
        complement,
    })
}

/// Everything the construction promises: a complemented commutative
/// bimonoid, term-equivalent to an involutive residuated pomonoid, whose
/// elements are all fractions and co-fractions over `ι_B`, an order embedding
/// preserving `·`, `+`, `0`, `1`.
pub fn check_fractions(b: &BrouwerianAlgebra, f: &Fractions) -> Result<CheckReport, Error> {
    let bb = bimonoid_of_brouwerian(b)?;
    let fb = &f.bimonoid;
    let searched: Vec<Option<usize>> = (0..fb.size()).map(|x| complement_of(fb, x)).collect::<Result<_, _>>()?;
    let term = check_term_equivalence(fb);
    Ok(conclude("fractions", || {
        check_bimonoid(fb).into_verdict()?;
        let n = fb.size();
        let c = &f.complement;
        for x in 0..n {
            let w = [("m", x)];
            ensure(
                searched[x] == Some(c[x]),
                "fractions.complement",
                &w,
                "the complement found by search is ⊸m",
            )?;
            ensure(c[c[x]] == x, "fractions.complement-involutive", &w, "m̄̄ = m")?;
            let dual = fb.poset.maximum((0..n).filter(|&y| fb.leq(fb.mul(x, y), fb.zero)));
            ensure(dual == Some(c[x]), "fractions.dualizing", &w, "m ∖ ⟨0,1⟩ = m̄")?;
        }
        match &term {
            Ok(r) => r.clone().into_verdict()?,
            Err(_) => {
                return Err(CheckReport::fail(
                    "fractions.complemented",
                    &[],
                    "every element has a complement",
                ))
            }
        }
        let i = &f.embedding;
        let m = b.size();
        for x in 0..m {
            for y in 0..m {
                let w = [("a", x), ("b", y)];
                ensure(
                    b.leq(x, y) == fb.leq(i[x], i[y]),
                    "fractions.embedding.order",
                    &w,
                    "a ≤ b iff ιa ≤ ιb",
                )?;
                ensure(
                    i[bb.mul(x, y)] == fb.mul(i[x], i[y]),
                    "fractions.embedding.mul",
                    &w,
                    "ι(a·b) = ιa·ιb",
                )?;
                ensure(
                    i[bb.add(x, y)] == fb.add(i[x], i[y]),
                    "fractions.embedding.add",
                    &w,
                    "ι(a+b) = ιa+ιb",
                )?;
            }
        }
        ensure(i[bb.one] == fb.one, "fractions.embedding.one", &[], "ι1 = 1")?;
        ensure(i[bb.zero] == fb.zero, "fractions.embedding.zero", &[], "ι0 = 0")?;
        let (mut frac, mut cofrac) = (alloc::vec![false; n], alloc::vec![false; n]);
        for x in 0..m {
            for y in 0..m {
                frac[fb.add(i[x], c[i[y]])] = true;
                cofrac[fb.mul(i[x], c[i[y]])] = true;
            }
        }
        for k in 0..n {
            ensure(
                frac[k],
                "fractions.fraction",
                &[("m", k)],
                "m = ιx + (ιy)‾ for some x, y",
            )?;
            ensure(
                cofrac[k],
                "fractions.co-fraction",
                &[("m", k)],
                "m = ιx · (ιy)‾ for some x, y",
            )?;
        }
        Ok(())
    }))
}

/// Builds and verifies the bimonoid of fractions of `b`.
pub fn fractions_algebra(b: &BrouwerianAlgebra) -> Result<Fractions, Error> {
    let f = construct_fractions(b)?;
    let r = check_fractions(b, &f)?;
    if !r.passed {
        return Err(Error::AxiomFailure(r));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_brouwerian;
    use proptest::prelude::*;

    fn brouwer(p: Poset, point: usize) -> BrouwerianAlgebra {
        BrouwerianAlgebra::from_lattice(p, Some(point)).unwrap()
    }

    fn chain_lattice(n: usize) -> Bimonoid {
        Bimonoid::from_lattice(Poset::chain(n)).unwrap()
    }

    #[test]
    fn lattice_and_monoid_bimonoids() {
        assert!(check_bimonoid(&chain_lattice(2)).passed);
        let z3 = Posemigroup::new(Poset::antichain(3), Table::square(3, |a, b| (a + b) % 3))
            .unwrap()
            .with_unit(0)
            .unwrap();
        let g = Bimonoid::from_monoid(&z3).unwrap();
        assert!(check_bimonoid(&g).passed);
        for x in 0..3 {
            assert_eq!(complement_of(&g, x).unwrap(), Some((3 - x) % 3));
        }
    }

    #[test]
    fn swapped_two_chain_linking_law() {
        let p = Poset::chain(2);
        let b = Bimonoid::new(
            p,
            Table::square(2, |x, y| x.max(y)),
            0,
            Table::square(2, |x, y| x.min(y)),
            1,
        )
        .unwrap();
        let violated = (0..8)
            .map(|k| (k >> 2, (k >> 1) & 1, k & 1))
            .find(|&(x, y, z)| x.max(y.min(z)) > x.max(y).min(z));
        let r = check_bimonoid(&b);
        assert_eq!(violated.is_none(), r.passed);
        assert_eq!(r.axiom, "bimonoid.linking");
        let (x, y, z) = violated.unwrap();
        assert_eq!(r.witness, [("x".into(), x), ("y".into(), y), ("z".into(), z)]);
    }

    #[test]
    fn chain_complements() {
        assert_eq!(complement_of(&chain_lattice(2), 0).unwrap(), Some(1));
        assert_eq!(complement_of(&chain_lattice(3), 1).unwrap(), None);
        assert_eq!(
            check_term_equivalence(&chain_lattice(3)),
            Err(Error::NotComplemented(1))
        );
    }

    #[test]
    fn degenerate_bimonoid_has_two_complements() {
        let p = Poset::antichain(2);
        let b = Bimonoid::new(p, Table::square(2, |_, _| 0), 0, Table::square(2, |_, _| 0), 0).unwrap();
        assert!(matches!(
            complement_of(&b, 0),
            Err(Error::NonUniqueComplement {
                element: 0,
                first: 0,
                second: 1
            })
        ));
    }

    #[test]
    fn boolean_bimonoids_are_term_equivalent() {
        let four = Bimonoid::from_lattice(Poset::product(&Poset::chain(2), &Poset::chain(2))).unwrap();
        for b in [chain_lattice(1), chain_lattice(2), four] {
            assert!(check_bimonoid(&b).passed);
            assert!(check_term_equivalence(&b).unwrap().passed);
        }
    }

    #[test]
    fn brouwerian_addition_special_points() {
        let p = Poset::product(&Poset::chain(2), &Poset::chain(3));
        let top = p.top().unwrap();
        let bot = p.bottom().unwrap();
        for (point, expect_meet) in [(top, true), (bot, false)] {
            let b = brouwer(p.clone(), point);
            let bm = bimonoid_of_brouwerian(&b).unwrap();
            for x in 0..b.size() {
                for y in 0..b.size() {
                    let want = if expect_meet { b.meet(x, y) } else { b.join(x, y) };
                    assert_eq!(bm.add(x, y), want);
                }
            }
        }
        let g = brouwer(Poset::chain(3), 1);
        assert_eq!(bimonoid_of_brouwerian(&g).unwrap().add(1, 2), 2);
    }

    #[test]
    fn lemma_suite_examples() {
        let four = Poset::product(&Poset::chain(2), &Poset::chain(2));
        for b in [
            brouwer(Poset::chain(2), 0),
            brouwer(Poset::chain(2), 1),
            brouwer(Poset::chain(3), 1),
            brouwer(four, 0),
        ] {
            assert!(check_boolean_pointed(&b).unwrap().passed);
            assert!(brouwerian_lemma_suite(&b).unwrap().passed);
        }
    }

    #[test]
    fn godel_bottom_is_not_boolean_pointed() {
        assert_eq!(
            brouwerian_twist(&brouwer(Poset::chain(3), 0)).err(),
            Some(Error::NotBooleanPointed(1))
        );
    }

    #[test]
    fn two_chain_bottom_pipeline() {
        let b = brouwer(Poset::chain(2), 0);
        let tw = brouwerian_twist(&b).unwrap();
        let sp = tw.space.as_ref().unwrap();
        let idx = |a, x| sp.get(a, x).unwrap();
        let mu = mu_map(&b, &tw).unwrap();
        assert_eq!(mu.apply(idx(0, 0)), idx(0, 1));
        let image = mu_image(&b, &tw).unwrap();
        assert_eq!(image.elems, [idx(0, 1), idx(1, 0)]);
        let nu = nu_map(&b, &tw, &image).unwrap();
        assert_eq!(nu.fixpoints(), [0, 1]);
        assert!(check_mu(&b, &tw).unwrap().passed);
        assert!(check_nu(&b, &tw, &image).unwrap().passed);
        let f = fractions_algebra(&b).unwrap();
        assert_eq!(f.pairs, [(0, 1), (1, 0)]);
        assert_eq!(f.embedding, [0, 1]);
        assert_eq!((f.bimonoid.zero, f.bimonoid.one), (0, 1));
        assert_eq!(f.complement, [1, 0]);
        assert_eq!(f.bimonoid.mul.to_rows(), [[0, 0], [0, 1]]);
        assert_eq!(f.bimonoid.add.to_rows(), [[0, 1], [1, 1]]);
    }

    #[test]
    fn two_chain_top_pipeline() {
        let b = brouwer(Poset::chain(2), 1);
        let tw = brouwerian_twist(&b).unwrap();
        assert_eq!(tw.size(), 4);
        let f = fractions_algebra(&b).unwrap();
        // Fractions and co-fractions: b = a→b and a = b→a.
        let want: Vec<(usize, usize)> = (0..4)
            .map(|k| (k / 2, k % 2))
            .filter(|&(a, x)| b.imp(a, x) == x && b.imp(x, a) == a)
            .collect();
        assert_eq!(f.pairs, want);
        assert!(check_term_equivalence(&f.bimonoid).unwrap().passed);
    }

    #[test]
    fn singleton_pipeline() {
        let b = brouwer(Poset::chain(1), 0);
        let f = fractions_algebra(&b).unwrap();
        assert_eq!(f.bimonoid.size(), 1);
        let tw = brouwerian_twist(&b).unwrap();
        assert_eq!(nu_map(&b, &tw, &mu_image(&b, &tw).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn broken_complement_is_caught() {
        let b = brouwer(Poset::product(&Poset::chain(2), &Poset::chain(2)), 0);
        let mut f = construct_fractions(&b).unwrap();
        f.complement.swap(0, 1);
        let r = check_fractions(&b, &f).unwrap();
        assert_eq!(r.axiom, "fractions.complement");
        assert_eq!(r.witness, [("m".into(), 0)]);
    }

    fn arb_boolean_pointed() -> impl Strategy<Value = BrouwerianAlgebra> {
        (1usize..4, 1usize..4, 0usize..16).prop_filter_map("Boolean-pointed", |(p, q, k)| {
            let l = Poset::product(&Poset::chain(p), &Poset::chain(q));
            let b = brouwer(l, k % (p * q));
            check_boolean_pointed(&b).unwrap().passed.then_some(b)
        })
    }

    proptest! {
        #[test]
        fn fractions_pipeline_on_chain_products(b in arb_boolean_pointed()) {
            prop_assert!(check_brouwerian(&b).unwrap().passed);
            prop_assert!(check_bimonoid(&bimonoid_of_brouwerian(&b).unwrap()).passed);
            prop_assert!(brouwerian_lemma_suite(&b).unwrap().passed);
            let tw = brouwerian_twist(&b).unwrap();
            prop_assert!(check_mu(&b, &tw).unwrap().passed);
            let image = mu_image(&b, &tw).unwrap();
            prop_assert!(check_nu(&b, &tw, &image).unwrap().passed);
            let f = construct_fractions(&b).unwrap();
            let r = check_fractions(&b, &f).unwrap();
            prop_assert!(r.passed, "{}", r);
            for (k, &(a, x)) in f.pairs.iter().enumerate() {
                prop_assert_eq!(f.pairs[f.complement[k]], (x, a));
            }
        }
    }
}
