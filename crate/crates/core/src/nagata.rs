//! Nagata products of bimodules, the maps σ and γ on them, the structural
//! bimodule of a Nagata posemigroup, and the axiom suites tying the two
//! sides of the adjunction together.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{compute_residuals, scan_posemigroup, Posemigroup, ResiduatedStructure};
use crate::bimodule::{ActionResiduals, Bimodule};
use crate::error::Error;
use crate::order::{classify_operator, EndoMap, Poset};
use crate::report::{conclude, ensure, CheckReport, Verdict};
use crate::table::{PartialTable, Table};

/// A set of pairs `⟨a, x⟩` ⊆ S × M, listed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairSpace {
    scalars: usize,
    module: usize,
    pairs: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
}

impl PairSpace {
    pub fn new(scalars: usize, module: usize, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let mut pairs = Vec::new();
        let mut index = vec![None; scalars * module];
        for a in 0..scalars {
            for x in 0..module {
                if keep(a, x) {
                    index[a * module + x] = Some(pairs.len());
                    pairs.push((a, x));
                }
            }
        }
        PairSpace {
            scalars,
            module,
            pairs,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    #[inline]
    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    #[inline]
    pub fn get(&self, a: usize, x: usize) -> Option<usize> {
        self.index[a * self.module + x]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn scalar_count(&self) -> usize {
        self.scalars
    }

    pub fn module_count(&self) -> usize {
        self.module
    }
}

/// A Nagata product (full or restricted) as a posemigroup over pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NagataProduct {
    pub space: PairSpace,
    pub algebra: Posemigroup,
    /// `(lres, rres)` with `lres[m][n] = m∖n` and `rres[n][m] = n/m`.
    pub residuals: Option<(Table, Table)>,
}

impl NagataProduct {
    pub fn residuated(&self) -> Option<ResiduatedStructure> {
        let (l, r) = self.residuals.clone()?;
        Some(ResiduatedStructure {
            base: self.algebra.clone(),
            lres: l,
            rres: r,
        })
    }
}

fn table_of(n: usize, mut f: impl FnMut(usize, usize) -> Option<usize>) -> Option<Table> {
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(f(i, j)?);
        }
    }
    Table::new(n, n, data).ok()
}

/// Order and multiplication of the Nagata product on `space`.
fn product_on(m: &Bimodule, space: PairSpace) -> Result<NagataProduct, Error> {
    let s = &m.scalars;
    let n = space.len();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let poset = Poset::from_relation(n, |i, j| {
        let ((a, x), (b, y)) = (space.pair(i), space.pair(j));
        s.leq(a, b) && m.module.leq(x, y)
    });
    let mul = table_of(n, |i, j| {
        let ((a, x), (b, y)) = (space.pair(i), space.pair(j));
        space.get(s.mul(a, b), m.mjoin(m.ract(x, b), m.lact(a, y)))
    })
    .ok_or(Error::NotClosed("mul"))?;
    let algebra = Posemigroup::new(poset, mul)?;
    Ok(NagataProduct {
        space,
        algebra,
        residuals: None,
    })
}

/// The Nagata product `S ⋉ M`: pairs ordered componentwise with
/// `⟨a,x⟩∘⟨b,y⟩ = ⟨ab, x∗b ∨ a∗y⟩`. Componentwise lattice tables are attached
/// when both sorts have them; residuals are attached when the bimodule is
/// doubly residuated and `S` has meets.
pub fn nagata_product(m: &Bimodule) -> Result<NagataProduct, Error> {
    let space = PairSpace::new(m.scalar_count(), m.module_count(), |_, _| true);
    let mut p = product_on(m, space)?;
    let s = &m.scalars;
    let sp = &p.space;
    let n = sp.len();
    if let (Some(sm), Some(mm)) = (&s.meet, &m.module_meet) {
        p.algebra.meet = table_of(n, |i, j| {
            let ((a, x), (b, y)) = (sp.pair(i), sp.pair(j));
            sp.get(sm.get(a, b), mm.get(x, y))
        });
    }
    if let Some(sj) = &s.join {
        p.algebra.join = table_of(n, |i, j| {
            let ((a, x), (b, y)) = (sp.pair(i), sp.pair(j));
            sp.get(sj.get(a, b), m.mjoin(x, y))
        });
    }
    if let (Some(r), Some(sm), Some(sr)) = (&m.residuals, &s.meet, compute_residuals(s)) {
        let lres = table_of(n, |i, j| {
            let ((a, x), (b, y)) = (sp.pair(i), sp.pair(j));
            sp.get(sm.get(sr.under(a, b), r.right_under.get(x, y)), r.left_under.get(a, y))
        });
        let rres = table_of(n, |j, i| {
            let ((b, y), (a, x)) = (sp.pair(j), sp.pair(i));
            sp.get(sm.get(sr.over(b, a), r.left_over.get(y, x)), r.right_over.get(y, a))
        });
        p.residuals = lres.zip(rres);
    }
    Ok(p)
}

fn is_unital(m: &Bimodule) -> bool {
    m.scalars
        .unit
        .is_some_and(|u| (0..m.module_count()).all(|x| m.lact(u, x) == x && m.ract(x, u) == x))
}

/// The restricted Nagata product `S ⋉₀ M` on `{⟨a,x⟩ : 0∗a ≤ x, a∗0 ≤ x}`.
///
/// When the bimodule is unital and the full product residuated, meets and
/// residuals are computed through the double-division conucleus at `⟨1,0⟩`;
/// otherwise by scanning the restricted order.
pub fn restricted_nagata_product(m: &Bimodule) -> Result<NagataProduct, Error> {
    let z = m.point.ok_or(Error::MissingComponent("point"))?;
    let space = PairSpace::new(m.scalar_count(), m.module_count(), |a, x| {
        m.module.leq(m.ract(z, a), x) && m.module.leq(m.lact(a, z), x)
    });
    let mut p = product_on(m, space)?;
    let sp = &p.space;
    let n = sp.len();
    let unit = m.scalars.unit.filter(|_| is_unital(m)).and_then(|u| sp.get(u, z));
    p.algebra.unit = unit;
    if let Some(sj) = &m.scalars.join {
        p.algebra.join = table_of(n, |i, j| {
            let ((a, x), (b, y)) = (sp.pair(i), sp.pair(j));
            sp.get(sj.get(a, b), m.mjoin(x, y))
        });
    }
    if p.algebra.join.is_none() {
        p.algebra.join = p.algebra.poset.join_table();
    }
    let via_delta = restricted_via_double_division(m, sp, z);
    match via_delta {
        Some((meet, lres, rres)) => {
            p.algebra.meet = meet;
            p.residuals = Some((lres, rres));
        }
        None => {
            p.algebra.meet = p.algebra.poset.meet_table();
            p.residuals = compute_residuals(&p.algebra).map(|r| (r.lres, r.rres));
        }
    }
    Ok(p)
}

type DeltaTables = (Option<Table>, Table, Table);

fn restricted_via_double_division(m: &Bimodule, sp: &PairSpace, z: usize) -> Option<DeltaTables> {
    let u = m.scalars.unit.filter(|_| is_unital(m))?;
    let full = nagata_product(m).ok()?;
    let fr = full.residuated()?;
    let p = full.space.get(u, z)?;
    let delta = double_division(&fr, p).ok()?;
    let to_restricted = |k: usize| {
        let (a, x) = full.space.pair(delta.apply(k));
        sp.get(a, x)
    };
    let from = |i: usize| {
        let (a, x) = sp.pair(i);
        full.space.get(a, x).expect("restricted pair lies in the full product")
    };
    let n = sp.len();
    let meet = full
        .algebra
        .meet
        .as_ref()
        .and_then(|t| table_of(n, |i, j| to_restricted(t.get(from(i), from(j)))));
    let lres = table_of(n, |i, j| to_restricted(fr.under(from(i), from(j))))?;
    let rres = table_of(n, |i, j| to_restricted(fr.over(from(i), from(j))))?;
    Some((meet, lres, rres))
}

/// The double-division map `δ_p x = (p∖x)/p` at a positive element `p`.
pub fn double_division(r: &ResiduatedStructure, p: usize) -> Result<EndoMap, Error> {
    let s = &r.base;
    for x in 0..r.size() {
        let positive =
            s.leq(r.under(p, x), x) && s.leq(r.over(x, p), x) && s.leq(x, s.mul(p, x)) && s.leq(x, s.mul(x, p));
        if !positive {
            return Err(Error::NotPositive { element: p, witness: x });
        }
    }
    Ok(EndoMap::from_fn(r.size(), |x| r.over(r.under(p, x), p)))
}

/// Image of the double-division conucleus at `p`, in increasing index order.
pub fn double_division_image(r: &ResiduatedStructure, p: usize) -> Result<Vec<usize>, Error> {
    let d = double_division(r, p)?;
    let mut image: Vec<usize> = (0..r.size()).map(|x| d.apply(x)).collect();
    image.sort_unstable();
    image.dedup();
    Ok(image)
}

/// `ε_S(a) = ⟨a, a∗0⟩` as a pair of coordinates.
pub fn embed_scalar(m: &Bimodule, a: usize) -> Result<(usize, usize), Error> {
    let z = m.point.ok_or(Error::MissingComponent("point"))?;
    if let Some(b) = m.cyclic_violation() {
        return Err(Error::NotCyclic(b));
    }
    Ok((a, m.lact(a, z)))
}

/// `ε_M(x) = ⟨0 ∗⟍ x, x⟩` as a pair of coordinates.
pub fn embed_module(m: &Bimodule, x: usize) -> Result<(usize, usize), Error> {
    let z = m.point.ok_or(Error::MissingComponent("point"))?;
    if let Some(b) = m.cyclic_violation() {
        return Err(Error::NotCyclic(b));
    }
    Ok((m.residuals()?.right_under.get(z, x), x))
}

/// A posemigroup with a pre-conucleus σ, a σ-closure operator γ, a point,
/// and the partial operations `m ∖γ n = m ∖ γn`, `n /γ m = γn / m` and
/// `m ⊔ n = γm ∨_γ γn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NagataStructure {
    pub carrier: Posemigroup,
    /// Full residuals `(lres, rres)` of the carrier, when it has them.
    pub residuals: Option<(Table, Table)>,
    pub sigma: EndoMap,
    pub gamma: EndoMap,
    pub point: usize,
    /// The constant `1 ∈ N_σ` of a Nagata lattice.
    pub one: Option<usize>,
    pub gres_left: PartialTable,
    pub gres_right: PartialTable,
    pub gjoin: PartialTable,
    pub oplus: Option<Table>,
    pub otimes: Option<Table>,
    pub negation: Option<EndoMap>,
    /// Pair coordinates, when the structure was built as a product.
    pub space: Option<PairSpace>,
}

impl NagataStructure {
    /// Builds a structure from its maps, computing the γ-residuals and
    /// γ-joins by scanning the carrier order.
    pub fn from_maps(
        carrier: Posemigroup,
        residuals: Option<(Table, Table)>,
        sigma: EndoMap,
        gamma: EndoMap,
        point: usize,
    ) -> Result<Self, Error> {
        let n = carrier.size();
        let sigma = EndoMap::new(&carrier.poset, sigma.table().to_vec())?;
        let gamma = EndoMap::new(&carrier.poset, gamma.table().to_vec())?;
        if point >= n {
            return Err(Error::IndexOutOfRange {
                what: "point",
                index: point,
                size: n,
            });
        }
        if let Some((l, r)) = &residuals {
            l.expect_shape("left residual", n, n, n)?;
            r.expect_shape("right residual", n, n, n)?;
        }
        let p = &carrier.poset;
        let gres_left = PartialTable::from_fn(n, n, |m, k| {
            let t = gamma.apply(k);
            p.maximum((0..n).filter(|&j| p.leq(carrier.mul(m, j), t)))
        });
        let gres_right = PartialTable::from_fn(n, n, |k, m| {
            let t = gamma.apply(k);
            p.maximum((0..n).filter(|&j| p.leq(carrier.mul(j, m), t)))
        });
        let fixed = gamma.fixpoints();
        let gjoin = PartialTable::from_fn(n, n, |a, b| {
            let (ga, gb) = (gamma.apply(a), gamma.apply(b));
            p.minimum(fixed.iter().copied().filter(|&u| p.leq(ga, u) && p.leq(gb, u)))
        });
        let one = carrier.unit.filter(|&u| sigma.apply(u) == u);
        Ok(NagataStructure {
            carrier,
            residuals,
            sigma,
            gamma,
            point,
            one,
            gres_left,
            gres_right,
            gjoin,
            oplus: None,
            otimes: None,
            negation: None,
            space: None,
        })
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.carrier.mul(x, y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.carrier.leq(x, y)
    }

    #[inline]
    pub fn s(&self, x: usize) -> usize {
        self.sigma.apply(x)
    }

    #[inline]
    pub fn g(&self, x: usize) -> usize {
        self.gamma.apply(x)
    }

    /// `m ∖γ n`
    #[inline]
    pub fn gl(&self, m: usize, n: usize) -> Option<usize> {
        self.gres_left.get(m, n)
    }

    /// `n /γ m`
    #[inline]
    pub fn gr(&self, n: usize, m: usize) -> Option<usize> {
        self.gres_right.get(n, m)
    }

    /// `m ⊔ n`
    #[inline]
    pub fn gj(&self, m: usize, n: usize) -> Option<usize> {
        self.gjoin.get(m, n)
    }

    pub fn sigma_image(&self) -> Vec<usize> {
        self.sigma.fixpoints()
    }

    pub fn gamma_image(&self) -> Vec<usize> {
        self.gamma.fixpoints()
    }

    pub fn residuated(&self) -> Option<ResiduatedStructure> {
        let (l, r) = self.residuals.clone()?;
        Some(ResiduatedStructure {
            base: self.carrier.clone(),
            lres: l,
            rres: r,
        })
    }

    /// `⊸x`. Panics if the structure has no negation.
    pub fn neg(&self, x: usize) -> usize {
        self.negation
            .as_ref()
            .expect("structure without strong negation")
            .apply(x)
    }

    /// The substructure on `keep`, which must be closed under `·`, σ, γ,
    /// `⊕` and `⊸` (where present) and contain the point. Residuals and
    /// γ-operations are recomputed by scan.
    pub fn restrict(&self, keep: &[usize]) -> Result<NagataStructure, Error> {
        let (carrier, index) = self.carrier.restrict(keep)?;
        let map = |f: &EndoMap, what: &'static str| -> Result<EndoMap, Error> {
            let t = keep
                .iter()
                .map(|&x| index[f.apply(x)].ok_or(Error::NotClosed(what)))
                .collect::<Result<Vec<_>, _>>()?;
            EndoMap::new(&carrier.poset, t)
        };
        let sigma = map(&self.sigma, "sigma")?;
        let gamma = map(&self.gamma, "gamma")?;
        let point = index[self.point].ok_or(Error::NotClosed("point"))?;
        let negation = match &self.negation {
            Some(neg) => Some(map(neg, "negation")?),
            None => None,
        };
        let residuals = compute_residuals(&carrier).map(|r| (r.lres, r.rres));
        let mut sub = NagataStructure::from_maps(carrier, residuals, sigma, gamma, point)?;
        sub.negation = negation;
        sub.one = self.one.and_then(|o| index[o]);
        if let Some(t) = &self.oplus {
            sub.oplus =
                Some(table_of(keep.len(), |i, j| index[t.get(keep[i], keep[j])]).ok_or(Error::NotClosed("oplus"))?);
        }
        sub.space = self.space.as_ref().map(|sp| {
            let (ns, nm) = (sp.scalar_count(), sp.module_count());
            let kept: Vec<(usize, usize)> = keep.iter().map(|&i| sp.pair(i)).collect();
            PairSpace::new(ns, nm, |a, x| kept.contains(&(a, x)))
        });
        Ok(sub)
    }
}

/// Attaches σ, γ, the point and the γ-operations to the (restricted)
/// Nagata product of a cyclic pointed residuated bimodule, using the
/// closed-form expressions in the bimodule operations:
///
/// * `σ⟨a,x⟩ = ⟨a, a∗0⟩`, `γ⟨a,x⟩ = ⟨0∗⟍x, x⟩`, point `⟨0∗⟍0, 0⟩`;
/// * `⟨a,x⟩ ∖γ ⟨b,y⟩ = ⟨(0∗a ∨ x)∗⟍y, a⟍∗y⟩`;
/// * `⟨b,y⟩ /γ ⟨a,x⟩ = ⟨y/∗(x ∨ 0∗a), y∗/a⟩`;
/// * `⟨a,x⟩ ⊔ ⟨b,y⟩ = ε_M(x ∨ y)`.
pub fn nagata_structure(m: &Bimodule, restricted: bool) -> Result<NagataStructure, Error> {
    let z = m.point.ok_or(Error::MissingComponent("point"))?;
    let r = m.residuals()?.clone();
    if let Some(a) = m.cyclic_violation() {
        return Err(Error::NotCyclic(a));
    }
    let prod = if restricted {
        restricted_nagata_product(m)?
    } else {
        nagata_product(m)?
    };
    let NagataProduct {
        space,
        algebra,
        residuals,
    } = prod;
    let n = space.len();
    let idx = |a: usize, x: usize| space.get(a, x).ok_or(Error::NotClosed("pair"));
    let eps_m = |x: usize| idx(r.right_under.get(z, x), x);
    let sigma = (0..n)
        .map(|i| {
            let (a, _) = space.pair(i);
            idx(a, m.lact(a, z))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gamma = (0..n).map(|i| eps_m(space.pair(i).1)).collect::<Result<Vec<_>, _>>()?;
    let point = eps_m(z)?;
    let one = match m.scalars.unit {
        Some(u) => Some(idx(u, m.lact(u, z))?),
        None => None,
    };
    let gres_left = PartialTable::from_fn(n, n, |i, j| {
        let ((a, x), (_, y)) = (space.pair(i), space.pair(j));
        space.get(r.right_under.get(m.mjoin(m.ract(z, a), x), y), r.left_under.get(a, y))
    });
    let gres_right = PartialTable::from_fn(n, n, |j, i| {
        let ((_, y), (a, x)) = (space.pair(j), space.pair(i));
        space.get(r.left_over.get(y, m.mjoin(x, m.ract(z, a))), r.right_over.get(y, a))
    });
    let gjoin = PartialTable::from_fn(n, n, |i, j| eps_m(m.mjoin(space.pair(i).1, space.pair(j).1)).ok());
    let s = &m.scalars;
    let oplus = s.meet.as_ref().and_then(|sm| {
        table_of(n, |i, j| {
            let ((a, x), (b, y)) = (space.pair(i), space.pair(j));
            space.get(sm.get(a, b), m.mjoin(x, y))
        })
    });
    let otimes = match (&s.join, &m.module_meet) {
        (Some(sj), Some(mm)) if !restricted => table_of(n, |i, j| {
            let ((a, x), (b, y)) = (space.pair(i), space.pair(j));
            space.get(sj.get(a, b), mm.get(x, y))
        }),
        _ => None,
    };
    Ok(NagataStructure {
        sigma: EndoMap::new(&algebra.poset, sigma)?,
        gamma: EndoMap::new(&algebra.poset, gamma)?,
        carrier: algebra,
        residuals,
        point,
        one,
        gres_left,
        gres_right,
        gjoin,
        oplus,
        otimes,
        negation: None,
        space: Some(space),
    })
}

fn scan_pre_conucleus(n: &NagataStructure, scope: &str) -> Verdict {
    let p = &n.carrier.poset;
    let ax = |suffix: &str| {
        let mut s = alloc::string::String::from(scope);
        s.push_str(suffix);
        s
    };
    if let Some(x) = n.sigma.idempotence_violation() {
        return Err(CheckReport::fail(&ax(".sigma-idempotent"), &[("x", x)], "σσx = σx"));
    }
    if let Some((x, y)) = n.sigma.isotone_violation(p) {
        return Err(CheckReport::fail(
            &ax(".sigma-isotone"),
            &[("x", x), ("y", y)],
            "x ≤ y implies σx ≤ σy",
        ));
    }
    let img = n.sigma_image();
    for &a in &img {
        for &b in &img {
            let ab = n.mul(a, b);
            ensure(
                n.s(ab) == ab,
                &ax(".sigma-subsemigroup"),
                &[("a", a), ("b", b)],
                "N_σ is closed under ·",
            )?;
        }
    }
    Ok(())
}

fn scan_sigma_closure(n: &NagataStructure, scope: &str) -> Verdict {
    let p = &n.carrier.poset;
    let ax = |suffix: &str| {
        let mut s = alloc::string::String::from(scope);
        s.push_str(suffix);
        s
    };
    if let Some(x) = n.gamma.idempotence_violation() {
        return Err(CheckReport::fail(&ax(".gamma-idempotent"), &[("x", x)], "γγx = γx"));
    }
    if let Some((x, y)) = n.gamma.isotone_violation(p) {
        return Err(CheckReport::fail(
            &ax(".gamma-isotone"),
            &[("x", x), ("y", y)],
            "x ≤ y implies γx ≤ γy",
        ));
    }
    let sig = n.sigma_image();
    let gam = n.gamma_image();
    for &a in &sig {
        for &x in &gam {
            let (ax_, xa) = (n.mul(a, x), n.mul(x, a));
            ensure(
                n.leq(ax_, n.g(ax_)) && n.leq(xa, n.g(xa)),
                &ax(".gamma-sigma-closure"),
                &[("a", a), ("x", x)],
                "a·x ≤ γ(a·x) and x·a ≤ γ(x·a)",
            )?;
        }
    }
    for &a in &sig {
        for m in 0..n.size() {
            let gm = n.g(m);
            ensure(
                n.leq(n.mul(a, gm), n.g(n.mul(a, m))),
                &ax(".gamma-structural"),
                &[("a", a), ("m", m)],
                "a·γm ≤ γ(a·m)",
            )?;
            ensure(
                n.leq(n.mul(gm, a), n.g(n.mul(m, a))),
                &ax(".gamma-structural"),
                &[("a", a), ("m", m)],
                "γm·a ≤ γ(m·a)",
            )?;
        }
    }
    ensure(
        n.g(n.point) == n.point,
        &ax(".point-gamma-fixed"),
        &[("0", n.point)],
        "0 ∈ N_γ",
    )
}

fn scan_gamma_operations(n: &NagataStructure, scope: &str) -> Verdict {
    let size = n.size();
    let ax = |suffix: &str| {
        let mut s = alloc::string::String::from(scope);
        s.push_str(suffix);
        s
    };
    let (gres, gjoin) = (ax(".gamma-residuated"), ax(".gamma-join"));
    for m in 0..size {
        for k in 0..size {
            let t = n.g(k);
            let Some(l) = n.gl(m, k) else {
                return Err(CheckReport::fail(&gres, &[("m", m), ("n", k)], "m ∖ γn exists"));
            };
            let Some(r) = n.gr(k, m) else {
                return Err(CheckReport::fail(&gres, &[("n", k), ("m", m)], "γn / m exists"));
            };
            for j in 0..size {
                ensure(
                    n.leq(j, l) == n.leq(n.mul(m, j), t),
                    &gres,
                    &[("m", m), ("n", k), ("k", j)],
                    "k ≤ m∖γn iff m·k ≤ γn",
                )?;
                ensure(
                    n.leq(j, r) == n.leq(n.mul(j, m), t),
                    &gres,
                    &[("m", m), ("n", k), ("k", j)],
                    "k ≤ γn/m iff k·m ≤ γn",
                )?;
            }
        }
    }
    let gam = n.gamma_image();
    for m in 0..size {
        for k in 0..size {
            let (gm, gk) = (n.g(m), n.g(k));
            let Some(j) = n.gj(m, k) else {
                return Err(CheckReport::fail(&gjoin, &[("m", m), ("n", k)], "γm ∨_γ γn exists"));
            };
            let upper = |u: usize| n.leq(gm, u) && n.leq(gk, u);
            ensure(
                n.g(j) == j && upper(j) && gam.iter().all(|&u| !upper(u) || n.leq(j, u)),
                &gjoin,
                &[("m", m), ("n", k)],
                "m ⊔ n is the least upper bound of γm, γn in N_γ",
            )?;
        }
    }
    Ok(())
}

/// Checks the Nagata posemigroup axioms; with `restricted`, also that σ is
/// an interior operator and γ a closure operator.
pub fn check_nagata_posemigroup(n: &NagataStructure, restricted: bool) -> Result<CheckReport, Error> {
    const F: &str = "nagata.posemigroup";
    Ok(conclude(F, || {
        scan_posemigroup(&n.carrier).map_err(|r| r.scoped("nagata.posemigroup.carrier"))?;
        scan_pre_conucleus(n, F)?;
        scan_sigma_closure(n, F)?;
        scan_gamma_operations(n, F)?;
        let size = n.size();
        let gl = |m: usize, k: usize| n.gl(m, k).expect("checked total");
        let gr = |k: usize, m: usize| n.gr(k, m).expect("checked total");
        let gj = |m: usize, k: usize| n.gj(m, k).expect("checked total");
        for x in 0..size {
            for y in 0..size {
                let w = [("x", x), ("y", y)];
                let (sx, sy, gx, gy) = (n.s(x), n.s(y), n.g(x), n.g(y));
                let xy = n.mul(x, y);
                ensure(
                    n.s(xy) == n.mul(sx, sy),
                    "nagata.posemigroup.sigma-mul",
                    &w,
                    "σ(xy) = σx·σy",
                )?;
                ensure(
                    n.g(xy) == gj(n.g(n.mul(gx, sy)), n.g(n.mul(sx, gy))),
                    "nagata.posemigroup.gamma-mul",
                    &w,
                    "γ(xy) = γ(γx·σy) ⊔ γ(σx·γy)",
                )?;
                let joined = gj(sx, x);
                ensure(
                    n.s(gl(x, gy)) == n.s(gl(joined, gy)),
                    "nagata.posemigroup.sigma-under",
                    &w,
                    "σ(x ∖γ γy) = σ((σx ⊔ x) ∖γ γy)",
                )?;
                ensure(
                    !restricted || n.s(gl(x, gy)) == n.s(gl(gx, gy)),
                    "nagata.posemigroup.sigma-under",
                    &w,
                    "σ(x ∖γ γy) = σ(γx ∖γ γy)",
                )?;
                ensure(
                    n.g(gl(x, gy)) == n.g(gl(sx, gy)),
                    "nagata.posemigroup.gamma-under",
                    &w,
                    "γ(x ∖γ γy) = γ(σx ∖γ γy)",
                )?;
                ensure(
                    n.s(gr(gy, x)) == n.s(gr(gy, joined)),
                    "nagata.posemigroup.sigma-over",
                    &w,
                    "σ(γy /γ x) = σ(γy /γ (σx ⊔ x))",
                )?;
                ensure(
                    !restricted || n.s(gr(gy, x)) == n.s(gr(gy, gx)),
                    "nagata.posemigroup.sigma-over",
                    &w,
                    "σ(γy /γ x) = σ(γy /γ γx)",
                )?;
                ensure(
                    n.g(gr(gy, x)) == n.g(gr(gy, sx)),
                    "nagata.posemigroup.gamma-over",
                    &w,
                    "γ(γy /γ x) = γ(γy /γ σx)",
                )?;
                ensure(
                    !(n.leq(sx, sy) && n.leq(gx, gy)) || n.leq(x, y),
                    "nagata.posemigroup.quasi-inequality",
                    &w,
                    "σx ≤ σy and γx ≤ γy imply x ≤ y",
                )?;
            }
        }
        scan_point_equations(n, "nagata.posemigroup", gl, gr)?;
        if restricted {
            scan_interior_closure(n, "nagata.posemigroup")?;
        }
        Ok(())
    }))
}

/// The four equations linking σ, γ and the point. `under(a, k)` and
/// `over(k, a)` stand for `a ∖ γk` and `γk / a`.
fn scan_point_equations(
    n: &NagataStructure,
    scope: &str,
    under: impl Fn(usize, usize) -> usize,
    over: impl Fn(usize, usize) -> usize,
) -> Verdict {
    let z = n.point;
    let ax = |suffix: &str| {
        let mut s = alloc::string::String::from(scope);
        s.push_str(suffix);
        s
    };
    for x in 0..n.size() {
        let w = [("x", x)];
        let (sx, gx) = (n.s(x), n.g(x));
        ensure(
            n.s(gx) == n.s(under(z, gx)),
            &ax(".point-sigma-under"),
            &w,
            "σγx = σ(0 ∖ γx)",
        )?;
        ensure(
            n.g(sx) == n.g(n.mul(z, sx)),
            &ax(".point-gamma-left"),
            &w,
            "γσx = γ(0·σx)",
        )?;
        ensure(
            n.s(gx) == n.s(over(gx, z)),
            &ax(".point-sigma-over"),
            &w,
            "σγx = σ(γx / 0)",
        )?;
        ensure(
            n.g(sx) == n.g(n.mul(sx, z)),
            &ax(".point-gamma-right"),
            &w,
            "γσx = γ(σx·0)",
        )?;
    }
    Ok(())
}

fn scan_interior_closure(n: &NagataStructure, scope: &str) -> Verdict {
    let p = &n.carrier.poset;
    let mut ax = alloc::string::String::from(scope);
    let base = ax.len();
    ax.push_str(".sigma-interior");
    for x in 0..n.size() {
        ensure(n.leq(n.s(x), x), &ax, &[("x", x)], "σx ≤ x")?;
    }
    ensure(
        classify_operator(p, &n.sigma).is_interior(),
        &ax,
        &[],
        "σ is an interior operator",
    )?;
    ax.truncate(base);
    ax.push_str(".gamma-closure");
    for x in 0..n.size() {
        ensure(n.leq(x, n.g(x)), &ax, &[("x", x)], "x ≤ γx")?;
    }
    ensure(
        classify_operator(p, &n.gamma).is_closure(),
        &ax,
        &[],
        "γ is a closure operator",
    )
}

/// The stronger forms `σx ∖γ γy = γ(x ∖γ γy)` and `γy /γ σx = γ(γy /γ x)`,
/// which follow from the Nagata posemigroup axioms.
pub fn check_strong_residual_forms(n: &NagataStructure) -> CheckReport {
    conclude("nagata.posemigroup.strong-forms", || {
        for x in 0..n.size() {
            for y in 0..n.size() {
                let w = [("x", x), ("y", y)];
                let (sx, gy) = (n.s(x), n.g(y));
                ensure(
                    n.gl(sx, gy).is_some() && n.gl(sx, gy) == n.gl(x, gy).map(|v| n.g(v)),
                    "nagata.posemigroup.strong-under",
                    &w,
                    "σx ∖γ γy = γ(x ∖γ γy)",
                )?;
                ensure(
                    n.gr(gy, sx).is_some() && n.gr(gy, sx) == n.gr(gy, x).map(|v| n.g(v)),
                    "nagata.posemigroup.strong-over",
                    &w,
                    "γy /γ σx = γ(γy /γ x)",
                )?;
            }
        }
        Ok(())
    })
}

/// Checks the Nagata lattice axioms (unrestricted) or the restricted Nagata
/// lattice axioms, including the quasi-inequality they imply.
pub fn check_nagata_lattice(n: &NagataStructure, restricted: bool) -> Result<CheckReport, Error> {
    let meet = n.carrier.meet.as_ref().ok_or(Error::MissingComponent("meet"))?;
    let join = n.carrier.join.as_ref().ok_or(Error::MissingComponent("join"))?;
    let (lres, rres) = n.residuals.as_ref().ok_or(Error::MissingComponent("residuals"))?;
    let one = if restricted {
        n.carrier.unit.ok_or(Error::MissingComponent("unit"))?
    } else {
        n.one.ok_or(Error::MissingComponent("one"))?
    };
    let family = if restricted {
        "nagata.restricted-lattice"
    } else {
        "nagata.lattice"
    };
    let ax = |suffix: &str| {
        let mut s = alloc::string::String::from(family);
        s.push('.');
        s.push_str(suffix);
        s
    };
    let me = |x: usize, y: usize| meet.get(x, y);
    let jo = |x: usize, y: usize| join.get(x, y);
    let un = |x: usize, y: usize| lres.get(x, y);
    let ov = |y: usize, x: usize| rres.get(y, x);
    Ok(conclude(family, || {
        let r = n.residuated().expect("residuals present");
        scan_posemigroup(&r.base).map_err(|e| e.scoped(family))?;
        crate::algebra::scan_residuation(&r).map_err(|e| e.scoped(family))?;
        scan_pre_conucleus(n, family)?;
        scan_sigma_closure(n, family)?;
        ensure(n.s(one) == one, &ax("one-in-sigma-image"), &[("1", one)], "σ1 = 1")?;
        if restricted {
            scan_interior_closure(n, family)?;
        }
        let size = n.size();
        for x in 0..size {
            for y in 0..size {
                let w = [("x", x), ("y", y)];
                let (sx, sy, gx, gy) = (n.s(x), n.s(y), n.g(x), n.g(y));
                let xy = n.mul(x, y);
                ensure(n.s(xy) == n.mul(sx, sy), &ax("sigma-mul"), &w, "σ(xy) = σx·σy")?;
                if restricted {
                    ensure(
                        xy == jo(n.mul(sx, y), n.mul(x, sy)),
                        &ax("mul-split"),
                        &w,
                        "xy = σx·y ∨ x·σy",
                    )?;
                    ensure(
                        me(un(sx, y), un(x, gy)) == un(x, y),
                        &ax("under-split"),
                        &w,
                        "σx∖y ∧ x∖γy = x∖y",
                    )?;
                    ensure(
                        me(ov(y, sx), ov(gy, x)) == ov(y, x),
                        &ax("over-split"),
                        &w,
                        "y/σx ∧ γy/x = y/x",
                    )?;
                } else {
                    ensure(
                        n.g(xy) == n.g(jo(n.mul(sx, gy), n.mul(gx, sy))),
                        &ax("gamma-mul"),
                        &w,
                        "γ(xy) = γ(σx·γy ∨ γx·σy)",
                    )?;
                    ensure(
                        n.s(me(x, y)) == n.s(me(sx, sy)),
                        &ax("sigma-meet"),
                        &w,
                        "σ(x∧y) = σ(σx∧σy)",
                    )?;
                    ensure(
                        n.g(jo(x, y)) == n.g(jo(gx, gy)),
                        &ax("gamma-join"),
                        &w,
                        "γ(x∨y) = γ(γx∨γy)",
                    )?;
                    ensure(n.s(jo(x, y)) == jo(sx, sy), &ax("sigma-join"), &w, "σ(x∨y) = σx∨σy")?;
                    ensure(n.g(me(x, y)) == me(gx, gy), &ax("gamma-meet"), &w, "γ(x∧y) = γx∧γy")?;
                    ensure(
                        n.s(un(x, y)) == n.s(me(un(sx, sy), un(gx, gy))),
                        &ax("sigma-under"),
                        &w,
                        "σ(x∖y) = σ(σx∖σy ∧ γx∖γy)",
                    )?;
                    ensure(
                        n.s(ov(y, x)) == n.s(me(ov(sy, sx), ov(gy, gx))),
                        &ax("sigma-over"),
                        &w,
                        "σ(y/x) = σ(σy/σx ∧ γy/γx)",
                    )?;
                    ensure(
                        !n.leq(one, n.s(un(x, y))) || n.leq(x, y),
                        &ax("quasi-under"),
                        &w,
                        "1 ≤ σ(x∖y) implies x ≤ y",
                    )?;
                    ensure(
                        !n.leq(one, n.s(ov(y, x))) || n.leq(x, y),
                        &ax("quasi-over"),
                        &w,
                        "1 ≤ σ(y/x) implies x ≤ y",
                    )?;
                }
                ensure(n.g(un(x, y)) == un(sx, gy), &ax("gamma-under"), &w, "σx∖γy = γ(x∖y)")?;
                ensure(n.g(ov(y, x)) == ov(gy, sx), &ax("gamma-over"), &w, "γy/σx = γ(y/x)")?;
                ensure(
                    !(n.leq(sx, sy) && n.leq(gx, gy)) || n.leq(x, y),
                    &ax("quasi-inequality"),
                    &w,
                    "σx ≤ σy and γx ≤ γy imply x ≤ y",
                )?;
            }
            if !restricted {
                ensure(
                    n.leq(one, n.s(un(x, x))) && n.leq(one, n.s(ov(x, x))),
                    &ax("one-below-sigma-division"),
                    &[("x", x)],
                    "1 ≤ σ(x∖x) and 1 ≤ σ(x/x)",
                )?;
            }
        }
        scan_point_equations(n, family, un, ov)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeVariant {
    Bilattice,
    Sesquilattice,
}

/// The equations for `⊕` (and `⊗` in the bilattice case). The sesquilattice
/// variant also checks the decomposition `m = σm ⊕ γm`.
pub fn check_bilattice_sesquilattice(n: &NagataStructure, variant: LatticeVariant) -> Result<CheckReport, Error> {
    let meet = n.carrier.meet.as_ref().ok_or(Error::MissingComponent("meet"))?;
    let join = n.carrier.join.as_ref().ok_or(Error::MissingComponent("join"))?;
    let oplus = n.oplus.as_ref().ok_or(Error::MissingComponent("oplus"))?;
    let otimes = match variant {
        LatticeVariant::Bilattice => Some(n.otimes.as_ref().ok_or(Error::MissingComponent("otimes"))?),
        LatticeVariant::Sesquilattice => None,
    };
    let family = match variant {
        LatticeVariant::Bilattice => "nagata.bilattice",
        LatticeVariant::Sesquilattice => "nagata.sesquilattice",
    };
    let ax = |suffix: &str| {
        let mut s = alloc::string::String::from(family);
        s.push('.');
        s.push_str(suffix);
        s
    };
    Ok(conclude(family, || {
        for x in 0..n.size() {
            for y in 0..n.size() {
                let w = [("x", x), ("y", y)];
                let o = oplus.get(x, y);
                ensure(n.s(o) == n.s(meet.get(x, y)), &ax("sigma-oplus"), &w, "σ(x⊕y) = σ(x∧y)")?;
                ensure(n.g(o) == n.g(join.get(x, y)), &ax("gamma-oplus"), &w, "γ(x⊕y) = γ(x∨y)")?;
                if let Some(t) = otimes {
                    let o = t.get(x, y);
                    ensure(
                        n.s(o) == n.s(join.get(x, y)),
                        &ax("sigma-otimes"),
                        &w,
                        "σ(x⊗y) = σ(x∨y)",
                    )?;
                    ensure(
                        n.g(o) == n.g(meet.get(x, y)),
                        &ax("gamma-otimes"),
                        &w,
                        "γ(x⊗y) = γ(x∧y)",
                    )?;
                }
            }
        }
        if variant == LatticeVariant::Sesquilattice {
            for m in 0..n.size() {
                ensure(
                    oplus.get(n.s(m), n.g(m)) == m,
                    &ax("decomposition"),
                    &[("m", m)],
                    "m = σm ⊕ γm",
                )?;
            }
        }
        Ok(())
    }))
}

/// The structural bimodule of a Nagata structure, with the carrier elements
/// that its scalars (`N_σ`) and module elements (`N_γ`) stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralBimodule {
    pub bimodule: Bimodule,
    pub scalars: Vec<usize>,
    pub module: Vec<usize>,
}

impl StructuralBimodule {
    pub fn scalar_index(&self, m: usize) -> Option<usize> {
        self.scalars.binary_search(&m).ok()
    }

    pub fn module_index(&self, m: usize) -> Option<usize> {
        self.module.binary_search(&m).ok()
    }
}

/// `N_σ` acting on `N_γ` by `a∗x = γ(a·x)`, `x∗a = γ(x·a)`, with residuals
/// `x∗⟍y = σ(x ∖γ y)`, `a⟍∗x = γ(a ∖γ x)`, `y/∗x = σ(y /γ x)`,
/// `x∗/a = γ(x /γ a)` and join `⊔`.
pub fn structural_bimodule(n: &NagataStructure) -> Result<StructuralBimodule, Error> {
    let pre = conclude("nagata.structural", || {
        scan_pre_conucleus(n, "nagata.structural")?;
        scan_sigma_closure(n, "nagata.structural")?;
        scan_gamma_operations(n, "nagata.structural")
    });
    if !pre.passed {
        return Err(Error::AxiomFailure(pre));
    }
    let scalars = n.sigma_image();
    let module = n.gamma_image();
    let (sc, _) = n.carrier.restrict(&scalars)?;
    let mut sidx = vec![usize::MAX; n.size()];
    for (k, &e) in scalars.iter().enumerate() {
        sidx[e] = k;
    }
    let mut midx = vec![usize::MAX; n.size()];
    for (k, &e) in module.iter().enumerate() {
        midx[e] = k;
    }
    let (ns, nm) = (scalars.len(), module.len());
    let mposet = n.carrier.poset.sub_poset(&module);
    let mjoin = Table::square(nm, |i, j| midx[n.gj(module[i], module[j]).expect("γ-join checked")]);
    let lact = Table::from_fn(ns, nm, |a, x| midx[n.g(n.mul(scalars[a], module[x]))]);
    let ract = Table::from_fn(nm, ns, |x, a| midx[n.g(n.mul(module[x], scalars[a]))]);
    let gl = |m: usize, k: usize| n.gl(m, k).expect("γ-residual checked");
    let gr = |k: usize, m: usize| n.gr(k, m).expect("γ-residual checked");
    let residuals = ActionResiduals {
        left_under: Table::from_fn(ns, nm, |a, x| midx[n.g(gl(scalars[a], module[x]))]),
        left_over: Table::square(nm, |y, x| sidx[n.s(gr(module[y], module[x]))]),
        right_under: Table::square(nm, |x, y| sidx[n.s(gl(module[x], module[y]))]),
        right_over: Table::from_fn(nm, ns, |y, a| midx[n.g(gr(module[y], scalars[a]))]),
    };
    let mmeet = mposet.meet_table();
    let mut b = Bimodule::new(sc, mposet, mjoin, lact, ract)?
        .with_residuals(residuals)?
        .with_point(midx[n.point])?;
    if let Some(t) = mmeet {
        b = b.with_module_meet(t)?;
    }
    Ok(StructuralBimodule {
        bimodule: b,
        scalars,
        module,
    })
}

/// Checks that `⟨fs, fm⟩` is an isomorphism of bimodules from `a` to `b`:
/// bijective, order-reflecting and preserving every operation both carry.
pub fn check_bimodule_iso(a: &Bimodule, b: &Bimodule, fs: &[usize], fm: &[usize]) -> CheckReport {
    conclude("bimodule-iso", || {
        let (ns, nm) = (a.scalar_count(), a.module_count());
        ensure(
            ns == b.scalar_count() && nm == b.module_count() && fs.len() == ns && fm.len() == nm,
            "bimodule-iso.sizes",
            &[],
            "both sorts have matching sizes",
        )?;
        for (k, f) in [fs, fm].iter().enumerate() {
            let mut seen = vec![false; f.len()];
            for (i, &v) in f.iter().enumerate() {
                ensure(
                    v < seen.len() && !seen[v],
                    "bimodule-iso.bijective",
                    &[("sort", k), ("x", i)],
                    "the map is a bijection",
                )?;
                seen[v] = true;
            }
        }
        let (sa, sb) = (&a.scalars, &b.scalars);
        for x in 0..ns {
            for y in 0..ns {
                let w = [("a", x), ("b", y)];
                ensure(
                    sa.leq(x, y) == sb.leq(fs[x], fs[y]),
                    "bimodule-iso.scalar-order",
                    &w,
                    "a ≤ b iff f(a) ≤ f(b)",
                )?;
                ensure(
                    fs[sa.mul(x, y)] == sb.mul(fs[x], fs[y]),
                    "bimodule-iso.scalar-mul",
                    &w,
                    "f(ab) = f(a)f(b)",
                )?;
            }
        }
        ensure(
            sa.unit.map(|u| fs[u]) == sb.unit || sa.unit.is_none() || sb.unit.is_none(),
            "bimodule-iso.unit",
            &[],
            "f(1) = 1",
        )?;
        for x in 0..nm {
            for y in 0..nm {
                let w = [("x", x), ("y", y)];
                ensure(
                    a.module.leq(x, y) == b.module.leq(fm[x], fm[y]),
                    "bimodule-iso.module-order",
                    &w,
                    "x ≤ y iff f(x) ≤ f(y)",
                )?;
                ensure(
                    fm[a.mjoin(x, y)] == b.mjoin(fm[x], fm[y]),
                    "bimodule-iso.module-join",
                    &w,
                    "f(x∨y) = f(x)∨f(y)",
                )?;
            }
        }
        for s in 0..ns {
            for x in 0..nm {
                let w = [("a", s), ("x", x)];
                ensure(
                    fm[a.lact(s, x)] == b.lact(fs[s], fm[x]),
                    "bimodule-iso.left-action",
                    &w,
                    "f(a∗x) = f(a)∗f(x)",
                )?;
                ensure(
                    fm[a.ract(x, s)] == b.ract(fm[x], fs[s]),
                    "bimodule-iso.right-action",
                    &w,
                    "f(x∗a) = f(x)∗f(a)",
                )?;
            }
        }
        ensure(a.point.map(|z| fm[z]) == b.point, "bimodule-iso.point", &[], "f(0) = 0")?;
        if let (Some(ra), Some(rb)) = (&a.residuals, &b.residuals) {
            for s in 0..ns {
                for x in 0..nm {
                    let w = [("a", s), ("x", x)];
                    ensure(
                        fm[ra.left_under.get(s, x)] == rb.left_under.get(fs[s], fm[x]),
                        "bimodule-iso.left-under",
                        &w,
                        "f(a⟍∗x) = f(a)⟍∗f(x)",
                    )?;
                    ensure(
                        fm[ra.right_over.get(x, s)] == rb.right_over.get(fm[x], fs[s]),
                        "bimodule-iso.right-over",
                        &w,
                        "f(x∗/a) = f(x)∗/f(a)",
                    )?;
                }
            }
            for x in 0..nm {
                for y in 0..nm {
                    let w = [("x", x), ("y", y)];
                    ensure(
                        fs[ra.left_over.get(y, x)] == rb.left_over.get(fm[y], fm[x]),
                        "bimodule-iso.left-over",
                        &w,
                        "f(y/∗x) = f(y)/∗f(x)",
                    )?;
                    ensure(
                        fs[ra.right_under.get(x, y)] == rb.right_under.get(fm[x], fm[y]),
                        "bimodule-iso.right-under",
                        &w,
                        "f(x∗⟍y) = f(x)∗⟍f(y)",
                    )?;
                }
            }
        }
        Ok(())
    })
}

/// `ε_S` and `ε_M` as index maps from `m` into the structural bimodule of
/// its Nagata product `n`.
pub fn counit_inverse(
    m: &Bimodule,
    n: &NagataStructure,
    sb: &StructuralBimodule,
) -> Result<(Vec<usize>, Vec<usize>), Error> {
    let sp = n.space.as_ref().ok_or(Error::MissingComponent("pair coordinates"))?;
    let mut fs = Vec::with_capacity(m.scalar_count());
    for a in 0..m.scalar_count() {
        let (x, y) = embed_scalar(m, a)?;
        let e = sp.get(x, y).ok_or(Error::NotClosed("ε_S"))?;
        fs.push(sb.scalar_index(e).ok_or(Error::NotClosed("ε_S"))?);
    }
    let mut fm = Vec::with_capacity(m.module_count());
    for x in 0..m.module_count() {
        let (a, y) = embed_module(m, x)?;
        let e = sp.get(a, y).ok_or(Error::NotClosed("ε_M"))?;
        fm.push(sb.module_index(e).ok_or(Error::NotClosed("ε_M"))?);
    }
    Ok((fs, fm))
}

/// The counit: `⟨ε_S, ε_M⟩` is an isomorphism from `m` onto the structural
/// bimodule of its Nagata product `n`.
pub fn check_counit(m: &Bimodule, n: &NagataStructure) -> Result<CheckReport, Error> {
    let sb = structural_bimodule(n)?;
    let (fs, fm) = counit_inverse(m, n, &sb)?;
    let mut r = check_bimodule_iso(m, &sb.bimodule, &fs, &fm);
    if r.passed {
        r.axiom = "nagata.counit".into();
    } else {
        r = r.scoped("nagata.counit");
    }
    Ok(r)
}

/// ε_S and ε_M on a product of a cyclic pointed residuated bimodule: both
/// forms of each embedding agree, ε_S is an order embedding onto N_σ that
/// preserves products and existing joins, and ε_M an order embedding onto
/// N_γ.
pub fn check_embeddings(m: &Bimodule, n: &NagataStructure) -> Result<CheckReport, Error> {
    let sp = n.space.as_ref().ok_or(Error::MissingComponent("pair coordinates"))?;
    let z = m.point.ok_or(Error::MissingComponent("point"))?;
    let r = m.residuals()?;
    let mut es = Vec::new();
    for a in 0..m.scalar_count() {
        let (x, y) = embed_scalar(m, a)?;
        es.push(sp.get(x, y).ok_or(Error::NotClosed("ε_S"))?);
    }
    let mut em = Vec::new();
    for x in 0..m.module_count() {
        let (a, y) = embed_module(m, x)?;
        em.push(sp.get(a, y).ok_or(Error::NotClosed("ε_M"))?);
    }
    Ok(conclude("nagata.embeddings", || {
        let s = &m.scalars;
        for a in 0..m.scalar_count() {
            ensure(
                m.lact(a, z) == m.ract(z, a),
                "nagata.embeddings.scalar-forms",
                &[("a", a)],
                "⟨a, a∗0⟩ = ⟨a, 0∗a⟩",
            )?;
            ensure(
                n.s(es[a]) == es[a],
                "nagata.embeddings.scalar-fixed",
                &[("a", a)],
                "σ ε_S(a) = ε_S(a)",
            )?;
            for b in 0..m.scalar_count() {
                let w = [("a", a), ("b", b)];
                ensure(
                    s.leq(a, b) == n.leq(es[a], es[b]),
                    "nagata.embeddings.scalar-order",
                    &w,
                    "a ≤ b iff ε_S a ≤ ε_S b",
                )?;
                ensure(
                    es[s.mul(a, b)] == n.mul(es[a], es[b]),
                    "nagata.embeddings.scalar-mul",
                    &w,
                    "ε_S(ab) = ε_S a ∘ ε_S b",
                )?;
                if let (Some(j), Some(cj)) = (s.join(a, b), n.carrier.join(es[a], es[b])) {
                    ensure(
                        es[j] == cj,
                        "nagata.embeddings.scalar-join",
                        &w,
                        "ε_S(a∨b) = ε_S a ∨ ε_S b",
                    )?;
                }
            }
        }
        for x in 0..m.module_count() {
            ensure(
                r.right_under.get(z, x) == r.left_over.get(x, z),
                "nagata.embeddings.module-forms",
                &[("x", x)],
                "⟨0∗⟍x, x⟩ = ⟨x/∗0, x⟩",
            )?;
            ensure(
                n.g(em[x]) == em[x],
                "nagata.embeddings.module-fixed",
                &[("x", x)],
                "γ ε_M(x) = ε_M(x)",
            )?;
            for y in 0..m.module_count() {
                ensure(
                    m.module.leq(x, y) == n.leq(em[x], em[y]),
                    "nagata.embeddings.module-order",
                    &[("x", x), ("y", y)],
                    "x ≤ y iff ε_M x ≤ ε_M y",
                )?;
            }
        }
        let mut img_s = es.clone();
        img_s.sort_unstable();
        img_s.dedup();
        ensure(
            img_s == n.sigma_image(),
            "nagata.embeddings.scalar-onto",
            &[],
            "ε_S[S] = N_σ",
        )?;
        let mut img_m = em.clone();
        img_m.sort_unstable();
        img_m.dedup();
        ensure(
            img_m == n.gamma_image(),
            "nagata.embeddings.module-onto",
            &[],
            "ε_M[M] = N_γ",
        )
    }))
}

/// The six equations recovering the bimodule operations from the product.
pub fn check_action_recovery(m: &Bimodule, n: &NagataStructure) -> Result<CheckReport, Error> {
    let sp = n.space.as_ref().ok_or(Error::MissingComponent("pair coordinates"))?;
    let r = m.residuals()?;
    let es = (0..m.scalar_count())
        .map(|a| embed_scalar(m, a).and_then(|(x, y)| sp.get(x, y).ok_or(Error::NotClosed("ε_S"))))
        .collect::<Result<Vec<_>, _>>()?;
    let em = (0..m.module_count())
        .map(|x| embed_module(m, x).and_then(|(a, y)| sp.get(a, y).ok_or(Error::NotClosed("ε_M"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(conclude("nagata.recovery", || {
        for a in 0..m.scalar_count() {
            for x in 0..m.module_count() {
                let w = [("a", a), ("x", x)];
                ensure(
                    em[m.ract(x, a)] == n.g(n.mul(em[x], es[a])),
                    "nagata.recovery.right-action",
                    &w,
                    "ε_M(x∗a) = γ(ε_M x ∘ ε_S a)",
                )?;
                ensure(
                    em[m.lact(a, x)] == n.g(n.mul(es[a], em[x])),
                    "nagata.recovery.left-action",
                    &w,
                    "ε_M(a∗x) = γ(ε_S a ∘ ε_M x)",
                )?;
                ensure(
                    Some(em[r.left_under.get(a, x)]) == n.gl(es[a], em[x]).map(|v| n.g(v)),
                    "nagata.recovery.left-under",
                    &w,
                    "ε_M(a⟍∗x) = γ(ε_S a ∖γ ε_M x)",
                )?;
                ensure(
                    Some(em[r.right_over.get(x, a)]) == n.gr(em[x], es[a]).map(|v| n.g(v)),
                    "nagata.recovery.right-over",
                    &w,
                    "ε_M(x∗/a) = γ(ε_M x /γ ε_S a)",
                )?;
            }
        }
        for x in 0..m.module_count() {
            for y in 0..m.module_count() {
                let w = [("x", x), ("y", y)];
                ensure(
                    Some(es[r.right_under.get(x, y)]) == n.gl(em[x], em[y]).map(|v| n.s(v)),
                    "nagata.recovery.right-under",
                    &w,
                    "ε_S(x∗⟍y) = σ(ε_M x ∖γ ε_M y)",
                )?;
                ensure(
                    Some(es[r.left_over.get(y, x)]) == n.gr(em[y], em[x]).map(|v| n.s(v)),
                    "nagata.recovery.left-over",
                    &w,
                    "ε_S(y/∗x) = σ(ε_M y /γ ε_M x)",
                )?;
            }
        }
        Ok(())
    }))
}

/// σ is an interior operator preserving products, γ a closure operator
/// preserving every meet that exists in the carrier.
pub fn check_recovery_maps(n: &NagataStructure) -> CheckReport {
    conclude("nagata.recovery-maps", || {
        let p = &n.carrier.poset;
        ensure(
            classify_operator(p, &n.sigma).is_interior(),
            "nagata.recovery-maps.sigma-interior",
            &[],
            "σ is interior",
        )?;
        ensure(
            classify_operator(p, &n.gamma).is_closure(),
            "nagata.recovery-maps.gamma-closure",
            &[],
            "γ is a closure",
        )?;
        for x in 0..n.size() {
            for y in 0..n.size() {
                let w = [("x", x), ("y", y)];
                ensure(
                    n.s(n.mul(x, y)) == n.mul(n.s(x), n.s(y)),
                    "nagata.recovery-maps.sigma-mul",
                    &w,
                    "σ(x∘y) = σx∘σy",
                )?;
                if let Some(k) = p.meet(x, y) {
                    ensure(
                        p.meet(n.g(x), n.g(y)) == Some(n.g(k)),
                        "nagata.recovery-maps.gamma-meet",
                        &w,
                        "γ(x∧y) = γx∧γy",
                    )?;
                }
            }
        }
        Ok(())
    })
}

/// The unit `m ↦ ⟨σm, γm⟩` of the adjunction, landing in the (restricted)
/// Nagata product of the structural bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitMap {
    pub structural: StructuralBimodule,
    pub target: NagataStructure,
    /// `image[m]` is the target element `⟨σm, γm⟩`, absent if that pair lies
    /// outside the target universe.
    pub image: Vec<Option<usize>>,
}

pub fn unit_map(n: &NagataStructure, restricted: bool) -> Result<UnitMap, Error> {
    let structural = structural_bimodule(n)?;
    let target = nagata_structure(&structural.bimodule, restricted)?;
    let sp = target.space.as_ref().expect("product structures carry coordinates");
    let image = (0..n.size())
        .map(|m| {
            let a = structural.scalar_index(n.s(m))?;
            let x = structural.module_index(n.g(m))?;
            sp.get(a, x)
        })
        .collect();
    Ok(UnitMap {
        structural,
        target,
        image,
    })
}

/// The unit is a well-defined injective order embedding preserving every
/// operation both sides carry.
pub fn check_unit_map(n: &NagataStructure, u: &UnitMap) -> CheckReport {
    conclude("nagata.unit", || {
        let t = &u.target;
        let mut f = Vec::with_capacity(n.size());
        for (m, img) in u.image.iter().enumerate() {
            match img {
                Some(v) => f.push(*v),
                None => {
                    return Err(CheckReport::fail(
                        "nagata.unit.membership",
                        &[("m", m)],
                        "⟨σm, γm⟩ lies in the product",
                    ))
                }
            }
        }
        for x in 0..n.size() {
            for y in 0..n.size() {
                let w = [("x", x), ("y", y)];
                ensure(x == y || f[x] != f[y], "nagata.unit.injective", &w, "u is injective")?;
                ensure(
                    n.leq(x, y) == t.leq(f[x], f[y]),
                    "nagata.unit.order",
                    &w,
                    "x ≤ y iff ux ≤ uy",
                )?;
                ensure(
                    f[n.mul(x, y)] == t.mul(f[x], f[y]),
                    "nagata.unit.mul",
                    &w,
                    "u(xy) = ux∘uy",
                )?;
                let pairs = [
                    (
                        "nagata.unit.gamma-under",
                        n.gl(x, y),
                        t.gl(f[x], f[y]),
                        "u(x ∖γ y) = ux ∖γ uy",
                    ),
                    (
                        "nagata.unit.gamma-over",
                        n.gr(x, y),
                        t.gr(f[x], f[y]),
                        "u(x /γ y) = ux /γ uy",
                    ),
                    (
                        "nagata.unit.gamma-join",
                        n.gj(x, y),
                        t.gj(f[x], f[y]),
                        "u(x ⊔ y) = ux ⊔ uy",
                    ),
                    (
                        "nagata.unit.meet",
                        n.carrier.meet(x, y),
                        t.carrier.meet(f[x], f[y]),
                        "u(x∧y) = ux∧uy",
                    ),
                    (
                        "nagata.unit.join",
                        n.carrier.join(x, y),
                        t.carrier.join(f[x], f[y]),
                        "u(x∨y) = ux∨uy",
                    ),
                    (
                        "nagata.unit.under",
                        n.residuals.as_ref().map(|r| r.0.get(x, y)),
                        t.residuals.as_ref().map(|r| r.0.get(f[x], f[y])),
                        "u(x∖y) = ux∖uy",
                    ),
                    (
                        "nagata.unit.over",
                        n.residuals.as_ref().map(|r| r.1.get(x, y)),
                        t.residuals.as_ref().map(|r| r.1.get(f[x], f[y])),
                        "u(x/y) = ux/uy",
                    ),
                    (
                        "nagata.unit.oplus",
                        n.oplus.as_ref().map(|o| o.get(x, y)),
                        t.oplus.as_ref().map(|o| o.get(f[x], f[y])),
                        "u(x⊕y) = ux⊕uy",
                    ),
                    (
                        "nagata.unit.otimes",
                        n.otimes.as_ref().map(|o| o.get(x, y)),
                        t.otimes.as_ref().map(|o| o.get(f[x], f[y])),
                        "u(x⊗y) = ux⊗uy",
                    ),
                ];
                for (axiom, src, dst, law) in pairs {
                    if let (Some(s), Some(d)) = (src, dst) {
                        ensure(f[s] == d, axiom, &w, law)?;
                    }
                }
            }
            let w = [("x", x)];
            ensure(f[n.s(x)] == t.s(f[x]), "nagata.unit.sigma", &w, "u(σx) = σ(ux)")?;
            ensure(f[n.g(x)] == t.g(f[x]), "nagata.unit.gamma", &w, "u(γx) = γ(ux)")?;
            if let Some(neg) = &n.negation {
                let image = f[neg.apply(x)];
                let sb = &u.structural;
                let (a, y) = t.space.as_ref().expect("product").pair(f[x]);
                // ⊸⟨a, y⟩ = ⟨ρy, λa⟩ with λ = γ∘⊸ and ρ = σ∘⊸ in N.
                let rho = sb.scalar_index(n.s(neg.apply(sb.module[y])));
                let lam = sb.module_index(n.g(neg.apply(sb.scalars[a])));
                let expected = rho
                    .zip(lam)
                    .and_then(|(r, l)| t.space.as_ref().expect("product").get(r, l));
                ensure(
                    Some(image) == expected,
                    "nagata.unit.negation",
                    &w,
                    "u(⊸x) = ⟨ρ γx, λ σx⟩",
                )?;
            }
        }
        ensure(f[n.point] == t.point, "nagata.unit.point", &[], "u(0) = 0")
    })
}

/// Both triangle identities of the adjunction on concrete objects:
/// the bimodule side `⟨a,x⟩ ↦ ⟨ε_S a, ε_M x⟩ ↦ ⟨a,x⟩` on the product of
/// `m`, and the Nagata side `a ↦ ⟨a, γ(a·0)⟩ ↦ a`, `x ↦ ⟨0∗⟍x, x⟩ ↦ x` on
/// the structural bimodule of that product.
pub fn check_triangle_identities(m: &Bimodule, restricted: bool) -> Result<CheckReport, Error> {
    let n = nagata_structure(m, restricted)?;
    let sp = n.space.clone().expect("product");
    let sb = structural_bimodule(&n)?;
    let (fs, fm) = counit_inverse(m, &n, &sb)?;
    let inv = |f: &[usize], v: usize| f.iter().position(|&w| w == v);
    let u = unit_map(&n, restricted)?;
    let tsp = u.target.space.clone().expect("product");
    Ok(conclude("nagata.triangle", || {
        for i in 0..n.size() {
            let (a, x) = sp.pair(i);
            let w = [("a", a), ("x", x)];
            let (sa, gx) = (sb.scalar_index(n.s(i)), sb.module_index(n.g(i)));
            ensure(
                sa == Some(fs[a]) && gx == Some(fm[x]),
                "nagata.triangle.product-unit",
                &w,
                "⟨σ⟨a,x⟩, γ⟨a,x⟩⟩ = ⟨ε_S a, ε_M x⟩",
            )?;
            let back = sa.and_then(|s| inv(&fs, s)).zip(gx.and_then(|g| inv(&fm, g)));
            ensure(
                back == Some((a, x)),
                "nagata.triangle.product",
                &w,
                "⟨ε_S a, ε_M x⟩ ↦ ⟨a,x⟩",
            )?;
        }
        let bm = &sb.bimodule;
        let (tfs, tfm) = counit_inverse(
            bm,
            &u.target,
            &structural_bimodule(&u.target)
                .map_err(|e| CheckReport::fail("nagata.triangle.structural", &[], alloc::format!("{e}")))?,
        )
        .map_err(|e| CheckReport::fail("nagata.triangle.structural", &[], alloc::format!("{e}")))?;
        let tsb = structural_bimodule(&u.target).expect("checked above");
        for (k, &e) in sb.scalars.iter().enumerate() {
            let w = [("a", e)];
            let Some(img) = u.image[e] else {
                return Err(CheckReport::fail(
                    "nagata.triangle.structural-scalar",
                    &w,
                    "u(a) is defined",
                ));
            };
            let (pa, px) = tsp.pair(img);
            let z = bm.point.expect("structural bimodule is pointed");
            ensure(
                pa == k && px == bm.lact(k, z),
                "nagata.triangle.structural-scalar",
                &w,
                "u(a) = ⟨a, γ(a·0)⟩",
            )?;
            ensure(
                tsb.scalar_index(img).and_then(|s| inv(&tfs, s)) == Some(k),
                "nagata.triangle.structural-scalar",
                &w,
                "⟨a, γ(a·0)⟩ ↦ a",
            )?;
        }
        for (k, &e) in sb.module.iter().enumerate() {
            let w = [("x", e)];
            let Some(img) = u.image[e] else {
                return Err(CheckReport::fail(
                    "nagata.triangle.structural-module",
                    &w,
                    "u(x) is defined",
                ));
            };
            let (pa, px) = tsp.pair(img);
            let z = bm.point.expect("structural bimodule is pointed");
            ensure(
                px == k && pa == bm.residuals.as_ref().expect("residuated").right_under.get(z, k),
                "nagata.triangle.structural-module",
                &w,
                "u(x) = ⟨0∗⟍x, x⟩",
            )?;
            ensure(
                tsb.module_index(img).and_then(|g| inv(&tfm, g)) == Some(k),
                "nagata.triangle.structural-module",
                &w,
                "⟨0∗⟍x, x⟩ ↦ x",
            )?;
        }
        Ok(())
    }))
}

/// For each `a ∈ N_σ` and `x ∈ N_γ` (with `γ(a·0) ≤ x` and `γ(0·a) ≤ x`
/// when `restricted`) some `m` has `σm = a` and `γm = x`.
pub fn check_unit_surjectivity(n: &NagataStructure, restricted: bool) -> CheckReport {
    conclude("nagata.unit-surjectivity", || {
        let z = n.point;
        let gam = n.gamma_image();
        for a in n.sigma_image() {
            for &x in &gam {
                if restricted && !(n.leq(n.g(n.mul(a, z)), x) && n.leq(n.g(n.mul(z, a)), x)) {
                    continue;
                }
                ensure(
                    (0..n.size()).any(|m| n.s(m) == a && n.g(m) == x),
                    "nagata.unit-surjectivity",
                    &[("a", a), ("x", x)],
                    "some m has σm = a and γm = x",
                )?;
            }
        }
        Ok(())
    })
}
