//! The structure file format: a JSON document with a top-level `kind` tag,
//! row-major integer tables and named constants.
//!
//! Orders are 0/1 matrices with `order[i][j] = 1` iff `i ≤ j`. Optional
//! tables that can be computed from the order (meets, joins, residuals,
//! relative pseudocomplements) may be omitted on input and are always
//! written out.

use std::fmt::Write as _;
use std::path::Path;

use nagata_core::algebra::{
    check_brouwerian, check_posemigroup, check_residuated_l_semigroup, check_residuated_lattice, compute_residuals,
    BrouwerianAlgebra, Posemigroup, ResiduatedStructure,
};
use nagata_core::bimodule::{check_bimodule, ActionResiduals, Bimodule, BimoduleLevel};
use nagata_core::fractions::{check_bimonoid, Bimonoid};
use nagata_core::nagata::{check_nagata_posemigroup, NagataStructure, PairSpace};
use nagata_core::order::{check_poset, EndoMap, Poset};
use nagata_core::report::CheckReport;
use nagata_core::table::Table;
use nagata_core::twist::{check_twistable_pair, TwistLevel, TwistablePair};
use nagata_core::Error as CoreError;
use serde::{Deserialize, Serialize};
use serde_json::Value;

type Rows = Vec<Vec<usize>>;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {source}")]
    Field {
        field: &'static str,
        #[source]
        source: CoreError,
    },
    #[error("validation failed: {0}")]
    Validation(CheckReport),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl FormatError {
    /// The report naming the violated invariant, for validation failures.
    pub fn report(&self) -> Option<&CheckReport> {
        match self {
            FormatError::Validation(r) => Some(r),
            _ => None,
        }
    }
}

fn field(field: &'static str) -> impl FnOnce(CoreError) -> FormatError {
    move |source| FormatError::Field { field, source }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub order: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosemigroupDoc {
    #[serde(flatten)]
    pub order: OrderDoc,
    pub mul: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResiduatedDoc {
    #[serde(flatten)]
    pub base: PosemigroupDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lres: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rres: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrouwerianDoc {
    #[serde(flatten)]
    pub order: OrderDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imp: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualsDoc {
    pub left_under: Rows,
    pub left_over: Rows,
    pub right_under: Rows,
    pub right_over: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleDoc {
    pub scalars: PosemigroupDoc,
    pub module: OrderDoc,
    pub module_join: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_meet: Option<Rows>,
    pub lact: Rows,
    pub ract: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualsDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsDoc {
    pub scalars: usize,
    pub module: usize,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NagataDoc {
    #[serde(default)]
    pub restricted: bool,
    #[serde(flatten)]
    pub carrier: PosemigroupDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lres: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rres: Option<Rows>,
    pub sigma: Vec<usize>,
    pub gamma: Vec<usize>,
    pub point: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oplus: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub otimes: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<PairsDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistablePairDoc {
    pub plus: PosemigroupDoc,
    pub minus: ResiduatedDoc,
    pub lambda: Vec<usize>,
    pub rho: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimonoidDoc {
    #[serde(flatten)]
    pub order: OrderDoc,
    pub mul: Rows,
    pub one: usize,
    pub add: Rows,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StructureFile {
    Poset(OrderDoc),
    Posemigroup(PosemigroupDoc),
    ResiduatedLattice(ResiduatedDoc),
    Brouwerian(BrouwerianDoc),
    Bimodule(BimoduleDoc),
    Nagata(NagataDoc),
    TwistablePair(TwistablePairDoc),
    Bimonoid(BimonoidDoc),
}

/// A loaded structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Poset(Poset),
    Posemigroup(Posemigroup),
    ResiduatedLattice {
        algebra: ResiduatedStructure,
        point: Option<usize>,
    },
    Brouwerian(BrouwerianAlgebra),
    Bimodule(Bimodule),
    Nagata {
        structure: NagataStructure,
        restricted: bool,
    },
    TwistablePair(TwistablePair),
    Bimonoid(Bimonoid),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Poset(_) => "poset",
            Structure::Posemigroup(_) => "posemigroup",
            Structure::ResiduatedLattice { .. } => "residuated-lattice",
            Structure::Brouwerian(_) => "brouwerian",
            Structure::Bimodule(_) => "bimodule",
            Structure::Nagata { .. } => "nagata",
            Structure::TwistablePair(_) => "twistable-pair",
            Structure::Bimonoid(_) => "bimonoid",
        }
    }
}

fn order_rows(p: &Poset) -> Rows {
    p.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(usize::from).collect())
        .collect()
}

fn order_doc(p: &Poset) -> OrderDoc {
    OrderDoc {
        order: order_rows(p),
        labels: p.labels().map(<[String]>::to_vec),
    }
}

fn poset_of(doc: &OrderDoc, name: &'static str) -> Result<Poset, FormatError> {
    let mut rows = Vec::with_capacity(doc.order.len());
    for row in &doc.order {
        let mut out = Vec::with_capacity(row.len());
        for &v in row {
            match v {
                0 => out.push(false),
                1 => out.push(true),
                _ => {
                    return Err(FormatError::Field {
                        field: name,
                        source: CoreError::IndexOutOfRange {
                            what: "order entry",
                            index: v,
                            size: 2,
                        },
                    })
                }
            }
        }
        rows.push(out);
    }
    let p = Poset::from_rows(&rows).map_err(field(name))?;
    match &doc.labels {
        Some(l) => p.with_labels(l.clone()).map_err(field("labels")),
        None => Ok(p),
    }
}

fn table_of(rows: &Rows, name: &'static str, r: usize, c: usize, bound: usize) -> Result<Table, FormatError> {
    let t = Table::from_rows(rows).map_err(field(name))?;
    t.expect_shape(name, r, c, bound).map_err(field(name))?;
    Ok(t)
}

fn square(rows: &Rows, name: &'static str, n: usize) -> Result<Table, FormatError> {
    table_of(rows, name, n, n, n)
}

fn index(v: usize, name: &'static str, n: usize) -> Result<usize, FormatError> {
    if v < n {
        Ok(v)
    } else {
        Err(FormatError::Field {
            field: name,
            source: CoreError::IndexOutOfRange {
                what: name,
                index: v,
                size: n,
            },
        })
    }
}

fn map_of(v: &[usize], name: &'static str, len: usize, bound: usize) -> Result<Vec<usize>, FormatError> {
    if v.len() != len {
        return Err(FormatError::Field {
            field: name,
            source: CoreError::DimensionMismatch {
                what: name,
                expected: len,
                found: v.len(),
            },
        });
    }
    v.iter().map(|&x| index(x, name, bound)).collect()
}

fn posemigroup_doc(s: &Posemigroup) -> PosemigroupDoc {
    PosemigroupDoc {
        order: order_doc(&s.poset),
        mul: s.mul.to_rows(),
        unit: s.unit,
        meet: s.meet.as_ref().map(Table::to_rows),
        join: s.join.as_ref().map(Table::to_rows),
    }
}

fn posemigroup_of(doc: &PosemigroupDoc) -> Result<Posemigroup, FormatError> {
    let poset = poset_of(&doc.order, "order")?;
    let n = poset.size();
    let mut s = Posemigroup::new(poset, square(&doc.mul, "mul", n)?).map_err(field("mul"))?;
    if let Some(u) = doc.unit {
        s = s.with_unit(u).map_err(field("unit"))?;
    }
    if let Some(m) = &doc.meet {
        s = s.with_meet(square(m, "meet", n)?).map_err(field("meet"))?;
    }
    if let Some(j) = &doc.join {
        s = s.with_join(square(j, "join", n)?).map_err(field("join"))?;
    }
    Ok(s)
}

fn not_residuated() -> FormatError {
    FormatError::Validation(CheckReport::fail(
        "residuation.existence",
        &[],
        "the multiplication has no residuals",
    ))
}

fn residuated_doc(r: &ResiduatedStructure, point: Option<usize>) -> ResiduatedDoc {
    ResiduatedDoc {
        base: posemigroup_doc(&r.base),
        lres: Some(r.lres.to_rows()),
        rres: Some(r.rres.to_rows()),
        point,
    }
}

fn residuated_of(doc: &ResiduatedDoc) -> Result<(ResiduatedStructure, Option<usize>), FormatError> {
    let mut base = posemigroup_of(&doc.base)?;
    let n = base.size();
    if base.meet.is_none() {
        base.meet = base.poset.meet_table();
    }
    if base.join.is_none() {
        base.join = base.poset.join_table();
    }
    let point = doc.point.map(|p| index(p, "point", n)).transpose()?;
    let r = match (&doc.lres, &doc.rres) {
        (Some(l), Some(r)) => {
            let (l, r) = (square(l, "lres", n)?, square(r, "rres", n)?);
            ResiduatedStructure::new(base, l, r).map_err(field("lres"))?
        }
        (None, None) => compute_residuals(&base).ok_or_else(not_residuated)?,
        (Some(_), None) => return Err(field("rres")(CoreError::MissingComponent("rres"))),
        (None, Some(_)) => return Err(field("lres")(CoreError::MissingComponent("lres"))),
    };
    Ok((r, point))
}

fn brouwerian_doc(b: &BrouwerianAlgebra) -> BrouwerianDoc {
    BrouwerianDoc {
        order: order_doc(&b.lattice.poset),
        meet: b.lattice.meet.as_ref().map(Table::to_rows),
        join: b.lattice.join.as_ref().map(Table::to_rows),
        imp: Some(b.imp.to_rows()),
        point: b.point,
    }
}

fn brouwerian_of(doc: &BrouwerianDoc) -> Result<BrouwerianAlgebra, FormatError> {
    let poset = poset_of(&doc.order, "order")?;
    let n = poset.size();
    let point = doc.point.map(|p| index(p, "point", n)).transpose()?;
    let computed = BrouwerianAlgebra::from_lattice(poset.clone(), point).map_err(field("order"))?;
    let meet = match &doc.meet {
        Some(m) => square(m, "meet", n)?,
        None => computed.lattice.meet.clone().expect("from_lattice sets meets"),
    };
    let join = match &doc.join {
        Some(j) => square(j, "join", n)?,
        None => computed.lattice.join.clone().expect("from_lattice sets joins"),
    };
    let imp = match &doc.imp {
        Some(i) => square(i, "imp", n)?,
        None => computed.imp.clone(),
    };
    let top = poset
        .top()
        .ok_or_else(|| field("order")(CoreError::MissingComponent("top")))?;
    let lattice = Posemigroup::new(poset, meet.clone())
        .and_then(|s| s.with_unit(top))
        .and_then(|s| s.with_meet(meet))
        .and_then(|s| s.with_join(join))
        .map_err(field("meet"))?;
    BrouwerianAlgebra::new(lattice, imp, point).map_err(field("imp"))
}

fn bimodule_doc(m: &Bimodule) -> BimoduleDoc {
    BimoduleDoc {
        scalars: posemigroup_doc(&m.scalars),
        module: order_doc(&m.module),
        module_join: m.module_join.to_rows(),
        module_meet: m.module_meet.as_ref().map(Table::to_rows),
        lact: m.lact.to_rows(),
        ract: m.ract.to_rows(),
        point: m.point,
        residuals: m.residuals.as_ref().map(|r| ResidualsDoc {
            left_under: r.left_under.to_rows(),
            left_over: r.left_over.to_rows(),
            right_under: r.right_under.to_rows(),
            right_over: r.right_over.to_rows(),
        }),
    }
}

fn bimodule_of(doc: &BimoduleDoc) -> Result<Bimodule, FormatError> {
    let scalars = posemigroup_of(&doc.scalars)?;
    let module = poset_of(&doc.module, "module")?;
    let (ns, nm) = (scalars.size(), module.size());
    let join = square(&doc.module_join, "module_join", nm)?;
    let lact = table_of(&doc.lact, "lact", ns, nm, nm)?;
    let ract = table_of(&doc.ract, "ract", nm, ns, nm)?;
    let mut m = Bimodule::new(scalars, module, join, lact, ract).map_err(field("lact"))?;
    if let Some(t) = &doc.module_meet {
        m = m
            .with_module_meet(square(t, "module_meet", nm)?)
            .map_err(field("module_meet"))?;
    }
    if let Some(r) = &doc.residuals {
        let r = ActionResiduals {
            left_under: table_of(&r.left_under, "left_under", ns, nm, nm)?,
            left_over: table_of(&r.left_over, "left_over", nm, nm, ns)?,
            right_under: table_of(&r.right_under, "right_under", nm, nm, ns)?,
            right_over: table_of(&r.right_over, "right_over", nm, ns, nm)?,
        };
        m = m.with_residuals(r).map_err(field("residuals"))?;
    }
    if let Some(p) = doc.point {
        m = m.with_point(p).map_err(field("point"))?;
    }
    Ok(m)
}

fn nagata_doc(n: &NagataStructure, restricted: bool) -> NagataDoc {
    NagataDoc {
        restricted,
        carrier: posemigroup_doc(&n.carrier),
        lres: n.residuals.as_ref().map(|r| r.0.to_rows()),
        rres: n.residuals.as_ref().map(|r| r.1.to_rows()),
        sigma: n.sigma.table().to_vec(),
        gamma: n.gamma.table().to_vec(),
        point: n.point,
        one: n.one,
        oplus: n.oplus.as_ref().map(Table::to_rows),
        otimes: n.otimes.as_ref().map(Table::to_rows),
        negation: n.negation.as_ref().map(|f| f.table().to_vec()),
        pairs: n.space.as_ref().map(|sp| PairsDoc {
            scalars: sp.scalar_count(),
            module: sp.module_count(),
            pairs: sp.pairs().to_vec(),
        }),
    }
}

fn nagata_of(doc: &NagataDoc) -> Result<NagataStructure, FormatError> {
    let carrier = posemigroup_of(&doc.carrier)?;
    let n = carrier.size();
    let residuals = match (&doc.lres, &doc.rres) {
        (Some(l), Some(r)) => Some((square(l, "lres", n)?, square(r, "rres", n)?)),
        _ => None,
    };
    let sigma = EndoMap::new(&carrier.poset, map_of(&doc.sigma, "sigma", n, n)?).map_err(field("sigma"))?;
    let gamma = EndoMap::new(&carrier.poset, map_of(&doc.gamma, "gamma", n, n)?).map_err(field("gamma"))?;
    let point = index(doc.point, "point", n)?;
    let one = doc.one.map(|o| index(o, "one", n)).transpose()?;
    let oplus = doc.oplus.as_ref().map(|t| square(t, "oplus", n)).transpose()?;
    let otimes = doc.otimes.as_ref().map(|t| square(t, "otimes", n)).transpose()?;
    let negation = match &doc.negation {
        Some(v) => Some(EndoMap::new(&carrier.poset, map_of(v, "negation", n, n)?).map_err(field("negation"))?),
        None => None,
    };
    let space = match &doc.pairs {
        Some(p) => {
            if p.pairs.len() != n {
                return Err(field("pairs")(CoreError::DimensionMismatch {
                    what: "pairs",
                    expected: n,
                    found: p.pairs.len(),
                }));
            }
            let sp = PairSpace::new(p.scalars, p.module, |a, x| p.pairs.contains(&(a, x)));
            if sp.pairs() != p.pairs.as_slice() {
                return Err(field("pairs")(CoreError::NotClosed("lexicographic pair order")));
            }
            Some(sp)
        }
        None => None,
    };
    let mut s = NagataStructure::from_maps(carrier, residuals, sigma, gamma, point).map_err(field("sigma"))?;
    s.one = one;
    s.oplus = oplus;
    s.otimes = otimes;
    s.negation = negation;
    s.space = space;
    Ok(s)
}

fn pair_doc(t: &TwistablePair) -> TwistablePairDoc {
    TwistablePairDoc {
        plus: posemigroup_doc(&t.plus),
        minus: residuated_doc(&t.minus, None),
        lambda: t.lam.clone(),
        rho: t.rho.clone(),
        point: t.point,
    }
}

fn pair_of(doc: &TwistablePairDoc) -> Result<TwistablePair, FormatError> {
    let plus = posemigroup_of(&doc.plus)?;
    let (minus, _) = residuated_of(&doc.minus)?;
    let (np, nm) = (plus.size(), minus.size());
    let lam = map_of(&doc.lambda, "lambda", np, nm)?;
    let rho = map_of(&doc.rho, "rho", nm, np)?;
    let t = TwistablePair::new(plus, minus, lam, rho).map_err(field("minus"))?;
    match doc.point.or(doc.minus.point) {
        Some(p) => t.with_point(p).map_err(field("point")),
        None => Ok(t),
    }
}

fn bimonoid_doc(b: &Bimonoid) -> BimonoidDoc {
    BimonoidDoc {
        order: order_doc(&b.poset),
        mul: b.mul.to_rows(),
        one: b.one,
        add: b.add.to_rows(),
        zero: b.zero,
    }
}

fn bimonoid_of(doc: &BimonoidDoc) -> Result<Bimonoid, FormatError> {
    let poset = poset_of(&doc.order, "order")?;
    let n = poset.size();
    let mul = square(&doc.mul, "mul", n)?;
    let add = square(&doc.add, "add", n)?;
    Bimonoid::new(poset, mul, doc.one, add, doc.zero).map_err(field("one"))
}

impl StructureFile {
    pub fn from_structure(s: &Structure) -> Self {
        match s {
            Structure::Poset(p) => StructureFile::Poset(order_doc(p)),
            Structure::Posemigroup(s) => StructureFile::Posemigroup(posemigroup_doc(s)),
            Structure::ResiduatedLattice { algebra, point } => {
                StructureFile::ResiduatedLattice(residuated_doc(algebra, *point))
            }
            Structure::Brouwerian(b) => StructureFile::Brouwerian(brouwerian_doc(b)),
            Structure::Bimodule(m) => StructureFile::Bimodule(bimodule_doc(m)),
            Structure::Nagata { structure, restricted } => StructureFile::Nagata(nagata_doc(structure, *restricted)),
            Structure::TwistablePair(t) => StructureFile::TwistablePair(pair_doc(t)),
            Structure::Bimonoid(b) => StructureFile::Bimonoid(bimonoid_doc(b)),
        }
    }

    /// Converts to a structure, checking shapes and index ranges only.
    pub fn to_structure(&self) -> Result<Structure, FormatError> {
        Ok(match self {
            StructureFile::Poset(d) => Structure::Poset(poset_of(d, "order")?),
            StructureFile::Posemigroup(d) => Structure::Posemigroup(posemigroup_of(d)?),
            StructureFile::ResiduatedLattice(d) => {
                let (algebra, point) = residuated_of(d)?;
                Structure::ResiduatedLattice { algebra, point }
            }
            StructureFile::Brouwerian(d) => Structure::Brouwerian(brouwerian_of(d)?),
            StructureFile::Bimodule(d) => Structure::Bimodule(bimodule_of(d)?),
            StructureFile::Nagata(d) => Structure::Nagata {
                structure: nagata_of(d)?,
                restricted: d.restricted,
            },
            StructureFile::TwistablePair(d) => Structure::TwistablePair(pair_of(d)?),
            StructureFile::Bimonoid(d) => Structure::Bimonoid(bimonoid_of(d)?),
        })
    }
}

/// The base check of each kind: the axioms a file of that kind must satisfy
/// to be loaded strictly.
pub fn base_check(s: &Structure) -> Result<CheckReport, CoreError> {
    Ok(match s {
        Structure::Poset(p) => check_poset(p),
        Structure::Posemigroup(s) => check_posemigroup(s),
        Structure::ResiduatedLattice { algebra, .. } => {
            if algebra.base.unit.is_some() {
                check_residuated_lattice(algebra)?
            } else {
                check_residuated_l_semigroup(algebra)?
            }
        }
        Structure::Brouwerian(b) => check_brouwerian(b)?,
        Structure::Bimodule(m) => check_bimodule(m, BimoduleLevel::Bimodule)?,
        Structure::Nagata { structure, restricted } => check_nagata_posemigroup(structure, *restricted)?,
        Structure::TwistablePair(t) => check_twistable_pair(t, TwistLevel::Posemigroup)?,
        Structure::Bimonoid(b) => check_bimonoid(b),
    })
}

fn parse_error(e: &serde_json::Error) -> FormatError {
    FormatError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses a document and builds the structure without checking axioms.
pub fn parse_unchecked(text: &str) -> Result<Structure, FormatError> {
    let doc: StructureFile = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    doc.to_structure()
}

/// Parses a document and requires the base check of its kind to pass.
pub fn parse(text: &str) -> Result<Structure, FormatError> {
    let s = parse_unchecked(text)?;
    validate(&s)?;
    Ok(s)
}

pub fn validate(s: &Structure) -> Result<(), FormatError> {
    let r = base_check(s).map_err(field("kind"))?;
    if r.passed {
        Ok(())
    } else {
        Err(FormatError::Validation(r))
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load(path: &Path) -> Result<Structure, FormatError> {
    parse(&read(path)?)
}

pub fn load_unchecked(path: &Path) -> Result<Structure, FormatError> {
    parse_unchecked(&read(path)?)
}

pub fn save(path: &Path, s: &Structure) -> Result<(), FormatError> {
    std::fs::write(path, to_text(s)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Renders a structure as an indented document with each table row on one
/// line.
pub fn to_text(s: &Structure) -> String {
    let v = serde_json::to_value(StructureFile::from_structure(s)).expect("documents serialize");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

/// Renders a structure as a single line.
pub fn to_line(s: &Structure) -> String {
    serde_json::to_string(&StructureFile::from_structure(s)).expect("documents serialize")
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                pad(out, depth + 1);
                let _ = write!(out, "{}: ", Value::String(k.clone()));
                write_value(out, item, depth + 1);
            }
            out.push('\n');
            pad(out, depth);
            out.push('}');
        }
        Value::Array(items) if !is_flat(v) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
            }
            out.push('\n');
            pad(out, depth);
            out.push(']');
        }
        _ => {
            let s = serde_json::to_string(v).expect("values serialize");
            out.push_str(&s.replace(",", ", "));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nagata_core::corpus;

    fn c2_boolean() -> Structure {
        let a = &corpus::algebras()[1];
        Structure::ResiduatedLattice {
            algebra: a.algebra.clone(),
            point: a.point,
        }
    }

    #[test]
    fn round_trip_two_chain() {
        let s = c2_boolean();
        let text = to_text(&s);
        assert_eq!(parse(&text).unwrap(), s);
        assert_eq!(parse(&to_line(&s)).unwrap(), s);
        assert!(text.contains("\"kind\": \"residuated-lattice\""));
        assert!(text.starts_with("{\n  \"kind\": \"residuated-lattice\""));
        assert!(text.contains("\n    [0, 1]"));
    }

    #[test]
    fn ragged_table_is_a_parse_error() {
        let text = r#"{"kind": "posemigroup", "order": [[1, 1], [0, 1]], "mul": [[0, 0], [0]]}"#;
        let e = parse(text).unwrap_err();
        assert!(matches!(e, FormatError::Field { field: "mul", .. }), "{e}");
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse("{\n  \"kind\": \"poset\",\n  \"order\": [[1]\n}").unwrap_err();
        match e {
            FormatError::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn non_associative_posemigroup_fails_validation() {
        let text = r#"{"kind": "posemigroup", "order": [[1, 0], [0, 1]], "mul": [[1, 0], [0, 0]]}"#;
        let e = parse(text).unwrap_err();
        let r = e.report().expect("validation error");
        assert_eq!(r.axiom, "posemigroup.associativity");
        assert!(parse_unchecked(text).is_ok());
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(matches!(
            parse(r#"{"kind": "group", "order": [[1]]}"#),
            Err(FormatError::Parse { .. })
        ));
    }

    #[test]
    fn order_entries_are_bits() {
        let e = parse(r#"{"kind": "poset", "order": [[2]]}"#).unwrap_err();
        assert!(matches!(e, FormatError::Field { field: "order", .. }));
    }

    #[test]
    fn residuals_are_computed_when_omitted() {
        let text = r#"{"kind": "residuated-lattice", "order": [[1, 1], [0, 1]], "mul": [[0, 0], [0, 1]], "unit": 1}"#;
        match parse(text).unwrap() {
            Structure::ResiduatedLattice { algebra, point } => {
                assert_eq!(algebra.lres.to_rows(), [[1, 1], [0, 1]]);
                assert_eq!(point, None);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn labels_survive() {
        let p = Poset::chain(2).with_labels(vec!["bot".into(), "top".into()]).unwrap();
        let s = Structure::Poset(p);
        assert_eq!(parse(&to_text(&s)).unwrap(), s);
    }
}
