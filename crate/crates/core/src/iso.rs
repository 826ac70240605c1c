//! Isomorphism search between finite relational structures, used to compare
//! constructions whose elements come out in different orders.
//!
//! A [`FiniteStructure`] is a universe `0..n` with unary predicates, binary
//! relations and partial unary and binary operations. Many-sorted algebras
//! are encoded over the disjoint union of their sorts, one predicate per sort.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Posemigroup;
use crate::bimodule::Bimodule;
use crate::error::Error;
use crate::nagata::NagataStructure;
use crate::table::{PartialTable, Table};

/// Largest universe the search accepts.
pub const MAX_ISO_SIZE: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteStructure {
    size: usize,
    predicates: Vec<Vec<bool>>,
    relations: Vec<Vec<bool>>,
    unary: Vec<Vec<Option<usize>>>,
    binary: Vec<PartialTable>,
}

impl FiniteStructure {
    pub fn new(size: usize) -> Self {
        FiniteStructure {
            size,
            ..Default::default()
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn with_predicate(mut self, p: Vec<bool>) -> Self {
        assert_eq!(p.len(), self.size);
        self.predicates.push(p);
        self
    }

    pub fn with_constant(self, c: usize) -> Self {
        let n = self.size;
        self.with_predicate((0..n).map(|x| x == c).collect())
    }

    /// A binary relation given as a row-major `n × n` matrix.
    pub fn with_relation(mut self, r: Vec<bool>) -> Self {
        assert_eq!(r.len(), self.size * self.size);
        self.relations.push(r);
        self
    }

    pub fn with_unary(mut self, f: Vec<Option<usize>>) -> Self {
        assert_eq!(f.len(), self.size);
        self.unary.push(f);
        self
    }

    pub fn with_operation(mut self, t: PartialTable) -> Self {
        assert_eq!((t.rows(), t.cols()), (self.size, self.size));
        self.binary.push(t);
        self
    }

    pub fn with_total_operation(self, t: &Table) -> Self {
        self.with_operation(PartialTable::from(t))
    }

    /// Order, multiplication, unit and whichever lattice tables are present.
    pub fn from_posemigroup(s: &Posemigroup) -> Self {
        let n = s.size();
        let mut f = FiniteStructure::new(n)
            .with_relation((0..n * n).map(|k| s.leq(k / n, k % n)).collect())
            .with_total_operation(&s.mul);
        if let Some(u) = s.unit {
            f = f.with_constant(u);
        }
        for t in [&s.meet, &s.join].into_iter().flatten() {
            f = f.with_total_operation(t);
        }
        f
    }

    /// The carrier together with σ, γ, the point and every optional
    /// operation present.
    pub fn from_nagata(n: &NagataStructure) -> Self {
        let size = n.size();
        let mut f = FiniteStructure::from_posemigroup(&n.carrier)
            .with_unary((0..size).map(|x| Some(n.s(x))).collect())
            .with_unary((0..size).map(|x| Some(n.g(x))).collect())
            .with_constant(n.point)
            .with_operation(n.gres_left.clone())
            .with_operation(n.gres_right.clone())
            .with_operation(n.gjoin.clone());
        if let Some(o) = n.one {
            f = f.with_constant(o);
        }
        if let Some((l, r)) = &n.residuals {
            f = f.with_total_operation(l).with_total_operation(r);
        }
        for t in [&n.oplus, &n.otimes].into_iter().flatten() {
            f = f.with_total_operation(t);
        }
        if let Some(neg) = &n.negation {
            f = f.with_unary((0..size).map(|x| Some(neg.apply(x))).collect());
        }
        f
    }

    /// A bimodule over the disjoint union `S ⊔ M`, scalars first.
    pub fn from_bimodule(m: &Bimodule) -> Self {
        let (ns, nm) = (m.scalar_count(), m.module_count());
        let n = ns + nm;
        let s = &m.scalars;
        let op = |f: &dyn Fn(usize, usize) -> Option<usize>| PartialTable::from_fn(n, n, f);
        let mut st = FiniteStructure::new(n)
            .with_predicate((0..n).map(|x| x < ns).collect())
            .with_relation(
                (0..n * n)
                    .map(|k| {
                        let (i, j) = (k / n, k % n);
                        match (i < ns, j < ns) {
                            (true, true) => s.leq(i, j),
                            (false, false) => m.module.leq(i - ns, j - ns),
                            _ => false,
                        }
                    })
                    .collect(),
            )
            .with_operation(op(&|i, j| (i < ns && j < ns).then(|| s.mul(i, j))))
            .with_operation(op(&|i, j| (i >= ns && j >= ns).then(|| ns + m.mjoin(i - ns, j - ns))))
            .with_operation(op(&|i, j| (i < ns && j >= ns).then(|| ns + m.lact(i, j - ns))))
            .with_operation(op(&|i, j| (i >= ns && j < ns).then(|| ns + m.ract(i - ns, j))));
        if let Some(u) = s.unit {
            st = st.with_constant(u);
        }
        if let Some(z) = m.point {
            st = st.with_constant(ns + z);
        }
        if let Some(r) = &m.residuals {
            st = st
                .with_operation(op(&|i, j| {
                    (i < ns && j >= ns).then(|| ns + r.left_under.get(i, j - ns))
                }))
                .with_operation(op(&|i, j| {
                    (i >= ns && j >= ns).then(|| r.left_over.get(i - ns, j - ns))
                }))
                .with_operation(op(&|i, j| {
                    (i >= ns && j >= ns).then(|| r.right_under.get(i - ns, j - ns))
                }))
                .with_operation(op(&|i, j| {
                    (i >= ns && j < ns).then(|| ns + r.right_over.get(i - ns, j))
                }));
        }
        st
    }

    fn same_signature(&self, other: &FiniteStructure) -> bool {
        self.size == other.size
            && self.predicates.len() == other.predicates.len()
            && self.relations.len() == other.relations.len()
            && self.unary.len() == other.unary.len()
            && self.binary.len() == other.binary.len()
    }

    fn rel(&self, r: usize, i: usize, j: usize) -> bool {
        self.relations[r][i * self.size + j]
    }

    /// Per-element data preserved by every isomorphism.
    fn invariant(&self, x: usize) -> Vec<usize> {
        let n = self.size;
        let mut v = Vec::new();
        for p in &self.predicates {
            v.push(p[x] as usize);
        }
        for r in 0..self.relations.len() {
            v.push((0..n).filter(|&y| self.rel(r, x, y)).count());
            v.push((0..n).filter(|&y| self.rel(r, y, x)).count());
            v.push(self.rel(r, x, x) as usize);
        }
        for f in &self.unary {
            v.push(match f[x] {
                None => 0,
                Some(y) if y == x => 1,
                Some(_) => 2,
            });
            v.push(f.iter().filter(|&&y| y == Some(x)).count());
        }
        for t in &self.binary {
            v.push(match t.get(x, x) {
                None => 0,
                Some(y) if y == x => 1,
                Some(_) => 2,
            });
            v.push((0..n).filter(|&y| t.get(x, y).is_some()).count());
            v.push((0..n).filter(|&y| t.get(y, x).is_some()).count());
            v.push((0..n * n).filter(|&k| t.get(k / n, k % n) == Some(x)).count());
        }
        v
    }
}

enum Constraint {
    Unary(usize, usize),
    Binary(usize, usize, usize),
}

struct Search<'a> {
    a: &'a FiniteStructure,
    b: &'a FiniteStructure,
    candidates: Vec<Vec<usize>>,
    incident: Vec<Vec<Constraint>>,
    f: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, x: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let v = self.f[x].expect("x assigned");
        for r in 0..a.relations.len() {
            for y in 0..a.size {
                if let Some(w) = self.f[y] {
                    if a.rel(r, x, y) != b.rel(r, v, w) || a.rel(r, y, x) != b.rel(r, w, v) {
                        return false;
                    }
                }
            }
        }
        for c in &self.incident[x] {
            match *c {
                Constraint::Unary(u, y) => {
                    let Some(fy) = self.f[y] else { continue };
                    match a.unary[u][y] {
                        None => {
                            if b.unary[u][fy].is_some() {
                                return false;
                            }
                        }
                        Some(z) => {
                            if let Some(fz) = self.f[z] {
                                if b.unary[u][fy] != Some(fz) {
                                    return false;
                                }
                            }
                        }
                    }
                }
                Constraint::Binary(t, y, z) => {
                    let (Some(fy), Some(fz)) = (self.f[y], self.f[z]) else {
                        continue;
                    };
                    match a.binary[t].get(y, z) {
                        None => {
                            if b.binary[t].get(fy, fz).is_some() {
                                return false;
                            }
                        }
                        Some(r) => {
                            if let Some(fr) = self.f[r] {
                                if b.binary[t].get(fy, fz) != Some(fr) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, x: usize) -> bool {
        if x == self.a.size {
            return true;
        }
        for k in 0..self.candidates[x].len() {
            let v = self.candidates[x][k];
            if self.used[v] {
                continue;
            }
            self.f[x] = Some(v);
            self.used[v] = true;
            if self.consistent(x) && self.run(x + 1) {
                return true;
            }
            self.used[v] = false;
        }
        self.f[x] = None;
        false
    }
}

/// An isomorphism `f` from `a` to `b` (`f[x]` is the image of `x`), if one
/// exists. Both structures must have the same signature.
pub fn find_isomorphism(a: &FiniteStructure, b: &FiniteStructure) -> Result<Option<Vec<usize>>, Error> {
    if a.size > MAX_ISO_SIZE || b.size > MAX_ISO_SIZE {
        return Err(Error::TooLarge(a.size.max(b.size)));
    }
    if !a.same_signature(b) {
        return Ok(None);
    }
    let n = a.size;
    let inv_b: Vec<Vec<usize>> = (0..n).map(|y| b.invariant(y)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let ix = a.invariant(x);
            (0..n).filter(|&y| inv_b[y] == ix).collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut incident: Vec<Vec<Constraint>> = (0..n).map(|_| Vec::new()).collect();
    for (u, f) in a.unary.iter().enumerate() {
        for y in 0..n {
            incident[y].push(Constraint::Unary(u, y));
            if let Some(z) = f[y] {
                if z != y {
                    incident[z].push(Constraint::Unary(u, y));
                }
            }
        }
    }
    for (t, tab) in a.binary.iter().enumerate() {
        for y in 0..n {
            for z in 0..n {
                let mut touched = vec![y, z];
                if let Some(r) = tab.get(y, z) {
                    touched.push(r);
                }
                touched.sort_unstable();
                touched.dedup();
                for e in touched {
                    incident[e].push(Constraint::Binary(t, y, z));
                }
            }
        }
    }
    let mut s = Search {
        a,
        b,
        candidates,
        incident,
        f: vec![None; n],
        used: vec![false; n],
    };
    Ok(s.run(0)
        .then(|| s.f.into_iter().map(|v| v.expect("complete")).collect()))
}

pub fn are_isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> Result<bool, Error> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Checks that `f` is an isomorphism from `a` to `b`.
pub fn is_isomorphism(a: &FiniteStructure, b: &FiniteStructure, f: &[usize]) -> bool {
    let n = a.size;
    if !a.same_signature(b) || f.len() != n {
        return false;
    }
    let mut used = vec![false; n];
    for &v in f {
        if v >= n || used[v] {
            return false;
        }
        used[v] = true;
    }
    let image = |v: Option<usize>| v.map(|x| f[x]);
    a.predicates
        .iter()
        .zip(&b.predicates)
        .all(|(p, q)| (0..n).all(|x| p[x] == q[f[x]]))
        && (0..a.relations.len()).all(|r| (0..n * n).all(|k| a.rel(r, k / n, k % n) == b.rel(r, f[k / n], f[k % n])))
        && a.unary
            .iter()
            .zip(&b.unary)
            .all(|(u, w)| (0..n).all(|x| image(u[x]) == w[f[x]]))
        && a.binary
            .iter()
            .zip(&b.binary)
            .all(|(t, w)| (0..n * n).all(|k| image(t.get(k / n, k % n)) == w.get(f[k / n], f[k % n])))
}
