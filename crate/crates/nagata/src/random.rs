//! Seeded random structures by generate-and-filter.
//!
//! Each attempt draws a candidate from a mix of constructions that usually
//! satisfy the kind's axioms and a plain random table that rarely does; the
//! kind's base check decides. The first passing candidate is returned.

use nagata_core::algebra::{
    check_brouwerian, check_posemigroup, check_residuated_lattice, compute_residuals, BrouwerianAlgebra, Posemigroup,
};
use nagata_core::bimodule::{check_bimodule, Bimodule, BimoduleLevel};
use nagata_core::enumerate::{commutative_residuated_chains, SINGLE_SORTED_BOUND};
use nagata_core::order::{EndoMap, Poset};
use nagata_core::table::Table;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::Structure;

/// Attempts per call before giving up.
pub const ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RandomKind {
    Poset,
    Posemigroup,
    ResiduatedLattice,
    Brouwerian,
    Bimodule,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RandomError {
    #[error("no {kind:?} of size {size} found in {attempts} attempts")]
    GenerationExhausted {
        kind: RandomKind,
        size: usize,
        attempts: usize,
    },
    #[error("structures need at least one element")]
    EmptySize,
}

/// A random structure of `kind` with `size` elements (scalars, for
/// bimodules) and `module_size` module elements, deterministic in `seed`.
pub fn random_structure(
    kind: RandomKind,
    size: usize,
    module_size: usize,
    seed: u64,
) -> Result<Structure, RandomError> {
    if size == 0 || (kind == RandomKind::Bimodule && module_size == 0) {
        return Err(RandomError::EmptySize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let candidate = match kind {
            RandomKind::Poset => Some(Structure::Poset(random_poset(&mut rng, size))),
            RandomKind::Posemigroup => random_posemigroup(&mut rng, size).map(Structure::Posemigroup),
            RandomKind::ResiduatedLattice => random_residuated(&mut rng, size),
            RandomKind::Brouwerian => random_brouwerian(&mut rng, size).map(Structure::Brouwerian),
            RandomKind::Bimodule => random_bimodule(&mut rng, size, module_size).map(Structure::Bimodule),
        };
        if let Some(s) = candidate {
            return Ok(s);
        }
    }
    Err(RandomError::GenerationExhausted {
        kind,
        size,
        attempts: ATTEMPTS,
    })
}

/// A random order: a random DAG along a random linear extension, closed
/// transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let density: f64 = rng.gen_range(0.1..0.9);
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
        for j in i + 1..n {
            rel[i * n + j] = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + k] && rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        pos[p] = i;
    }
    Poset::from_relation(n, |a, b| rel[pos[a] * n + pos[b]])
}

/// A random lattice: a random order between a new bottom and top, kept only
/// if it has all meets and joins.
fn random_lattice(rng: &mut impl Rng, n: usize) -> Option<Poset> {
    if n <= 2 {
        return Some(Poset::chain(n));
    }
    let inner = random_poset(rng, n - 2);
    let p = Poset::from_relation(n, |a, b| {
        a == 0 || b == n - 1 || (a != n - 1 && b != 0 && inner.leq(a - 1, b - 1))
    });
    (p.meet_table().is_some() && p.join_table().is_some()).then_some(p)
}

/// An idempotent isotone self-map of `p`.
fn random_idempotent(rng: &mut impl Rng, p: &Poset) -> Option<EndoMap> {
    let n = p.size();
    let c = rng.gen_range(0..n);
    let f = match rng.gen_range(0..5) {
        0 => EndoMap::identity(n),
        1 => EndoMap::from_fn(n, |_| c),
        2 => {
            let mut f = Vec::with_capacity(n);
            for x in 0..n {
                f.push(p.join(x, c)?);
            }
            EndoMap::from_fn(n, |x| f[x])
        }
        3 => {
            let mut f = Vec::with_capacity(n);
            for x in 0..n {
                f.push(p.meet(x, c)?);
            }
            EndoMap::from_fn(n, |x| f[x])
        }
        _ => {
            let g: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let mut f = g.clone();
            for _ in 0..=n * n {
                if f.iter().all(|&y| f[y] == y) {
                    break;
                }
                f = f.iter().map(|&y| g[y]).collect();
            }
            EndoMap::from_fn(n, |x| f[x])
        }
    };
    (f.is_idempotent() && f.is_isotone(p)).then_some(f)
}

fn random_table(rng: &mut impl Rng, rows: usize, cols: usize, bound: usize) -> Table {
    Table::from_fn(rows, cols, |_, _| rng.gen_range(0..bound))
}

fn random_posemigroup(rng: &mut impl Rng, n: usize) -> Option<Posemigroup> {
    let p = random_poset(rng, n);
    let mul = match rng.gen_range(0..5) {
        0 => {
            let f = random_idempotent(rng, &p)?;
            Table::square(n, |a, _| f.apply(a))
        }
        1 => {
            let f = random_idempotent(rng, &p)?;
            Table::square(n, |_, b| f.apply(b))
        }
        2 => p.meet_table()?,
        3 => p.join_table()?,
        _ => random_table(rng, n, n, n),
    };
    let s = Posemigroup::new(p, mul).ok()?;
    check_posemigroup(&s).passed.then_some(s)
}

fn random_point(rng: &mut impl Rng, n: usize) -> Option<usize> {
    rng.gen_bool(0.75).then(|| rng.gen_range(0..n))
}

fn random_residuated(rng: &mut impl Rng, n: usize) -> Option<Structure> {
    let algebra = if n <= SINGLE_SORTED_BOUND && rng.gen_bool(0.5) {
        commutative_residuated_chains(n).choose(rng)?.clone()
    } else {
        let p = random_lattice(rng, n)?;
        let top = p.top()?;
        let mul = if rng.gen_bool(0.5) {
            p.meet_table()?
        } else {
            random_table(rng, n, n, n)
        };
        let s = Posemigroup::new(p, mul)
            .and_then(|s| s.with_unit(top))
            .and_then(Posemigroup::with_lattice)
            .ok()?;
        compute_residuals(&s)?
    };
    if !check_residuated_lattice(&algebra).ok()?.passed {
        return None;
    }
    let point = random_point(rng, n);
    Some(Structure::ResiduatedLattice { algebra, point })
}

fn random_brouwerian(rng: &mut impl Rng, n: usize) -> Option<BrouwerianAlgebra> {
    let p = random_lattice(rng, n)?;
    let point = random_point(rng, n);
    let b = BrouwerianAlgebra::from_lattice(p, point).ok()?;
    check_brouwerian(&b).ok()?.passed.then_some(b)
}

fn random_join_semilattice(rng: &mut impl Rng, m: usize) -> Option<Poset> {
    let p = if rng.gen_bool(0.5) {
        random_lattice(rng, m)?
    } else {
        random_poset(rng, m)
    };
    p.join_table().is_some().then_some(p)
}

fn random_bimodule(rng: &mut impl Rng, n: usize, m: usize) -> Option<Bimodule> {
    let scalars = random_posemigroup(rng, n)?;
    let module = random_join_semilattice(rng, m)?;
    let join = module.join_table()?;
    let (lact, ract) = if rng.gen_bool(0.8) {
        let h = random_idempotent(rng, &module)?;
        let k = if rng.gen_bool(0.5) {
            h.clone()
        } else {
            EndoMap::identity(m)
        };
        let (left, right) = if rng.gen_bool(0.5) { (h, k) } else { (k, h) };
        (
            Table::from_fn(n, m, |_, x| left.apply(x)),
            Table::from_fn(m, n, |x, _| right.apply(x)),
        )
    } else {
        (random_table(rng, n, m, m), random_table(rng, m, n, m))
    };
    let b = Bimodule::new(scalars, module, join, lact, ract).ok()?;
    check_bimodule(&b, BimoduleLevel::Biaction).ok()?.passed.then_some(b)
}
