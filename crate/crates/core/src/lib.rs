//! Finite ordered algebra: posets, posemigroups and residuated lattices,
//! bimodules over posemigroups, Nagata products and twist products, and the
//! bimonoid-of-fractions construction over Brouwerian algebras.
//!
//! Every structure is a set of dense tables over element indices `0..n`.
//! Constructors check only shapes; the `check_*` functions scan axioms
//! exhaustively and return a [`CheckReport`] naming the first violated axiom
//! together with a witness tuple.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod bimodule;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod fractions;
pub mod iso;
pub mod nagata;
pub mod order;
pub mod report;
pub mod table;
pub mod twist;

pub use error::Error;
pub use report::CheckReport;
pub use table::{PartialTable, Table};
