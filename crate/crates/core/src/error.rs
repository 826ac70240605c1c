use crate::report::CheckReport;

/// Errors raised when an operation's precondition is not met.
///
/// Axiom violations found by a checker are *not* errors; they come back as a
/// failing [`CheckReport`]. An error means the question could not be asked.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range in {what} (size {size})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("element set is empty")]
    EmptySet,
    #[error("missing component: {0}")]
    MissingComponent(&'static str),
    #[error("map is not idempotent at element {0}")]
    NotIdempotent(usize),
    #[error("element {element} is not positive (fails at {witness})")]
    NotPositive { element: usize, witness: usize },
    #[error("point is not cyclic: a∗0 ≠ 0∗a at scalar {0}")]
    NotCyclic(usize),
    #[error("algebra is not Boolean-pointed: ¬¬x ≠ x ∨ 0 at {0}")]
    NotBooleanPointed(usize),
    #[error("element {0} has no complement")]
    NotComplemented(usize),
    #[error("element {element} has two complements {first} and {second}")]
    NonUniqueComplement {
        element: usize,
        first: usize,
        second: usize,
    },
    #[error("size {requested} exceeds the enumeration bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("universe of {0} elements is too large for isomorphism search")]
    TooLarge(usize),
    #[error("subset is not closed under {0}")]
    NotClosed(&'static str),
    #[error("axiom failure: {0}")]
    AxiomFailure(CheckReport),
}
