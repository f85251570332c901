use thiserror::Error;

/// Failures raised while building or validating posets and lattices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("cycle detected through elements {0:?}")]
    CycleDetected(Vec<String>),

    #[error("duplicate element name `{0}`")]
    DuplicateName(String),

    #[error("invalid element name `{0}`")]
    InvalidName(String),

    #[error("empty poset cannot form a lattice")]
    Empty,

    #[error("not a lattice: `{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),

    #[error("not distributive: witness triple ({0}, {1}, {2}) violates a∧(b∨c) = (a∧b)∨(a∧c)")]
    NotDistributive(String, String, String),

    #[error("`{upper}` does not cover `{lower}`")]
    NotACover { upper: String, lower: String },

    #[error("`{0}` is not a maximal nonzero join irreducible")]
    NotMaximalJoinIrreducible(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("size limit exceeded: more than {limit} {what}")]
    SizeLimitExceeded { limit: usize, what: &'static str },
}

/// A proved statement failed on a concrete lattice. Seeing one means the
/// implementation is wrong somewhere, never that the input is bad.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("theorem check `{check}` failed: {detail}")]
pub struct TheoremViolation {
    pub check: &'static str,
    pub detail: String,
}

impl TheoremViolation {
    pub fn new(check: &'static str, detail: impl Into<String>) -> Self {
        Self {
            check,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;
