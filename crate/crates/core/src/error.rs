use thiserror::Error;

/// Errors raised by the algebra, lattice and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial must have degree at least 1")]
    DegreeZero,

    #[error("structure constants fail {law} at basis indices {indices:?}")]
    AlgebraLaw {
        law: &'static str,
        indices: Vec<usize>,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live over different base fields")]
    FieldMismatch,

    #[error("operands live in different ambient algebras")]
    AmbientMismatch,

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("ideal is not proper")]
    ImproperIdeal,

    #[error("ideal is not maximal in the base ring")]
    NotMaximal,

    #[error("base ring is not contained in the top ring")]
    NotSubalgebra,

    #[error("module is not stable under the ring action")]
    NotStable,

    #[error("pair is not a minimal extension")]
    NotAdjacent,

    #[error("subspace is not a node of the lattice")]
    NotANode,

    #[error("extension is not subintegral")]
    NotSubintegral,

    #[error("base ring is not local")]
    NotLocal,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: u64 },

    #[error("rejection budget exhausted for {shape}: {accepted} accepted in {attempts} attempts")]
    Rejection {
        shape: &'static str,
        attempts: u64,
        accepted: u64,
    },

    #[error("internal invariant violated [{tag}]: {detail}")]
    Invariant { tag: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invariant(tag: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            tag,
            detail: detail.into(),
        }
    }
}
