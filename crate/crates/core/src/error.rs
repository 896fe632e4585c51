use thiserror::Error;

/// Errors surfaced by the exact computation layers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight-inhomogeneous")]
    WeightInhomogeneous,

    #[error("not holomorphic: element contains positive powers of Y")]
    NotHolomorphic,

    #[error("element carries a nonzero power of Z in a context that requires none")]
    ResidualZPower,

    #[error("division by zero form element")]
    DivisionByZero,

    #[error("denominator is not weight-homogeneous")]
    InhomogeneousDenominator,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("incomplete structure-constant table: missing {0}")]
    IncompleteTable(String),

    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),

    #[error("linear system is under-determined: {0}")]
    UnderDetermined(String),

    #[error("linear system is inconsistent: {0}")]
    InconsistentSystem(String),

    #[error("chain is not a cycle: b(z) != 0")]
    NotACycle,

    #[error("homology reduction did not stabilize: {0}")]
    ReductionFailed(String),

    #[error("word is not cyclically composable")]
    NotComposable,

    #[error("formal antiderivative undefined for Y-power {0} (rule requires m >= 2)")]
    IntegralUndefined(u32),

    #[error("arity mismatch: graph expects {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("unsupported ribbon graph for this operation: {0}")]
    UnsupportedGraph(String),

    #[error("no sewable boundary pair")]
    NoSewablePair,

    #[error("{0}")]
    Other(String),
}
