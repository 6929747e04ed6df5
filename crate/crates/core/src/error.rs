use thiserror::Error;

/// Errors raised by the bound evaluators, transforms and the verification driver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid split point {point} for domain [{lower}, {upper}]")]
    InvalidSplit { lower: f64, upper: f64, point: f64 },

    #[error("degenerate basis: domain has {points} points, order {order} needs {needed}")]
    DegenerateBasis {
        points: usize,
        order: usize,
        needed: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    Asymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("Psi matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    InfeasiblePsi { min_eigenvalue: f64 },

    #[error("basis change matrix is singular")]
    SingularBasisChange,

    #[error("free vector chi is zero")]
    ZeroChi,

    #[error("moment vector is zero while chi is not")]
    ZeroMoment,

    #[error("alpha {0} outside the admissible range")]
    AlphaOutOfRange(f64),

    #[error("parameters violate the endpoint feasibility condition (min eigenvalue {min_eigenvalue:e})")]
    InfeasibleParams { min_eigenvalue: f64 },

    #[error("counterexample search exhausted after {trials} trials")]
    BudgetExhausted { trials: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("configuration parse error: {0}")]
    ConfigParse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
