use thiserror::Error;

/// Errors across the toolkit. Variant names follow the per-operation error
/// contracts; anything not listed for an operation is a defect, not an error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("singular matrix")]
    SingularMatrix,

    #[error("columns are linearly dependent")]
    DependentColumns,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("value error: {0}")]
    Value(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("singular basis")]
    SingularBasis,

    #[error("basic point does not satisfy the KKT conditions")]
    NotOptimalBasic,

    #[error("ranging needs a square nonsingular basis; this point carries a rectangular one")]
    RectangularBasis,

    #[error("perturbation vector is zero")]
    ZeroDelta,

    #[error(
        "linearity violated at theta = {theta}: re-solved value {actual}, predicted {predicted}"
    )]
    LinearityViolation {
        theta: String,
        actual: String,
        predicted: String,
    },

    #[error("problem is not optimal: {0}")]
    NotOptimal(String),

    #[error("problem is infeasible")]
    Infeasible,
}

pub type Result<T> = std::result::Result<T, Error>;
