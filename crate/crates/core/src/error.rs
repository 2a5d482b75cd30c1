use thiserror::Error;

/// Errors produced by construction and combination of belief values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two values built over different frames were combined.
    #[error("frame mismatch: left frame is {left:?}, right frame is {right:?}")]
    FrameMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    /// A frame was declared with no labels.
    #[error("frame must contain at least one label")]
    EmptyFrame,

    /// A frame was declared with a repeated label.
    #[error("duplicate label {0:?} in frame")]
    DuplicateLabel(String),

    /// A frame exceeded the configured hard cap on label count.
    #[error("frame has {n} labels, exceeding the cap of {cap} (dense storage is 2^n entries)")]
    FrameTooLarge { n: usize, cap: usize },

    /// A label was referenced that the frame does not contain.
    #[error("label {0:?} is not in the frame")]
    UnknownLabel(String),

    /// A subset bitmask carried bits beyond the frame's label count.
    #[error("subset bitmask {bits:#b} has bits outside the frame ({n} labels)")]
    SubsetOutOfRange { bits: u32, n: usize },

    /// A dense mass vector had the wrong number of entries for its frame.
    #[error("mass vector has {got} entries, frame requires {expected}")]
    MassLength { got: usize, expected: usize },

    /// A mass assignment had a negative entry or did not total one.
    #[error("not a mass function: {0}")]
    NotAMass(String),

    /// An operation requiring normalized inputs received an element with
    /// conflict mass strictly between zero and one.
    #[error("input is not a normalized belief state (empty-set mass is {0})")]
    NotNormalized(f64),

    /// A product ensemble would exceed the configured expert cap.
    #[error("product ensemble would hold {size} experts, exceeding the cap of {cap}")]
    EnsembleTooLarge { size: usize, cap: usize },

    /// An ensemble was declared with no experts.
    #[error("ensemble must contain at least one expert")]
    EmptyEnsemble,

    /// An expert weight was zero, negative, or non-finite.
    #[error("expert weight {0} is not strictly positive")]
    NonPositiveWeight(f64),

    /// A per-label vector had the wrong length for its frame.
    #[error("vector has {got} entries, frame requires {expected}")]
    VectorLength { got: usize, expected: usize },

    /// A numeric input was NaN or infinite.
    #[error("non-finite value {0} in input")]
    NonFinite(f64),

    /// A probabilistic opinion was neither a probability vector nor zero.
    #[error("opinion must sum to one or be the all-zero vector (sum is {0})")]
    InvalidOpinion(f64),

    /// A prior entry was zero, negative, or non-finite.
    #[error("prior for label {label:?} is {value}, priors must be strictly positive")]
    NonPositivePrior { label: String, value: f64 },

    /// A logarithmic opinion was requested for a probability with a zero entry.
    #[error("opinion assigns zero probability to label {0:?}; logarithmic opinions require strictly positive entries")]
    ZeroOpinion(String),

    /// A covariance matrix was not symmetric within tolerance.
    #[error("covariance is asymmetric: |C[{i}][{j}] - C[{j}][{i}]| = {delta}")]
    AsymmetricCovariance { i: usize, j: usize, delta: f64 },

    /// A covariance matrix had an eigenvalue below the admissible floor.
    #[error("covariance is not positive semidefinite (eigenvalue {0})")]
    NotPositiveSemidefinite(f64),

    /// A quadratic form was requested against a numerically singular matrix.
    #[error("covariance is numerically singular and cannot be inverted")]
    SingularCovariance,

    /// The iterative eigensolver did not meet its residual target.
    #[error("eigendecomposition failed to converge within the iteration budget")]
    ConvergenceFailure,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
