use thiserror::Error;

/// Broad classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input violates a stated invariant or precondition.
    InvalidInput,
    /// A floating-point computation degenerated beyond its tolerance budget.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid denominator: zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0} is unsupported")]
    NegativeRadicand(String),
    #[error("incomparable fields: radicands {0} and {1} differ")]
    IncomparableFields(String, String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("magnitude must be positive, got {0}")]
    NonPositive(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("outside the gnomon regime: remainder {name} = {value} is not positive")]
    GnomonRegime { name: &'static str, value: String },
    #[error("remainder chain not strictly decreasing at step {0}")]
    RemainderChain(usize),
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("side {index} = {value} out of (0, pi)")]
    SideOutOfRange { index: usize, value: f64 },
    #[error("triangle inequality violated: {0}")]
    TriangleInequality(String),
    #[error("perimeter {0} is not below 2*pi")]
    PerimeterTooLarge(f64),
    #[error("face angle {index} = {value} out of (0, pi)")]
    FaceAngleOutOfRange { index: usize, value: f64 },
    #[error("face-angle inequality violated: {0}")]
    FaceAngleInequality(String),
    #[error("face angle sum {0} is not below 2*pi")]
    FaceAngleSum(f64),
    #[error("invalid vertex figure: {0}")]
    VertexFigure(String),
    #[error("unrealizable vertex figure: sin^2(phi) = {0} exceeds 1")]
    Unrealizable(f64),
    #[error("non-convex or degenerate cone: {0}")]
    NonConvexCone(String),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("numeric degeneracy: {0}")]
    NumericDegeneracy(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NumericDegeneracy(_) | Error::RemainderChain(_) => ErrorKind::Numeric,
            _ => ErrorKind::InvalidInput,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
