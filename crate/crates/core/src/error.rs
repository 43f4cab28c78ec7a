use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is numerically rank deficient at column {column}")]
    RankDeficient { column: usize },
    #[error("triangular matrix is singular at pivot {index}")]
    SingularTriangular { index: usize },
    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("matrix is not centrosymmetric (defect {defect:e})")]
    NotCentrosymmetric { defect: f64 },
    #[error("column dimension {n} is odd; only even n = 2l is supported")]
    OddColumnDimension { n: usize },
    #[error("dimension {n} is odd; structured operators need an even order")]
    OddDimension { n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("gate {gate} violated: value {value:e} against threshold {threshold:e}")]
    GateViolated {
        gate: String,
        value: f64,
        threshold: f64,
    },
    #[error("problem size {size} exceeds the operator size cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("row {row} of X has a vanishing norm")]
    ZeroRow { row: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape(r: usize, c: usize) -> String {
    format!("{r}x{c}")
}
