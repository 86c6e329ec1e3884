use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("part sum exceeds the sequence at index {index}")]
    PartsExceed { index: usize },
    #[error("need at least {needed} interpolation points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("repeated abscissa {0}")]
    RepeatedAbscissa(i64),
    #[error("point at {0} is off the degree-{1} interpolant")]
    DegreeOverflow(i64, usize),
    #[error("degree mismatch: diagram has degree {diagram}, tangency sequences give {sequences}")]
    DegreeMismatch { diagram: usize, sequences: usize },
    #[error("pair is not compatible with the diagram at vertex {0}")]
    Incompatible(usize),
    #[error("invalid floor diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("invalid extended template: {0}")]
    InvalidExtended(String),
    #[error("template {index}: position {k} is below k_min = {k_min}")]
    BelowKmin { index: usize, k: usize, k_min: usize },
    #[error("templates {index} and {next} overlap")]
    Overlap { index: usize, next: usize },
    #[error("last template ends at {end}, past d - l(Lambda) = {limit}")]
    TooFarRight { end: usize, limit: isize },
    #[error("row sums of {matrix} exceed the tangency sequence at column {column}")]
    RowSumExceeds { matrix: char, column: usize },
    #[error("negative number of short edges in gap {gap}")]
    NegativeShortEdges { gap: usize },
    #[error("degree {d} is below d_min = {d_min}")]
    BelowDmin { d: usize, d_min: usize },
    #[error("|beta| = {norm} < delta = {delta}; the polynomial is not valid here, use enumeration")]
    OutOfDomain { norm: u64, delta: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial value {0} is not an integer")]
    NotInteger(String),
}
