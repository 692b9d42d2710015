use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("empty coefficient list (use LaurentSymbol::zero for the zero symbol)")]
    EmptyCoefficients,
    #[error("coefficient index {0} given twice")]
    DuplicateIndex(i64),
    #[error("`{0}` must be analytic (coefficients with k < 0 present)")]
    NotAnalytic(String),
    #[error("truncation n = {n} is too small for symbol band {band}")]
    TruncationTooSmall { n: usize, band: i64 },
    #[error("`{0}` is not isometry-valued (residual {1:.3e})")]
    NotIsometry(String, f64),
    #[error("`{0}` is not unitary-valued (residual {1:.3e})")]
    NotUnitary(String, f64),
    #[error("rank deficiency at sample {0}")]
    RankDeficient(usize),
    #[error("invalid pole set: {0}")]
    InvalidPoles(String),
    #[error("empty exactness window: {0}")]
    EmptyWindow(String),
    #[error("band exceeds truncation: {0}")]
    BandExceedsTruncation(String),
    #[error("no constant unitary relates the symbols (residual {0:.3e})")]
    NoConstantUnitary(f64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("{0}")]
    Parse(String),
    #[error("unknown demo `{0}`")]
    UnknownDemo(String),
}

pub type Result<T> = std::result::Result<T, Error>;
