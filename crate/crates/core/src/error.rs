use thiserror::Error;

/// Errors raised by field construction, code analysis and the file front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 2..=24")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} does not have degree {m}")]
    ModulusDegree { m: u32, modulus: u64 },

    #[error("modulus {modulus:#x} is reducible: it is divisible by {factor:#x}")]
    ReducibleModulus { modulus: u64, factor: u64 },

    #[error("{e} does not divide the extension degree {m}")]
    NotADivisor { e: u32, m: u32 },

    #[error("{bits:#x} is not an element of GF(2^{m})")]
    InvalidElement { bits: u64, m: u32 },

    #[error(
        "dimension {k} exceeds the enumeration cap of {cap}; \
         compute the distribution of the dual and apply the MacWilliams transform instead"
    )]
    EnumerationCap { k: usize, cap: usize },

    #[error("generator rows are linearly dependent (rank {rank} from {rows} rows)")]
    DependentRows { rank: usize, rows: usize },

    #[error("row {index} has length {len}, expected {n}")]
    RowLength { index: usize, len: usize, n: usize },

    #[error("a code needs at least one nonzero generator row")]
    ZeroDimensional,

    #[error("inconsistent weight distribution: {0}")]
    InconsistentDistribution(String),

    #[error("defining set is empty")]
    EmptyDefiningSet,

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("no codewords of weight {0}; the support design is empty")]
    EmptyDesign(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cannot parse {field}: {reason}")]
    Parse { field: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
