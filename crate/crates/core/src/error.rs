use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: entry `{token}` is out of range 1..={order}")]
    EntryOutOfRange {
        line: usize,
        token: String,
        order: usize,
    },
    #[error("line {line}: unknown element `{token}`")]
    UnknownElement { line: usize, token: String },
    #[error("expected {expected} rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("line {line}: expected {expected} entries, found {found}")]
    WrongColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("expected {expected} names, found {found}")]
    WrongNameCount { expected: usize, found: usize },
    #[error("groupoid order must be positive")]
    EmptyGroupoid,
    #[error("table entry {value} at ({row}, {col}) is outside 0..{order}")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("groupoid is not quadratical: {0}")]
    NotQuadratical(String),
    #[error("quadratical characterizations disagree: {0}")]
    CharacterizationDisagreement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("structural property violated: {0}")]
    StructureViolation(String),

    #[error("invalid affine data: {0}")]
    InvalidAffine(String),
    #[error("invalid translatable seed: {0}")]
    InvalidSeed(String),
    #[error("completion produced {0} distinct tables")]
    AmbiguousCompletion(usize),
    #[error("completed table failed verification: {0}")]
    CompletionNotQuadratical(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("catalog self-test failed for {entry}: {detail}")]
    CatalogSelfTest { entry: String, detail: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
