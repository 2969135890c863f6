use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An RK4 step produced a non-finite component.
    #[error("Lorenz integration diverged at step {step}{}", block_suffix(*.block))]
    Divergence { step: usize, block: Option<usize> },

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("position out of range: {0}")]
    OutOfRange(String),

    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),

    #[error("truncated pixel data: expected {expected} bytes, got {actual}")]
    TruncatedData { expected: usize, actual: usize },

    #[error("unsupported PGM maxval {0} (only 8-bit images are supported)")]
    UnsupportedMaxval(u32),

    #[error("{test} needs at least {required} bits, got {actual}")]
    InsufficientLength {
        test: &'static str,
        required: usize,
        actual: usize,
    },

    #[error("I/O error: {0}")]
    Io(String),
}

fn block_suffix(block: Option<usize>) -> String {
    match block {
        Some(b) => format!(" of weight block {b}"),
        None => String::new(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
