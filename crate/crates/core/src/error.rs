use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid ring `{0}` (expected Z, Q or Z/m with m >= 2)")]
    InvalidRing(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("chain is not a cycle: boundary is {0}")]
    NotACycle(String),

    #[error("level order violated: {from} > {to}")]
    LevelOrder { from: String, to: String },

    #[error("class does not belong here: {0}")]
    ClassMismatch(String),

    #[error("invalid group homomorphism: {0}")]
    InvalidHom(String),

    #[error("operation needs a nonzero class")]
    ZeroClass,

    #[error("operation needs a class of infinite order")]
    TorsionClass,

    #[error("unsupported coefficient change {from} -> {to}")]
    UnsupportedRingMap { from: String, to: String },

    #[error("invalid interleaving: {0}")]
    InvalidInterleaving(String),

    #[error("quantum ring: {0}")]
    Quantum(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{field}: {message}")]
    Input { field: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
