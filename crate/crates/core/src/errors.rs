use thiserror::Error;

/// Errors produced by the exact algebra and the model pipeline.
#[derive(Debug, Error)]
pub enum SpinError {
    #[error("parameter ring mismatch: `{0}` is not declared in both operands")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown model id `{0}`")]
    UnknownModel(String),
    #[error("translation overflow: shifted support leaves [1, {n_sites}] under open boundary")]
    TranslationOverflow { n_sites: u32 },
    #[error("chain length {n_sites} is incompatible with unit cell {unit_cell}")]
    BadChainLength { n_sites: u32, unit_cell: u32 },
    #[error("density support {support} exceeds the three-site window")]
    SupportTooLarge { support: u32 },
    #[error("injectivity has not been verified for this spec")]
    InjectivityUnverified,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("terms {0} and {1} neither commute nor anticommute")]
    MixedCommutation(String, String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SpinError>;
