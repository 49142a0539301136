use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("argument out of supported range: {0}")]
    Range(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("root scan exhausted: found {found} of {requested} levels below nu_plus = {nu_max}")]
    ScanExhausted {
        found: usize,
        requested: usize,
        nu_max: f64,
    },

    #[error("subspace rule ({p}, {q}) rejected: {reason}")]
    InvalidRule { p: u64, q: u64, reason: String },

    #[error("predicted level nu_plus = {nu_plus} (k = {k}) not found in the computed spectrum")]
    LevelNotFound { k: usize, nu_plus: f64 },

    #[error("spectrum has {have} levels but {need} are required")]
    InsufficientSpectrum { have: usize, need: usize },

    #[error("degenerate eigenfunction: glued norm {0:e} below threshold")]
    Degenerate(f64),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}
