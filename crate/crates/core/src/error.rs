use thiserror::Error;

pub type Result<T> = std::result::Result<T, AdrcmError>;

#[derive(Debug, Error)]
pub enum AdrcmError {
    /// A model or experiment parameter lies outside its admissible domain.
    #[error("{0}")]
    ParamDomain(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("duplicate vertex at pos={pos}, mark={mark}")]
    DuplicateVertex { pos: f64, mark: f64 },

    #[error("vertex (pos={pos}, mark={mark}) is not in the graph")]
    VertexNotFound { pos: f64, mark: f64 },

    #[error("pattern too large: {what} = {got} exceeds guard {limit}")]
    SizeGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// A configuration that is valid in form but excluded by the regime
    /// split of the limit theorems.
    #[error("regime refused: {0}")]
    Regime(String),

    /// Input data that makes a statistic undefined (e.g. a flat tail).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl AdrcmError {
    /// True for errors caused by user input rather than runtime failure.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            AdrcmError::Io(_) | AdrcmError::Csv(_) | AdrcmError::Json(_)
        )
    }
}
