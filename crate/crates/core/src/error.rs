use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A kernel was evaluated at its singular point `v = 0`.
    #[error("kernel evaluated at its singular point v = 0")]
    SingularPoint,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("time step {dt:e} exceeds the stability limit {limit:e}")]
    StepSize { dt: f64, limit: f64 },

    #[error("blowup detected at t = {time}")]
    BlowupDetected { time: f64 },

    #[error("negative undershoot {value:e} (max {max_u:e}) exceeds the clamping tolerance")]
    NegativeUndershoot { value: f64, max_u: f64 },

    #[error("truncation violated: u(r_max)/max(u) = {ratio:e}")]
    TruncationViolated { ratio: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
