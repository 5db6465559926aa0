use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid degree pair: {0}")]
    InvalidDegreePair(String),

    #[error("square-only statistic: {0} requires m == n (got m = {m}, n = {n})", m = .1, n = .2)]
    SquareOnly(&'static str, usize, usize),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("undefined cutoff: S = 0")]
    UndefinedCutoff,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} = {actual} > {limit}")]
    Budget {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("empty space: {0}")]
    EmptySpace(String),

    #[error("switching condition violated: {0}")]
    Switch(#[from] crate::switching::Violation),

    #[error("sampler: {0}")]
    Sampler(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
