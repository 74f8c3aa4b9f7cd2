use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema: {0}")]
    Schema(String),

    #[error("invalid trapezoid ({a}, {b}, {c}, {d}): expected a <= b <= c <= d")]
    InvalidTrapezoid { a: f64, b: f64, c: f64, d: f64 },

    #[error("unknown linguistic term `{0}`")]
    UnknownTerm(String),

    /// A cell that is missing or does not parse under its column's kind.
    /// `row` is the 1-based data row (the header is not counted).
    #[error("row {row}, column `{column}`: {message}")]
    Cell {
        row: usize,
        column: String,
        message: String,
    },

    #[error("dataset: {0}")]
    Dataset(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("exact solver gave up after {nodes} nodes (limit {limit})")]
    BudgetExceeded { nodes: u64, limit: u64 },

    #[error("evaluation: {0}")]
    Evaluation(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
