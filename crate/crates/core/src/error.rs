use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid q value {0}: q must not be 0 or -1")]
    InvalidQ(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("window adequacy violated: x^{n} y^{m} is needed but lies outside the window")]
    WindowAdequacy { n: i64, m: u32 },

    #[error("image of x^{n} y^{m} is not triangular: {reason}")]
    NotTriangular { n: i64, m: u32, reason: String },

    #[error("not a coalgebra map: {0}")]
    NotCoalgebraMap(String),

    #[error("unexpected image shape at x^{n} y^{m}: {reason}")]
    Shape { n: i64, m: u32, reason: String },

    #[error("degree-one coefficient vanishes at index {0}")]
    ZeroAlpha(i64),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
