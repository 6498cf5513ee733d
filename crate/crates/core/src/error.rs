use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("boundary does not square to zero at generator {0}")]
    NotAComplex(String),

    #[error("vertices {0} and {1} are not joined by a cube edge")]
    NotAdjacent(String, String),

    #[error("diagram is not planar: {0}")]
    NonPlanar(String),

    #[error("moduli construction failed: {0}")]
    Moduli(String),

    #[error("sign assignment system is unsatisfiable")]
    Unsatisfiable,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("{0} is outside the supported range")]
    OutOfRange(String),

    #[error("cannot read {0}")]
    Io(String),
}
