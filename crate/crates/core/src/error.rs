use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("exact mode supports only s = 0 and s = 1/2, got s = {0}")]
    ExactModeUnsupported(String),
    #[error("spin must be a non-negative multiple of 1/2, got {0}")]
    BadSpin(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("mixed linear and anti-linear terms in one operator")]
    MixedAntilinearity,
    #[error("illegal representation: {0}")]
    IllegalCombination(String),
    #[error("formal adjoint requires a linear operator of derivative order <= 2")]
    UnsupportedAdjoint,
    #[error("block twist needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("incompatible ansatz: {0}")]
    IncompatibleAnsatz(String),
    #[error("grid: {0}")]
    Grid(String),
    #[error("component mismatch: theory needs {expected}, state has {got}")]
    ComponentMismatch { expected: usize, got: usize },
    #[error("need at least {need} snapshots, have {have}")]
    InsufficientSnapshots { need: usize, have: usize },
    #[error("wavepacket too close to the grid boundary: {0}")]
    Boundary(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
