use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("(i)_q! vanishes for i = {index}")]
    NonInvertibleFactorial { index: usize },
    #[error("bicharacter is not {i}-finite (no admissible m for j = {j})")]
    NotIFinite { i: usize, j: usize },
    #[error("groupoid orbit exceeds {0} objects")]
    OrbitBoundExceeded(usize),
    #[error("root system not finite within length bound {0}")]
    NotFinite(usize),
    #[error("element is not homogeneous")]
    NonHomogeneous,
    #[error("word is not Lyndon")]
    NotLyndon,
    #[error("degree {degree:?} lies outside the computed window")]
    DegreeBoundExceeded { degree: Vec<u32> },
    #[error("no nonzero root vector candidate at degree {degree:?}")]
    NoNonzeroCandidate { degree: Vec<u32> },
    #[error("PBW defect: {0}")]
    PbwDefect(String),
    #[error("PBW duality defect: {0}")]
    DualityDefect(String),
    #[error("singular Gram matrix at degree {degree:?}")]
    SingularGram { degree: Vec<u32> },
    #[error("pairing mode mismatch")]
    ModeMismatch,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("module dimension {0} exceeds the bound")]
    DimensionBound(usize),
    #[error("root of infinite order in the braiding")]
    InfiniteOrder,
    #[error("invalid group assignment: {0}")]
    InvalidGroup(String),
    #[error("expansion size {0} exceeds the bound")]
    SizeBoundExceeded(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
