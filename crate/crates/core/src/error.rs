//! Shared error type for the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground-set size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition weights differ: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("enumeration cap exceeded: n = {n}, cap = {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("tabloid dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: u128, cap: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),
    #[error("noise Fourier matrix is numerically singular (sigma_min = {sigma_min:.3e})")]
    SingularNoise { sigma_min: f64 },
    #[error("insufficient samples: have {have}, budget requires {need}")]
    InsufficientSamples { have: usize, need: u64 },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("candidate set of size {got} exceeds cap {cap}")]
    CandidateOverflow { got: usize, cap: usize },
    #[error("support of size {got} exceeds sparsity bound {k} after pruning")]
    SupportOverflow { got: usize, k: usize },
    #[error("noise carries no signal at the required frequencies (min multiplier {min_multiplier:.3e})")]
    NoiseUnidentifiable { min_multiplier: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
