use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("ground set size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("diagrams belong to different families")]
    FamilyMismatch,
    #[error("k mismatch: {left} vs {right}")]
    KMismatch { left: usize, right: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not stable under the e/g swap")]
    NotSwapStable,
    #[error("block does not belong to this diagram")]
    ForeignBlock,
    #[error("diagram is not symmetric (top half differs from bottom half)")]
    Asymmetric,
    #[error("parameters outside the admissible window: {0}")]
    Window(String),
    #[error("invalid partition tuple: {0}")]
    InvalidTuple(String),
    #[error("key mismatch between matrix and poset")]
    KeyMismatch,
    #[error("projected dimension {projected} exceeds limit {limit}")]
    ResourceGuard { projected: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
