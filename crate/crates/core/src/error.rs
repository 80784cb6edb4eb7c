use thiserror::Error;

/// Domain-level validation failures and resource guards.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must have between 1 and {max} elements, got {0}", max = crate::block::MAX_WIDTH)]
    GroundSetSize(u32),
    #[error("element {0} outside ground set [1, {1}]")]
    ElementOutOfRange(u32, u32),
    #[error("subset size {k} out of range for a ground set of {n} elements")]
    SubsetSize { k: u32, n: u32 },
    #[error("family is not {0}-uniform")]
    NotUniform(u32),
    #[error("family is empty")]
    EmptyFamily,
    #[error("family contains the empty block")]
    EmptyBlock,
    #[error("collection contains duplicate blocks")]
    DuplicateBlocks,
    #[error("families must share a ground set")]
    GroundSetMismatch,
    #[error("extremal construction needs |X| >= 2 and k >= |X| - 1, got |X| = {x}, k = {k}")]
    ExtremalParams { x: u32, k: u32 },
    #[error("node budget of {budget} exhausted after {visited} nodes")]
    BudgetExhausted { budget: u64, visited: u64 },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
