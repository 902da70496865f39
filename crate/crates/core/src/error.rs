use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // frames and masses
    #[error("frame must have between 1 and {max} labels, got {got}")]
    FrameSize { got: usize, max: usize },
    #[error("frame label {0:?} is empty or duplicated")]
    InvalidLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("subset mask {bits:#b} is not valid for a frame of {n} labels")]
    InvalidSubset { bits: u32, n: usize },
    #[error("subset {bits:#b} is assigned more than once")]
    DuplicateSubset { bits: u32 },
    #[error("mass {mass} is negative or not finite")]
    NegativeMass { mass: f64 },
    #[error("masses sum to {sum}, expected 1")]
    SumNotOne { sum: f64 },
    #[error("mass functions are defined on different frames")]
    FrameMismatch,
    #[error("combination is in total conflict (k = 1)")]
    TotalConflict,
    #[error("dense Jaccard matrix is limited to frames of at most {max} labels, got {n}")]
    DenseTooLarge { n: usize, max: usize },

    // threads
    #[error("message frame needs at least one topic and a relevant topic in 1..={topic_count}, got {relevant_topic}")]
    InvalidMessageFrame {
        topic_count: usize,
        relevant_topic: usize,
    },
    #[error("invalid thread: {0}")]
    InvalidThread(String),
    #[error("rank {rank} is out of bounds for a thread of {len} messages")]
    RankOutOfBounds { rank: usize, len: usize },
    #[error("unknown user {0:?}")]
    UnknownUser(String),
    #[error("user {0:?} has no messages before the given rank")]
    NoPriorMessages(String),
    #[error("message author and compared user are both {0:?}")]
    SameUser(String),

    // clustering
    #[error("clustering is degenerate: {0}")]
    Degenerate(String),
    #[error("k-means did not converge within {0} iterations")]
    NoConvergence(usize),

    // simulator
    #[error("invalid scenario: {0}")]
    InvalidSpec(String),
    #[error("pinned mass {mass} must lie strictly between 0 and 1")]
    MassOutOfRange { mass: f64 },

    #[error("malformed thread file: {0}")]
    Format(String),
}
