use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("generator index {index} out of range for rank {g}")]
    IndexOutOfRange { index: usize, g: usize },

    #[error("not a signed permutation: {0}")]
    NotSymplectic(String),

    #[error("translation vector {entries:?} is not a cocharacter of GSp (pairs must share one sum)")]
    NotCocharacter { entries: Vec<i32> },

    #[error("affine parabolic: the generating set contains s_0")]
    AffineParabolic,

    #[error("the parabolic subgroup for an empty index set is infinite")]
    InfiniteParabolic,

    #[error("element {0} is not final")]
    NotFinal(String),

    #[error("invalid elementary sequence {0:?}")]
    InvalidElementarySequence(Vec<u32>),

    #[error("element {0} is not admissible")]
    NotAdmissible(String),

    #[error("malformed alcove: {0}")]
    MalformedAlcove(String),

    #[error("malformed truncated alcove: {0}")]
    MalformedTruncation(String),

    #[error("vector {0:?} is not in the Weyl orbit of mu")]
    NotInOrbit(Vec<i32>),

    #[error("{0} has a fixed point")]
    HasFixedPoint(String),

    #[error("sign vector {0:?} is not admissible for the permutation")]
    InadmissibleVector(Vec<u8>),

    #[error("sign vectors are not ordered componentwise")]
    VectorsNotOrdered,

    #[error("rank {g} exceeds the configured bound {bound}")]
    BoundExceeded { g: usize, bound: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}
