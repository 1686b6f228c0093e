use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a valid piece window: {0:?}")]
    InvalidWindow([u32; 4]),

    #[error("invalid puzzle: {0}")]
    InvalidPuzzle(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),

    #[error("no generating basic skeleton for support {0}")]
    NotSimple(String),

    #[error("refinement unknown for simple piece {0} (no closed form available)")]
    RefinementUnknown(u8),

    #[error("formula produced a non-integral value: {0}")]
    NonIntegral(String),

    #[error("support family {0} is not preserved by the converter map")]
    FamilyNotPreserved(String),
}

pub type Result<T> = std::result::Result<T, Error>;
