use crate::Natural;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid base {0}: base must be at least 2")]
    InvalidBase(Natural),

    #[error("digit {digit} at position {index} is not below base {base}")]
    InvalidDigit {
        index: usize,
        digit: Natural,
        base: Natural,
    },

    #[error("{value} needs {needed} bits, more than the requested width {width}")]
    Overflow {
        value: Natural,
        needed: u64,
        width: usize,
    },

    #[error("tuple arity must be at least 1")]
    InvalidArity,

    #[error("the tuple [0] is outside the canonical range of the finite tuple codec (it collides with [])")]
    NonCanonicalTuple,

    #[error("set elements must be strictly increasing (violated at position {index})")]
    InvalidSet { index: usize },

    #[error("not a permutation: {reason}")]
    NotAPermutation { reason: String },

    #[error("Lehmer digit {digit} at position {index} exceeds its bound {bound}")]
    InvalidLehmer {
        index: usize,
        digit: Natural,
        bound: usize,
    },

    #[error("rank {rank} is not below {size}!")]
    RankOverflow { size: usize, rank: Natural },

    #[error("urelement {value} is not below the urelement limit {ulimit}")]
    UrelementOutOfRange { value: Natural, ulimit: Natural },

    #[error("result would need 2^{exponent}, beyond the supported size")]
    TooLarge { exponent: Natural },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("tree nesting exceeds the depth limit {limit}")]
    DepthLimit { limit: usize },
}
