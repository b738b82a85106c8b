use thiserror::Error;

/// Errors reported by the shift-tree structures and the subset sum solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {pos} is out of range for a string of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("expected a string of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid interval [{a}, {b}] for a string of length {len}")]
    InvalidInterval { a: usize, b: usize, len: usize },

    #[error("letter {letter} does not fit the hash modulus {modulus}")]
    LetterOutOfRange { letter: u64, modulus: u64 },

    #[error("trees are not comparable: {0}")]
    IncompatibleTrees(&'static str),

    #[error("hash context supports strings up to length {max_len}, tree needs {needed}")]
    ContextTooSmall { max_len: usize, needed: usize },

    #[error("invalid hash parameters: {0}")]
    InvalidHashParams(&'static str),

    #[error("index {index} does not fit in {width} bits")]
    IndexOutOfRange { index: usize, width: u32 },

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("multiplicity table has {found} entries, modulus is {expected}")]
    MultiplicityTable { expected: usize, found: usize },

    /// The difference set reported by the trees is inconsistent with the
    /// current sum set, which can only happen after a hash collision.
    #[error(
        "hash collision detected at shift {shift}: {reported} differences, {new_sums} new sums"
    )]
    HashCollision {
        shift: usize,
        reported: usize,
        new_sums: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
