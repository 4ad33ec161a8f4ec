use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("exact division leaves a nonzero remainder")]
    NonzeroRemainder,

    #[error("polynomial is not palindromic about degree {center}")]
    NotPalindromic { center: usize },

    #[error("cannot delete the leading letter of the empty word")]
    EmptyWord,

    #[error("weight position {index} is outside 0..{n}")]
    WeightIndexOutOfRange { index: usize, n: usize },

    #[error("sign-flip position {index} is outside 1..={n}")]
    FlipIndexOutOfRange { index: usize, n: usize },

    #[error("poset has {count} minimal elements, expected exactly one")]
    MultipleMinima { count: usize },

    #[error("poset has {count} maximal elements, expected exactly one")]
    MultipleMaxima { count: usize },

    #[error("cover relation contains a cycle through element {element}")]
    CycleDetected { element: String },

    #[error("cover ({lo}, {hi}) is not rank-increasing by one: rank {lo_rank} -> {hi_rank}")]
    NonGradedCover {
        lo: String,
        hi: String,
        lo_rank: usize,
        hi_rank: usize,
    },

    #[error("cover ({lo}, {hi}) relates an element to itself or repeats a pair")]
    BadCover { lo: String, hi: String },

    #[error("elements {f} and {g} are not comparable")]
    NotComparable { f: String, g: String },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("cover ({lo}, {hi}) has no label")]
    MissingLabel { lo: String, hi: String },

    #[error("cover ({lo}, {hi}) has label 0; labels must be positive integers")]
    ZeroLabel { lo: String, hi: String },

    #[error("{what} exceeds the size cap of {max}")]
    SizeCap { what: String, max: usize },

    #[error("word is not a permutation of {{2, ..., {top}}}")]
    InvalidPermutation { top: u32 },

    #[error("inversion sequence entry {value} at position {position} is outside 1..={max}")]
    InvalidInversionEntry {
        position: usize,
        value: u32,
        max: u32,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph input: {0}")]
    Graph(String),

    #[error("schema: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
