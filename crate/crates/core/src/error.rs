use thiserror::Error;

/// Errors surfaced by the combinatorial models.
///
/// Violations of proved invariants (an algorithm that cannot fail) are not
/// represented here; those panic with a message naming the broken invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("letter {letter} at position {position} is not a residue modulo {modulus}")]
    LetterOutOfRange {
        letter: u32,
        position: usize,
        modulus: u32,
    },

    #[error("cannot parse word {input:?}: {reason}")]
    ParseWord { input: String, reason: String },

    #[error("cannot parse partition {input:?}: {reason}")]
    ParsePartition { input: String, reason: String },

    #[error("moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("expected a word of length {expected}, got length {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("word sums to {sum} mod {modulus}, expected {expected}")]
    WrongSum {
        sum: u32,
        expected: u32,
        modulus: u32,
    },

    #[error("rotation amount {c} outside [0, {n})")]
    RotationOutOfRange { c: u64, n: u64 },

    #[error("cyclic order must be at least 1")]
    ZeroOrder,

    #[error("action does not have order dividing {n}: element #{index} is not fixed by the {n}-fold action")]
    ActionOrder { n: u64, index: usize },

    #[error("{parts:?} is not a weakly decreasing sequence of positive integers")]
    InvalidPartition { parts: Vec<u32> },

    #[error("{parts:?} is not a {n}-core")]
    NotACore { parts: Vec<u32>, n: u32 },

    #[error("{parts:?} is not in Y(m={m}, k={k})")]
    NotInY { parts: Vec<u32>, m: u32, k: usize },

    #[error("binary word of length {len} does not split into runs of {width}")]
    AbacusLength { len: usize, width: usize },

    #[error("rectangle indices {indices:?} must be weakly decreasing and lie in [0, {k}]")]
    InvalidRectangleIndices { indices: Vec<u32>, k: usize },

    #[error(
        "divider tuple {dividers:?} is invalid for a word of length {len} with {blocks} blocks"
    )]
    InvalidDividers {
        dividers: Vec<usize>,
        len: usize,
        blocks: usize,
    },

    #[error("cannot parse partitioned word {input:?}: {reason}")]
    ParsePartitionedWord { input: String, reason: String },

    #[error("rank must be at least {min}, got {n}")]
    RankTooSmall { n: usize, min: usize },

    #[error("generator index {i} out of range for rank {n}")]
    GeneratorOutOfRange { i: usize, n: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("window {window:?} is not an affine permutation")]
    InvalidWindow { window: Vec<i64> },

    #[error("point lies on the hyperplane x_{i} - x_{j} = {s}")]
    DegeneratePoint { i: usize, j: usize, s: i64 },

    #[error("{what}: expected {expected}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("two alcoves of length {length} realize the same Shi region")]
    MinimalAlcoveTie { length: usize },

    #[error("word {word:?} contains {found} parking functions in its coset, expected exactly one")]
    CosetParking { word: Vec<u32>, found: usize },

    #[error("no translation in the box [-{bound}, {bound}] carries the dilation onto the inverse minimal alcoves")]
    TranslationNotFound { bound: i64 },

    #[error("{what} exceeds the enumeration budget ({size} > {budget})")]
    Budget {
        what: &'static str,
        size: u128,
        budget: u128,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
