use thiserror::Error;

/// Errors shared by the transform engines, the query layer, and the file
/// formats.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input string is empty")]
    EmptyString,
    #[error("input string is not primitive (it is a repetition of a shorter string)")]
    NotPrimitive,
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("byte 0x{0:02x} is outside the alphabet")]
    ByteOutsideAlphabet(u8),
    #[error("alphabet must hold between 1 and 256 strictly increasing symbols")]
    InvalidAlphabet,
    #[error("not a permutation of the alphabet: {0}")]
    InvalidPermutation(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("requested occurrence {requested} but only {available} available")]
    NotEnoughOccurrences { requested: usize, available: usize },
    #[error("row {row} lies outside the addressed range")]
    RowOutOfRange { row: usize },
    #[error("operation requires a local ordering scheme")]
    WrongSchemeKind,
    #[error("malformed transform input: {0}")]
    MalformedInput(String),
    #[error("alphabet size {sigma} exceeds the run-minimization guard {limit}")]
    AlphabetTooLarge { sigma: usize, limit: usize },
    #[error("instance too large for exhaustive enumeration (limits: n <= {max_n}, sigma <= {max_sigma})")]
    InstanceTooLarge { max_n: usize, max_sigma: usize },
    #[error("sentinel byte 0x00 already occurs in the input")]
    SentinelByteClash,
    #[error("scheme file: {0}")]
    SchemeParse(String),
    #[error("transform file: {0}")]
    TransformParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
