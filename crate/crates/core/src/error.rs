use thiserror::Error;

/// Errors raised by topology construction, coding, placement, delivery and
/// NDT evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid receiver connectivity: r = {r} with h = {h} (need 1 <= r < h)")]
    InvalidConnectivity { h: usize, r: usize },

    #[error("network too large: C({h}, {r}) exceeds {limit} UEs")]
    TooManyUsers { h: usize, r: usize, limit: usize },

    #[error("index out of range: {what} = {value} (valid 1..={max})")]
    OutOfRange { what: &'static str, value: usize, max: usize },

    #[error("MDS code length {h} exceeds the GF(2^8) limit of 255")]
    FieldOverflow { h: usize },

    #[error("length error: {0}")]
    LengthError(String),

    #[error("singular decoding system for chunk ids {0:?}")]
    SingularSystem(Vec<usize>),

    #[error("duplicate or mismatched chunk: {0}")]
    DuplicateChunk(String),

    #[error("cache parameter {name} = {value} is not an integer")]
    NonIntegralCacheParameter { name: &'static str, value: String },

    #[error("file size of {bits} bits does not split evenly: {reason}")]
    IndivisibleFileSize { bits: u64, reason: String },

    #[error("demand vector has {got} entries, expected {expected}")]
    DemandLengthMismatch { expected: usize, got: usize },

    #[error("demand entry {value} outside the library of {n_files} files")]
    DemandOutOfRange { value: usize, n_files: usize },

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("region violation: {0}")]
    RegionViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("UE {ue} cannot peel message {message}: member {missing} not cached")]
    PeelFailure { ue: usize, message: String, missing: String },

    #[error("UE {ue} reconstructed a file that differs from W_{file}")]
    ReconstructionMismatch { ue: usize, file: usize },

    #[error("null space of a {rows}x{cols} system is empty")]
    EmptyNullSpace { rows: usize, cols: usize },

    #[error("degenerate channel: coefficient {magnitude:e} at intended UE {ue}")]
    DegenerateChannel { ue: usize, magnitude: f64 },

    #[error("interference leak at UE {ue}: coefficient {magnitude:e} for {label}")]
    InterferenceLeak { ue: usize, label: String, magnitude: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
