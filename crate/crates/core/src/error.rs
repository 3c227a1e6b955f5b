use thiserror::Error;

/// Errors raised by configuration, index helpers and the transform entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TftError {
    /// The ring parameters violate one of the `RingConfig` invariants.
    #[error("invalid ring configuration: {0}")]
    InvalidConfig(String),

    /// A root of order `2^level` (or a transform needing one) was requested,
    /// but the configuration only supports levels up to `max`.
    #[error("level 2^{level} exceeds the supported maximum 2^{max}")]
    LevelUnsupported { level: u32, max: u32 },

    /// An argument is outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// The node offset does not lie inside the buffer.
    #[error("node ({q}, {r}) is not inside a buffer of length {n}")]
    InvalidNode { q: usize, r: u32, n: usize },
}

pub type Result<T, E = TftError> = std::result::Result<T, E>;
