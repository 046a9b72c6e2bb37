use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("value {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("word width mismatch: grid carries {expected} bits, word has {got}")]
    WidthMismatch { expected: u32, got: u32 },
    #[error("depth {z} m leaves the Fresnel region (0, {limit} m)")]
    OutsideFresnel { z: f64, limit: f64 },
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("no pilot observations")]
    EmptyObservations,
}

pub type Result<T> = std::result::Result<T, Error>;
