use thiserror::Error;

/// Errors raised by field construction, arithmetic and the solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {m} out of range {min}..={max}")]
    DegreeOutOfRange { m: u32, min: u32, max: u32 },

    #[error("modulus {modulus:#x} has degree {degree}, expected {m}")]
    ModulusDegree { modulus: u64, degree: i32, m: u32 },

    #[error("modulus {modulus:#x} is not irreducible over GF(2)")]
    NotIrreducible { modulus: u64 },

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("value {value} out of range 0..{bound}")]
    OutOfRange { value: u64, bound: u64 },

    #[error("precondition failed: {0}")]
    Precondition(&'static str),

    #[error("B has rank {rank}, expected {expected}")]
    InternalRank { rank: usize, expected: usize },

    #[error("internal invariant violated: {0}")]
    Internal(&'static str),

    #[error("invalid hex value {0:?}")]
    Hex(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
