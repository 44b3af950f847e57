use thiserror::Error;

/// Errors produced by the arithmetic, oracle and reporting layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u32),

    #[error("p must be below 65536 (got {0})")]
    CharacteristicTooLarge(u32),

    #[error("coordinate {value} is not in [0, {p})")]
    CoordOutOfRange { value: u64, p: u32 },

    #[error("dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: (p={p_left}, n={n_left}) vs (p={p_right}, n={n_right})")]
    DimensionMismatch {
        p_left: u32,
        n_left: usize,
        p_right: u32,
        n_right: usize,
    },

    #[error("odd dimension required (got n={0})")]
    OddDimensionRequired(usize),

    #[error("wrong basis type: expected k={expected}, got k={got}")]
    WrongBasisType { expected: u32, got: u32 },

    #[error("vector is not foldable: c[{index}] != c[{mirror}]")]
    NotFoldable { index: usize, mirror: usize },

    #[error("no element of order {k} in Z_{n}^x")]
    NoSuchElement { n: u32, k: u32 },

    #[error("invalid Gauss period parameters (m={m}, k={k}, q={q}): {reason}")]
    InvalidGaussParams { m: u32, k: u32, q: u32, reason: String },

    #[error("{q} and {n} are not coprime")]
    NotCoprime { q: u32, n: u32 },

    #[error("no primitive {n}-th root of unity in GF({q}^{d})")]
    NoRoot { q: u32, d: u32, n: u32 },

    #[error("element has {n} coordinates but beta has order {order}")]
    OrderMismatch { n: usize, order: u64 },

    #[error("oracle unavailable: GF({q}^{d}) exceeds the supported size")]
    OracleUnavailable { q: u32, d: u32 },

    #[error("closure of size up to {p}^{n} exceeds 2^16 elements")]
    TooLarge { p: u32, n: usize },

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),

    #[error("operation count depends on the input for {0}")]
    InputDependentCount(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
