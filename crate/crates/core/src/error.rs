use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: expected {}, found {found}", .expected.join(" | "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("atom `{0}` is not covered by the valuation or model")]
    MissingAtom(String),

    #[error("formula has {count} atoms; enumeration is bounded at {limit}")]
    TooManyAtoms { count: usize, limit: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix or vector has a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian: |P - P^dagger|_F = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not idempotent: |P^2 - P|_F = {deviation:.3e}")]
    NotIdempotent { deviation: f64 },

    #[error("state is not normalized: |psi| = {norm}")]
    NotNormalized { norm: f64 },

    #[error("tolerance {0} outside (0, 1e-3)")]
    InvalidTolerance(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the identity connective `=` has no projector copy; compare sentences with sentence_identity")]
    IdentityUnsupported,

    #[error("unknown phase-space point `{0}`")]
    UnknownPoint(String),

    #[error("subset for atom `{atom}` contains `{point}`, which is not a phase-space point")]
    SubsetNotContained { atom: String, point: String },

    #[error("collapse onto an orthogonal branch: |P psi| = {amplitude:.3e}")]
    ZeroAmplitude { amplitude: f64 },

    #[error("amplitudes {which} are not normalized: sum of squared moduli = {norm_sq}")]
    Normalization { which: String, norm_sq: f64 },

    #[error("projector for atom `{atom}` is invalid: {reason}")]
    InvalidProjector { atom: String, reason: Box<Error> },

    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
}
