use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the analysis modules.
///
/// Degraded-but-valid outcomes (residual stagnation, uncertifiable tails,
/// non-converged scheme limits) are reported as flags on result types, not
/// as errors; an `Err` always means a contract violation on the inputs or a
/// hard numerical failure.
#[derive(Debug, Clone, Error)]
pub enum PerronError {
    #[error("matrix is not square: {rows} rows but row {row_index} has {cols} entries")]
    NotSquare {
        rows: usize,
        cols: usize,
        row_index: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("entry ({row},{col}) = {value} violates exact nonnegativity")]
    NegativeEntry {
        row: usize,
        col: usize,
        value: Complex64,
    },

    #[error("operation requires a certified nonnegative matrix")]
    NotCertified,

    #[error("entry {index} has nonzero imaginary part {im}; real input required")]
    NonRealInput { index: usize, im: f64 },

    #[error("ideal is not invariant: entry ({row},{col}) = {value} couples the ideal to its complement")]
    NotInvariant {
        row: usize,
        col: usize,
        value: Complex64,
    },

    #[error("resolvent point {mu} is within {distance:.3e} of spectral value {nearest} (tolerance {tol:.3e})")]
    OnSpectrum {
        mu: Complex64,
        nearest: Complex64,
        distance: f64,
        tol: f64,
    },

    #[error("eigenvalue computation failed: {detail}")]
    EigenFailed { detail: String },

    #[error("spectral radius is {r}, but the operation requires r(T) = 1 (within {tol:.3e}); rescale first")]
    SpectralRadiusNotOne { r: f64, tol: f64 },

    #[error("set member {value} has modulus {modulus} incompatible with radius {radius}")]
    ModulusMismatch {
        value: Complex64,
        modulus: f64,
        radius: f64,
    },

    #[error("({lambda}, z) is not an eigenpair: residual {residual:.3e} exceeds {tol:.3e}")]
    NotEigenpair {
        lambda: Complex64,
        residual: f64,
        tol: f64,
    },

    #[error("direction must have unit modulus, got |lambda| = {modulus}")]
    NotUnitModulus { modulus: f64 },

    #[error("vector must be normalized in the operator norm, got {norm}")]
    NotNormalized { norm: f64 },

    #[error("torsion construction rejected: |z_{index}| = {modulus:.3e} is below the working-precision floor")]
    TorsionEntryTooSmall { index: usize, modulus: f64 },

    #[error("invalid generator parameters: {detail}")]
    BadGeneratorParams { detail: String },

    #[error("unknown theorem id {id}")]
    UnknownTheorem { id: String },

    #[error("{detail}")]
    Invalid { detail: String },
}
