//! Error types for matrix construction, state validation, and the
//! entanglement computations built on top of them.

use thiserror::Error;

/// Failures in dense-matrix construction and factorization.
#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("entry buffer holds {found} values, expected {rows}x{cols} = {expected}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },
    #[error("non-finite entry at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix deviates from Hermitian symmetry by {deviation:.3e} (tolerance {tolerance:.0e})")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("expected a {expected}x{expected} matrix for local dimension {d}, got {rows}x{cols}")]
    BlockSize {
        rows: usize,
        cols: usize,
        d: usize,
        expected: usize,
    },
    #[error("vector length {len} is not a positive perfect square")]
    NotPerfectSquare { len: usize },
    #[error("Kronecker product dimensions overflow the address space")]
    SizeOverflow,
}

/// Failures in state construction, validation, and the fraction computations.
#[derive(Debug, Error)]
pub enum FefError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("local dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("amplitude vector holds {found} entries, expected d*d = {expected}")]
    AmplitudeCount { expected: usize, found: usize },
    #[error("non-finite amplitude at composite index {0}")]
    NonFiniteAmplitude(usize),
    #[error("squared norm deviates from 1 by {0:.3e}")]
    NotNormalized(f64),
    #[error("density matrix is {rows}x{cols}, expected {expected}x{expected}")]
    DensitySize {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("density matrix deviates from Hermitian symmetry by {0:.3e}")]
    NotHermitianDensity(f64),
    #[error("trace deviates from 1 by {0:.3e}")]
    TraceNotOne(f64),
    #[error("eigenvalue {0:.6e} lies below the positivity floor -1e-9")]
    NotPositive(f64),
    #[error("{name} = {value} lies outside [{min}, {max}]")]
    ParameterRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("sigma is not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("decomposition has no components")]
    EmptyDecomposition,
    #[error("weight {0} is negative or non-finite")]
    BadWeight(f64),
    #[error("weights sum to {0}, expected 1 within 1e-12")]
    WeightSum(f64),
    #[error("expected {expected} components, got {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("component dimensions differ: {0} vs {1}")]
    MixedDimensions(usize, usize),
    #[error("rank must lie in 1..={max}, got {got}")]
    RankRange { got: usize, max: usize },
    #[error("matrix is {rows}x{cols}, expected the {expected}x{expected} local unitary shape")]
    UnitarySize {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix deviates from unitarity by {0:.3e} (tolerance 1e-8)")]
    NotUnitary(f64),
    #[error("superposed vector has norm {0:.3e}, too close to zero to normalize")]
    DegenerateSuperposition(f64),
    #[error("the grid oracle only covers local dimension 2, got {0}")]
    OracleDimension(usize),
    #[error("grid resolution must be at least 2, got {0}")]
    ResolutionTooSmall(usize),
}
