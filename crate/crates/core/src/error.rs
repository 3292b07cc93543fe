use thiserror::Error;

/// Errors raised by the lattice model, the solvers and the oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("wavelength must be positive and finite, got {0} nm")]
    InvalidWavelength(f64),

    #[error("intensity must be non-negative and finite, got {0} W/cm^2")]
    InvalidIntensity(f64),

    #[error("zone rank must be in 1..=5, got {0}")]
    RankOutOfRange(i64),

    #[error("degeneracy tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("truncation order must be at least {min}, got {got}")]
    InvalidTruncation { min: usize, got: usize },

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("matrix is not Hermitian: defect {defect:e} exceeds {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("mass must be positive, got {0} eV")]
    NonPositiveMass(f64),

    #[error("quadrature grid needs an even number of points >= {min} per axis, got {got}")]
    InvalidQuadrature { min: usize, got: usize },

    #[error("state separation {0} is not an integer multiple of the lattice step")]
    NonLatticeTransfer(f64),

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("scan offsets must be finite")]
    NonFiniteOffset,
}

pub type Result<T> = std::result::Result<T, Error>;
