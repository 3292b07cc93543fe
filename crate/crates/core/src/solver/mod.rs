//! Degenerate perturbation theory and the truncated plane-wave eigensolver.

pub mod bloch;
pub mod jacobi;
pub mod matrix;
pub mod perturbation;
pub mod scan;

pub use bloch::{build_bloch_problem, BlochProblem};
pub use jacobi::eigenvalues_hermitian;
pub use matrix::CMatrix;
pub use perturbation::{degenerate_shifts, degenerate_subspace_at, DegenerateSubspace};
pub use scan::{band_scan, BandRow, BandTable, RowFlag};
