//! Band structure of a charged particle in a spacetime lattice generated by a
//! standing electromagnetic wave.
//!
//! The unperturbed problem is the free Stueckelberg Hamiltonian `p_μ p^μ / 2M`
//! on plane waves; the wave adds a term linear in the vector potential and a
//! term quadratic in it. The crate provides
//!
//! * the closed-form matrix elements and the degenerate 2×2 shifts at zone
//!   edges ([`coupling`], [`solver::perturbation`]),
//! * a truncated plane-wave Hermitian eigensolver for cross-checking them
//!   ([`solver::bloch`], [`solver::jacobi`]),
//! * conversion of mass shifts into a forbidden kinetic-energy band ([`spectra`]),
//! * a brute-force quadrature of the matrix elements over a unit cell
//!   ([`oracle`]),
//! * the `stcrystal` command-line front end ([`cli`]).

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod brillouin;
pub mod cli;
pub mod constants;
pub mod coupling;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod solver;
pub mod spectra;

pub use error::{Error, Result};
pub use lattice::{make_config, FormulaMode, LatticeConfig, LatticeTransfer, Species, WavenumberConvention, WaveVector4};
