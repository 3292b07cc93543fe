//! Truncated central equation: the Hamiltonian on the plane waves
//! `kappa + K(n_E, n_p)` with `|n_E|, |n_p| <= N`.
//!
//! Near the mass shell the diagonal is of order `Mc²/2` while the structure of
//! interest sits at the 1e-9 eV level, so the matrix is stored relative to
//! `offset = s(kappa)` and every diagonal entry is computed as an exact
//! difference.

use super::jacobi::eigenvalues_hermitian_blocked;
use super::matrix::CMatrix;
use crate::coupling::coupling;
use crate::error::{Error, Result};
use crate::lattice::{stueckelberg_diagonal, stueckelberg_shift, LatticeConfig, LatticeTransfer, WaveVector4};

#[derive(Debug, Clone)]
pub struct BlochProblem {
    pub kappa: WaveVector4,
    pub truncation: usize,
    /// Lattice offsets of the basis, `n_E` major.
    pub transfers: Vec<LatticeTransfer>,
    pub basis: Vec<WaveVector4>,
    /// `s(kappa)`; the full Hamiltonian is `offset·I + hamiltonian`.
    pub offset: f64,
    pub hamiltonian: CMatrix,
}

pub fn build_bloch_problem(
    kappa: &WaveVector4,
    truncation: usize,
    config: &LatticeConfig,
    include_linear: bool,
) -> Result<BlochProblem> {
    if truncation < 1 {
        return Err(Error::InvalidTruncation { min: 1, got: truncation });
    }
    let n = truncation as i32;
    let step = config.hbar_c_k_gamma();
    let transfers: Vec<LatticeTransfer> = (-n..=n)
        .flat_map(|ne| (-n..=n).map(move |np| LatticeTransfer::new(ne, np)))
        .collect();
    let basis: Vec<WaveVector4> = transfers.iter().map(|&t| kappa.shifted(t, step)).collect();

    let dim = basis.len();
    let mut h = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let t = LatticeTransfer::new(transfers[j].n_e - transfers[i].n_e, transfers[j].n_p - transfers[i].n_p);
            let v = coupling(&basis[i], t, config, include_linear);
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
        h[(i, i)].re += stueckelberg_shift(kappa, transfers[i], config);
        h[(i, i)].im = 0.0;
    }

    Ok(BlochProblem {
        kappa: *kappa,
        truncation,
        transfers,
        basis,
        offset: stueckelberg_diagonal(kappa, config),
        hamiltonian: h,
    })
}

impl BlochProblem {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Eigenvalues relative to [`BlochProblem::offset`], ascending.
    pub fn relative_spectrum(&self) -> Result<Vec<f64>> {
        eigenvalues_hermitian_blocked(&self.hamiltonian)
    }

    /// Absolute Stueckelberg eigenvalues in eV, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(self.relative_spectrum()?.into_iter().map(|x| x + self.offset).collect())
    }

    /// Absolute diagonal entry `i` in eV.
    pub fn diagonal(&self, i: usize) -> f64 {
        self.offset + self.hamiltonian[(i, i)].re
    }

    pub fn index_of(&self, t: LatticeTransfer) -> Option<usize> {
        self.transfers.iter().position(|&x| x == t)
    }
}
