//! First-order degenerate perturbation theory.

use super::jacobi::{check_hermitian, eigenvalues_hermitian};
use super::matrix::CMatrix;
use crate::brillouin::degenerate_partners;
use crate::coupling::coupling;
use crate::error::{Error, Result};
use crate::lattice::{LatticeConfig, LatticeTransfer, WaveVector4};

/// Mutually degenerate plane waves and the potential restricted to them.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateSubspace {
    pub states: Vec<WaveVector4>,
    pub couplings: CMatrix,
}

impl DegenerateSubspace {
    pub fn new(states: Vec<WaveVector4>, couplings: CMatrix) -> Result<Self> {
        if couplings.dim() != states.len() {
            return Err(Error::NotSquare {
                rows: states.len(),
                row: 0,
                len: couplings.dim(),
            });
        }
        check_hermitian(&couplings)?;
        Ok(Self { states, couplings })
    }
}

/// First-order shifts: eigenvalues of the coupling matrix, ascending.
pub fn degenerate_shifts(sub: &DegenerateSubspace) -> Result<Vec<f64>> {
    eigenvalues_hermitian(&sub.couplings)
}

/// The degenerate class of `kappa` reachable through zone-edge transfers of
/// rank 1..=5, with every pairwise coupling filled in.
pub fn degenerate_subspace_at(
    kappa: &WaveVector4,
    config: &LatticeConfig,
    include_linear: bool,
    tolerance: f64,
) -> Result<DegenerateSubspace> {
    let step = config.hbar_c_k_gamma();
    let mut transfers = vec![LatticeTransfer::ZERO];
    transfers.extend(degenerate_partners(kappa, config, tolerance, crate::brillouin::MAX_RANK)?);
    let states: Vec<WaveVector4> = transfers.iter().map(|&t| kappa.shifted(t, step)).collect();

    let n = states.len();
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let t = LatticeTransfer::new(transfers[j].n_e - transfers[i].n_e, transfers[j].n_p - transfers[i].n_p);
            let v = coupling(&states[i], t, config, include_linear);
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
        m[(i, i)].im = 0.0;
    }
    DegenerateSubspace::new(states, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brillouin::default_tolerance;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pair(beta: f64, off: f64) -> DegenerateSubspace {
        let m = CMatrix::from_real_rows(&[vec![4.0 * beta, off * beta], vec![off * beta, 4.0 * beta]]).unwrap();
        DegenerateSubspace::new(vec![WaveVector4::default(); 2], m).unwrap()
    }

    #[test]
    fn textbook_pairs() {
        for off in [2.0, -2.0] {
            let ev = degenerate_shifts(&pair(0.5, off)).unwrap();
            assert!((ev[0] - 1.0).abs() < 1e-15);
            assert!((ev[1] - 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn scalar_case() {
        let m = CMatrix::from_diagonal(&[1.25]);
        let sub = DegenerateSubspace::new(vec![WaveVector4::default()], m).unwrap();
        assert_eq!(degenerate_shifts(&sub).unwrap(), vec![1.25]);
    }

    #[test]
    fn rejects_non_hermitian_and_mismatched() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(DegenerateSubspace::new(vec![WaveVector4::default(); 2], m.clone()).is_err());
        assert!(DegenerateSubspace::new(vec![WaveVector4::default(); 3], CMatrix::from_diagonal(&[1.0])).is_err());
    }

    #[test]
    fn phase_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for off in [2.0, -2.0] {
            let base = pair(0.37, off);
            let reference = degenerate_shifts(&base).unwrap();
            for _ in 0..20 {
                let phases: Vec<f64> = (0..2).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
                let sub = DegenerateSubspace::new(base.states.clone(), base.couplings.conjugated_by_phases(&phases)).unwrap();
                let ev = degenerate_shifts(&sub).unwrap();
                for (a, b) in ev.iter().zip(&reference) {
                    assert!((a - b).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn momentum_edge_subspace_is_the_textbook_pair() {
        let c = LatticeConfig::electron(589.0, 3.13e12).unwrap();
        let a = c.hbar_c_k_gamma();
        let kappa = WaveVector4::longitudinal((510998.95f64.powi(2) + a * a).sqrt(), a);
        let sub = degenerate_subspace_at(&kappa, &c, true, default_tolerance(&c)).unwrap();
        assert_eq!(sub.states.len(), 2);
        let b = c.beta();
        assert_eq!(sub.couplings[(0, 1)], Complex64::new(2.0 * b, 0.0));
        let ev = degenerate_shifts(&sub).unwrap();
        assert!((ev[0] - 2.0 * b).abs() < 1e-14 * b);
        assert!((ev[1] - 6.0 * b).abs() < 1e-14 * b);
    }

    #[test]
    fn energy_edge_subspace_has_negative_coupling() {
        let c = LatticeConfig::electron(589.0, 3.13e12).unwrap();
        let a = c.hbar_c_k_gamma();
        let kappa = WaveVector4::longitudinal(-a, 0.1);
        let sub = degenerate_subspace_at(&kappa, &c, true, default_tolerance(&c)).unwrap();
        assert_eq!(sub.states.len(), 2);
        assert_eq!(sub.couplings[(0, 1)].re, -2.0 * c.beta());
    }
}
