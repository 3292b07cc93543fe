//! Cyclic Jacobi eigenvalue iteration for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of `a_pq` and then applies the real
//! symmetric Jacobi rotation, so the working matrix stays exactly Hermitian.

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Accepted `|a_ij - conj(a_ji)|` relative to the Frobenius norm.
pub const HERMITIAN_TOLERANCE: f64 = 1e-13;

/// Iteration stops once the off-diagonal norm drops below this fraction of the
/// initial Frobenius norm.
pub const CONVERGENCE: f64 = 1e-14;

pub const MAX_SWEEPS: usize = 100;

pub fn check_hermitian(m: &CMatrix) -> Result<()> {
    let tolerance = HERMITIAN_TOLERANCE * m.frobenius_norm();
    let defect = m.hermiticity_defect();
    if defect > tolerance {
        return Err(Error::NotHermitian { defect, tolerance });
    }
    Ok(())
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Full real spectrum of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(m: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let mut a = m.clone();
    diagonalize(&mut a)?;
    let mut values: Vec<f64> = (0..a.dim()).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Same spectrum as [`eigenvalues_hermitian`], diagonalizing each connected
/// block of the sparsity pattern separately.
pub fn eigenvalues_hermitian_blocked(m: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let mut values = Vec::with_capacity(m.dim());
    for block in m.blocks() {
        let mut sub = m.submatrix(&block);
        diagonalize(&mut sub)?;
        values.extend((0..sub.dim()).map(|i| sub[(i, i)].re));
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn diagonalize(a: &mut CMatrix) -> Result<()> {
    let n = a.dim();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let threshold = CONVERGENCE * a.frobenius_norm();
    for sweep in 0..=MAX_SWEEPS {
        let off = off_diagonal_norm(a);
        if off <= threshold {
            return Ok(());
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                residual: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(a, p, q);
            }
        }
    }
    unreachable!()
}

/// Zeroes `a_pq` with the unitary `U` whose `(p,q)` block is
/// `[[c, s], [-s e, c e]]`, `e = exp(-i arg a_pq)`, and replaces `a` by `U† a U`.
fn rotate(a: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq.conj() / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let se = phase * s;
    let ce = phase * c;

    for k in 0..a.dim() {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * c - akq * se;
        let new_kq = akp * s + akq * ce;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in i + 1..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let m = CMatrix::from_diagonal(&[3.0, -1.0, 2.0, 0.5]);
        assert_eq!(eigenvalues_hermitian(&m).unwrap(), vec![-1.0, 0.5, 2.0, 3.0]);
    }

    #[test]
    fn pauli_y() {
        let m = CMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        let ev = eigenvalues_hermitian(&m).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15);
        assert!((ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(eigenvalues_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn empty_and_scalar() {
        assert!(eigenvalues_hermitian(&CMatrix::zeros(0)).unwrap().is_empty());
        assert_eq!(eigenvalues_hermitian(&CMatrix::from_diagonal(&[7.5])).unwrap(), vec![7.5]);
    }

    #[test]
    fn deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_hermitian(12, &mut rng);
        assert_eq!(eigenvalues_hermitian(&m).unwrap(), eigenvalues_hermitian(&m).unwrap());
    }

    #[test]
    fn blocked_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let dense = random_hermitian(6, &mut rng);
        // embed two copies in a 12x12 block-diagonal matrix, interleaved
        let mut m = CMatrix::zeros(12);
        for i in 0..6 {
            for j in 0..6 {
                m[(2 * i, 2 * j)] = dense[(i, j)];
                m[(2 * i + 1, 2 * j + 1)] = dense[(i, j)] * 2.0;
            }
        }
        let a = eigenvalues_hermitian(&m).unwrap();
        let b = eigenvalues_hermitian_blocked(&m).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn trace_norm_and_count(seed in 0u64..10_000, n in 1usize..24) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_hermitian(n, &mut rng);
            let ev = eigenvalues_hermitian(&m).unwrap();
            prop_assert_eq!(ev.len(), n);
            let tr: f64 = ev.iter().sum();
            let norm = m.frobenius_norm();
            prop_assert!((tr - m.trace().re).abs() <= 1e-12 * norm.max(1.0));
            let frob = ev.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((frob - norm).abs() <= 1e-12 * norm);
            prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
