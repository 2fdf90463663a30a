//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation to the resulting
//! real symmetric 2x2 block. Sweeps stop once the off-diagonal Frobenius mass
//! drops below `1e-14 * ||M||_F`.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigenvalues in ascending order with a unitary matrix of eigenvectors (as columns).
#[derive(Clone, Debug)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(f(lambda)) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let scaled: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .filter(|&k| scaled[k] != 0.0)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * scaled[k])
                .sum()
        })
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }
}

fn check_hermitian(m: &ComplexMatrix, hermiticity_tol: f64) -> Result<usize> {
    let n = m.ensure_square()?;
    let defect = m.hermitian_defect();
    if defect > hermiticity_tol {
        return Err(Error::NotHermitian { asymmetry: defect });
    }
    Ok(n)
}

/// Full Hermitian eigendecomposition, eigenvalues ascending.
pub fn hermitian_eig(m: &ComplexMatrix, hermiticity_tol: f64) -> Result<EigDecomposition> {
    let n = check_hermitian(m, hermiticity_tol)?;
    let mut work = m.hermitian_part();
    let mut vecs = ComplexMatrix::identity(n);
    jacobi(&mut work, Some(&mut vecs))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].re.total_cmp(&work[(j, j)].re));
    Ok(EigDecomposition {
        eigenvalues: order.iter().map(|&k| work[(k, k)].re).collect(),
        eigenvectors: vecs.select_columns(&order),
    })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, hermiticity_tol: f64) -> Result<Vec<f64>> {
    check_hermitian(m, hermiticity_tol)?;
    eigenvalues_of_hermitian_part(m)
}

/// Eigenvalues of `(M + M*)/2`, ascending, without a hermiticity check.
///
/// Used in the inner loops of the angle sweeps, where the argument is
/// Hermitian by construction.
pub(crate) fn eigenvalues_of_hermitian_part(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.ensure_square()?;
    let mut ev = match n {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
            let mean = 0.5 * (a + d);
            let rad = (0.5 * (a - d)).hypot(b.norm());
            vec![mean - rad, mean + rad]
        }
        _ => {
            let mut work = m.hermitian_part();
            jacobi(&mut work, None)?;
            (0..n).map(|k| work[(k, k)].re).collect()
        }
    };
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(a: &mut ComplexMatrix, mut vecs: Option<&mut ComplexMatrix>) -> Result<()> {
    let n = a.rows();
    let scale = a.frobenius_norm();
    if scale == 0.0 || n < 2 {
        return Ok(());
    }
    let target = OFF_DIAGONAL_TOL * scale;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a) <= target {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let phase_conj = (apq / r).conj();
                // U restricted to (p, q): diag(1, e^{-i phi}) times [[c, s], [-s, c]].
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = phase_conj * (-s);
                let u_qq = phase_conj * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                if let Some(v) = vecs.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * u_pp + vkq * u_qp;
                        v[(k, q)] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }
    if off_diagonal_norm(a) <= target {
        Ok(())
    } else {
        Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_HERMITICITY_TOL as HT;

    fn assert_decomposes(m: &ComplexMatrix, e: &EigDecomposition) {
        let n = m.rows();
        let v = &e.eigenvectors;
        let lambda = ComplexMatrix::diag_real(&e.eigenvalues);
        let resid = (&m.matmul(v) - &v.matmul(&lambda)).frobenius_norm();
        assert!(resid <= 1e-12 * m.frobenius_norm().max(1.0), "residual {resid}");
        let gram = v.adjoint().matmul(v);
        assert!((&gram - &ComplexMatrix::identity(n)).frobenius_norm() <= 1e-12);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input() {
        let m = ComplexMatrix::diag_real(&[1.0, 2.0]);
        let e = hermitian_eig(&m, HT).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0]);
        assert_eq!(e.eigenvectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn rank_one_all_ones() {
        let m = ComplexMatrix::real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let e = hermitian_eig(&m, HT).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-15);
        assert!((e.eigenvalues[1] - 2.0).abs() < 1e-15);
        let top = e.eigenvector(1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvectors are defined up to a unit phase
        let overlap = (top[0] * s + top[1] * s).norm();
        assert!((overlap - 1.0).abs() < 1e-14);
        assert_decomposes(&m, &e);
    }

    #[test]
    fn characteristic_polynomial_roots() {
        let m = ComplexMatrix::real(&[&[1.0, -1.0], &[-1.0, 2.0]]);
        let e = hermitian_eig(&m, HT).unwrap();
        let r5 = 5f64.sqrt();
        assert!((e.eigenvalues[0] - (3.0 - r5) / 2.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - (3.0 + r5) / 2.0).abs() < 1e-14);
        assert_decomposes(&m, &e);
    }

    #[test]
    fn complex_three_by_three() {
        let c = C64::new;
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 1.0), c(0.0, -2.0)],
            vec![c(1.0, -1.0), c(-1.0, 0.0), c(0.5, 0.5)],
            vec![c(0.0, 2.0), c(0.5, -0.5), c(3.0, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eig(&m, HT).unwrap();
        assert_decomposes(&m, &e);
        let trace: f64 = e.eigenvalues.iter().sum();
        assert!((trace - 4.0).abs() < 1e-12);
        let fast = eigenvalues_of_hermitian_part(&m).unwrap();
        for (a, b) in fast.iter().zip(&e.eigenvalues) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(hermitian_eig(&m, HT), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            hermitian_eig(&ComplexMatrix::zeros(2, 3), HT),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn zero_and_empty_matrices() {
        let e = hermitian_eig(&ComplexMatrix::zeros(3, 3), HT).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 3]);
        let e = hermitian_eig(&ComplexMatrix::zeros(0, 0), HT).unwrap();
        assert!(e.eigenvalues.is_empty());
    }
}
