use crate::error::{Error, Result};
use crate::linalg::eig::{eigenvalues_of_hermitian_part, hermitian_eig, EigDecomposition};
use crate::linalg::matrix::ComplexMatrix;
use crate::DEFAULT_HERMITICITY_TOL;

/// Spectral data of a Hermitian positive semidefinite matrix with a numerical
/// rank decided by `rank_tol` relative to the largest eigenvalue.
#[derive(Clone, Debug)]
pub struct PsdSpectrum {
    pub eig: EigDecomposition,
    pub lambda_max: f64,
    /// Eigenvalues strictly above this are kept; the rest count as zero.
    pub cutoff: f64,
    pub rank: usize,
}

impl PsdSpectrum {
    pub fn new(m: &ComplexMatrix, rank_tol: f64) -> Result<Self> {
        let eig = hermitian_eig(m, DEFAULT_HERMITICITY_TOL)?;
        let scale = eig.eigenvalues.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
        let lambda_min = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if lambda_min < -rank_tol * scale {
            return Err(Error::NotPsd {
                min_eigenvalue: lambda_min,
            });
        }
        let lambda_max = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let cutoff = rank_tol * lambda_max;
        let rank = eig.eigenvalues.iter().filter(|&&l| l > cutoff).count();
        Ok(Self {
            eig,
            lambda_max,
            cutoff,
            rank,
        })
    }

    pub fn is_kept(&self, lambda: f64) -> bool {
        lambda > self.cutoff
    }

    /// Indices of the kept eigenpairs (they are the trailing ones).
    pub fn range_indices(&self) -> std::ops::Range<usize> {
        let n = self.eig.dim();
        n - self.rank..n
    }

    pub fn kernel_indices(&self) -> std::ops::Range<usize> {
        0..self.eig.dim() - self.rank
    }

    /// `V f(Lambda) V*` with `f` applied to kept eigenvalues and zero elsewhere.
    pub fn apply_on_range(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        self.eig
            .reconstruct_with(|l| if l > self.cutoff { f(l) } else { 0.0 })
    }
}

/// Moore-Penrose inverse of a Hermitian PSD matrix.
pub fn pseudoinverse(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    Ok(PsdSpectrum::new(m, rank_tol)?.apply_on_range(f64::recip))
}

/// Hermitian PSD square root; eigenvalues in `[-rank_tol * lambda_max, 0]` are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let spec = PsdSpectrum::new(m, rank_tol)?;
    Ok(spec.eig.reconstruct_with(|l| l.max(0.0).sqrt()))
}

/// Orthogonal projector onto the numerical range of `m`, with its rank.
pub fn range_projector(m: &ComplexMatrix, rank_tol: f64) -> Result<(ComplexMatrix, usize)> {
    let spec = PsdSpectrum::new(m, rank_tol)?;
    Ok((spec.apply_on_range(|_| 1.0), spec.rank))
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let gram = if m.rows() < m.cols() {
        m.matmul(&m.adjoint())
    } else {
        m.adjoint().matmul(m)
    };
    // The Gram matrix is Hermitian by construction, so only convergence can fail.
    let top = eigenvalues_of_hermitian_part(&gram)
        .map(|ev| ev.last().copied().unwrap_or(0.0))
        .unwrap_or_else(|_| gram.frobenius_norm());
    top.max(0.0).sqrt()
}
