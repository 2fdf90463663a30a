//! Self-contained dense complex linear algebra: arithmetic, Hermitian
//! eigendecomposition, pseudoinverse, PSD square root and range projectors.

mod eig;
mod matrix;
mod spectral;

pub use eig::{hermitian_eig, hermitian_eigenvalues, EigDecomposition};
pub(crate) use eig::eigenvalues_of_hermitian_part;
pub use matrix::{inner, norm2, ComplexMatrix, C64};
pub use spectral::{psd_sqrt, pseudoinverse, range_projector, spectral_norm, PsdSpectrum};
