//! The semi-Hilbertian structure induced by a positive semidefinite `A`.
//!
//! Let `A = V D V*` with `V` (n x r) an orthonormal basis of `R(A)` and `D`
//! the positive eigenvalues. An operator `T` that maps `N(A)` into `N(A)` has
//! the *compression*
//!
//! ```text
//! C(T) = D^{1/2} V* T V D^{-1/2}        (r x r)
//! ```
//!
//! and with `u = D^{1/2} V* x` every A-quantity of `T` becomes a classical one:
//! `||x||_A = ||u||`, `||Tx||_A = ||C(T) u||`, `<Tx, x>_A = <C(T) u, u>`.
//! Moreover `C(T^#) = C(T)*`, `C(TS) = C(T) C(S)` and `C(T + S) = C(T) + C(S)`,
//! so A-seminorms, A-numerical radii and A-Crawford numbers of `T` are the
//! operator norm, numerical radius and Crawford number of `C(T)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{inner, norm2, spectral_norm, ComplexMatrix, PsdSpectrum, C64};
use crate::{DEFAULT_HERMITICITY_TOL, DEFAULT_RANK_TOL};

/// Relative tolerance of the two membership tests.
const MEMBERSHIP_TOL: f64 = 1e-10;

/// A nonnegative real or `+inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::Infinite => write!(f, "+inf"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => s.serialize_f64(*v),
            ExtendedReal::Infinite => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtendedReal::Finite(v)),
            Raw::Str(s) if s == "+inf" || s == "inf" => Ok(ExtendedReal::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected number or \"+inf\", got {s:?}"))),
        }
    }
}

/// A validated positive semidefinite `A` with its cached spectral artifacts.
#[derive(Clone, Debug)]
pub struct SemiHilbertSpace {
    dim: usize,
    a: ComplexMatrix,
    a_half: ComplexMatrix,
    a_half_pinv: ComplexMatrix,
    a_pinv: ComplexMatrix,
    proj: ComplexMatrix,
    range_basis: ComplexMatrix,
    kernel_basis: ComplexMatrix,
    range_eigenvalues: Vec<f64>,
    rank: usize,
    rank_tol: f64,
    a_norm: f64,
}

impl SemiHilbertSpace {
    /// Validates `a` (square, Hermitian, PSD) and precomputes `A^{1/2}`,
    /// `(A^{1/2})^+`, `A^+`, the range projector and orthonormal bases of
    /// `R(A)` and `N(A)`.
    pub fn new(a: ComplexMatrix, rank_tol: f64) -> Result<Self> {
        let dim = a.ensure_square()?;
        let defect = a.hermitian_defect();
        if defect > DEFAULT_HERMITICITY_TOL {
            return Err(Error::NotHermitian { asymmetry: defect });
        }
        let spec = PsdSpectrum::new(&a, rank_tol)?;
        let range_idx: Vec<usize> = spec.range_indices().collect();
        let kernel_idx: Vec<usize> = spec.kernel_indices().collect();
        let range_eigenvalues: Vec<f64> = range_idx.iter().map(|&k| spec.eig.eigenvalues[k]).collect();
        Ok(Self {
            dim,
            a_half: spec.apply_on_range(f64::sqrt),
            a_half_pinv: spec.apply_on_range(|l| l.sqrt().recip()),
            a_pinv: spec.apply_on_range(f64::recip),
            proj: spec.apply_on_range(|_| 1.0),
            range_basis: spec.eig.eigenvectors.select_columns(&range_idx),
            kernel_basis: spec.eig.eigenvectors.select_columns(&kernel_idx),
            range_eigenvalues,
            rank: spec.rank,
            rank_tol,
            a_norm: spec.lambda_max,
            a,
        })
    }

    pub fn with_default_tol(a: ComplexMatrix) -> Result<Self> {
        Self::new(a, DEFAULT_RANK_TOL)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn a_half(&self) -> &ComplexMatrix {
        &self.a_half
    }

    pub fn a_half_pinv(&self) -> &ComplexMatrix {
        &self.a_half_pinv
    }

    pub fn a_pinv(&self) -> &ComplexMatrix {
        &self.a_pinv
    }

    /// Orthogonal projector onto `R(A)`.
    pub fn proj(&self) -> &ComplexMatrix {
        &self.proj
    }

    /// n x r, orthonormal columns spanning `R(A)`.
    pub fn range_basis(&self) -> &ComplexMatrix {
        &self.range_basis
    }

    /// n x (n - r), orthonormal columns spanning `N(A)`.
    pub fn kernel_basis(&self) -> &ComplexMatrix {
        &self.kernel_basis
    }

    /// Positive eigenvalues of `A`, aligned with the columns of `range_basis`.
    pub fn range_eigenvalues(&self) -> &[f64] {
        &self.range_eigenvalues
    }

    /// `||A||_2`.
    pub fn a_norm(&self) -> f64 {
        self.a_norm
    }

    fn check_len(&self, x: &[C64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `<x, y>_A = <Ax, y>`, linear in `x`, conjugate-linear in `y`.
    pub fn a_inner(&self, x: &[C64], y: &[C64]) -> Result<C64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(inner(&self.a.mul_vec(x), y))
    }

    /// `||A^{1/2} x||`, which avoids the cancellation in `<Ax, x>` for nearly A-null `x`.
    pub fn a_norm_vec(&self, x: &[C64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(norm2(&self.a_half.mul_vec(x)))
    }

    /// `u = D^{1/2} V* x`; satisfies `||u|| = ||x||_A`.
    pub fn to_compressed(&self, x: &[C64]) -> Vec<C64> {
        let vx = self.range_basis.adjoint().mul_vec(x);
        vx.iter().zip(&self.range_eigenvalues).map(|(z, d)| z * d.sqrt()).collect()
    }

    /// `x = V D^{-1/2} u`, the canonical preimage of `u` in `R(A)`.
    pub fn from_compressed(&self, u: &[C64]) -> Vec<C64> {
        let scaled: Vec<C64> = u.iter().zip(&self.range_eigenvalues).map(|(z, d)| z / d.sqrt()).collect();
        self.range_basis.mul_vec(&scaled)
    }

    /// `D^{1/2} V* T V D^{-1/2}`.
    pub fn compress_matrix(&self, t: &ComplexMatrix) -> ComplexMatrix {
        let inner = self.range_basis.adjoint().matmul(t).matmul(&self.range_basis);
        let d = &self.range_eigenvalues;
        ComplexMatrix::from_fn(self.rank, self.rank, |i, j| inner[(i, j)] * (d[i] / d[j]).sqrt())
    }

    /// `V D^{-1/2} B D^{1/2} V*`, the canonical operator with compression `B`.
    pub fn lift_matrix(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let r = b.ensure_square()?;
        if r != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: r,
            });
        }
        let d = &self.range_eigenvalues;
        let scaled = ComplexMatrix::from_fn(r, r, |i, j| b[(i, j)] * (d[j] / d[i]).sqrt());
        Ok(self.range_basis.matmul(&scaled).matmul(&self.range_basis.adjoint()))
    }

    /// Binds `t` to this space, deciding membership and caching `T^#` and the compression.
    pub fn bind(&self, t: ComplexMatrix) -> Result<OperatorInSpace<'_>> {
        let n = t.ensure_square()?;
        if n != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: n,
            });
        }
        let t_norm = spectral_norm(&t);
        let complement = &ComplexMatrix::identity(n) - &self.proj;

        let leak = self.a_half.matmul(&t).matmul(&complement);
        let a_bounded = spectral_norm(&leak) <= MEMBERSHIP_TOL * (self.a_norm.sqrt() * t_norm).max(1.0);
        let adjoint_defect = complement.matmul(&t.adjoint()).matmul(&self.a);
        let admits_adjoint = spectral_norm(&adjoint_defect) <= MEMBERSHIP_TOL * (self.a_norm * t_norm).max(1.0);

        let sharp = admits_adjoint.then(|| self.a_pinv.matmul(&t.adjoint()).matmul(&self.a));
        let compression = a_bounded.then(|| self.compress_matrix(&t));
        let ata = self.a.matmul(&t).matmul(&self.a);
        let annihilated =
            ata.frobenius_norm() <= MEMBERSHIP_TOL * (self.a_norm * self.a_norm * t_norm).max(1.0);

        Ok(OperatorInSpace {
            space: self,
            t,
            t_norm,
            membership: Membership {
                a_bounded,
                admits_adjoint,
            },
            sharp,
            compression,
            annihilated,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    /// `||T||_A < inf`.
    pub a_bounded: bool,
    /// `T` has an A-adjoint, i.e. `R(T* A) ⊆ R(A)`.
    pub admits_adjoint: bool,
}

/// An operator bound to a [`SemiHilbertSpace`], with cached `T^#` and compression.
#[derive(Clone, Debug)]
pub struct OperatorInSpace<'s> {
    space: &'s SemiHilbertSpace,
    t: ComplexMatrix,
    t_norm: f64,
    membership: Membership,
    sharp: Option<ComplexMatrix>,
    compression: Option<ComplexMatrix>,
    annihilated: bool,
}

impl<'s> OperatorInSpace<'s> {
    pub fn space(&self) -> &'s SemiHilbertSpace {
        self.space
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.t
    }

    pub fn membership(&self) -> Membership {
        self.membership
    }

    pub fn is_admissible(&self) -> bool {
        self.membership.admits_adjoint && self.membership.a_bounded
    }

    /// Both membership criteria agree (they must in finite dimension).
    pub fn membership_consistent(&self) -> bool {
        self.membership.a_bounded == self.membership.admits_adjoint
    }

    /// `||T||_2` of the raw matrix.
    pub fn spectral_norm(&self) -> f64 {
        self.t_norm
    }

    /// `T^# = A^+ T* A`.
    pub fn sharp(&self) -> Result<&ComplexMatrix> {
        self.sharp.as_ref().ok_or(Error::NoAdjoint)
    }

    /// The r x r compression onto `R(A)`.
    pub fn compression(&self) -> Result<&ComplexMatrix> {
        self.compression.as_ref().ok_or(Error::NoAdjoint)
    }

    /// `ATA = 0`, equivalently `||T||_A = 0` for A-bounded `T`.
    pub fn is_a_null(&self) -> bool {
        self.annihilated
    }

    pub fn a_operator_norm(&self) -> ExtendedReal {
        match &self.compression {
            None => ExtendedReal::Infinite,
            Some(_) if self.annihilated => ExtendedReal::Finite(0.0),
            Some(c) => ExtendedReal::Finite(spectral_norm(c)),
        }
    }

    /// `||T||_A` for admissible operators.
    pub fn norm(&self) -> Result<f64> {
        if !self.is_admissible() {
            return Err(Error::NoAdjoint);
        }
        self.a_operator_norm().finite().ok_or(Error::NoAdjoint)
    }

    fn predicate_scale(&self) -> f64 {
        (self.space.a_norm * self.t_norm).max(1.0)
    }

    /// `AT = T* A` within `tol` relative to `max(1, ||A|| ||T||)`.
    pub fn is_a_selfadjoint(&self, tol: f64) -> bool {
        let at = self.space.a.matmul(&self.t);
        let ta = self.t.adjoint().matmul(&self.space.a);
        (&at - &ta).frobenius_norm() <= tol * self.predicate_scale()
    }

    /// `T T^# = T^# T`; false when `T` has no A-adjoint.
    pub fn is_a_normal(&self, tol: f64) -> bool {
        let Some(s) = &self.sharp else {
            return false;
        };
        let lhs = self.t.matmul(s);
        let rhs = s.matmul(&self.t);
        let scale = (self.t_norm * spectral_norm(s)).max(1.0);
        (&lhs - &rhs).frobenius_norm() <= tol * scale
    }

    /// `AT` Hermitian positive semidefinite.
    pub fn is_a_positive(&self, tol: f64) -> bool {
        if !self.is_a_selfadjoint(tol) {
            return false;
        }
        let at = self.space.a.matmul(&self.t);
        match crate::linalg::eigenvalues_of_hermitian_part(&at) {
            Ok(ev) => ev.first().is_none_or(|&l| l >= -tol * self.predicate_scale()),
            Err(_) => false,
        }
    }

    fn same_space(&self, other: &OperatorInSpace<'_>) -> Result<()> {
        if std::ptr::eq(self.space, other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// `T^#` bound to the same space.
    pub fn sharp_op(&self) -> Result<OperatorInSpace<'s>> {
        self.space.bind(self.sharp()?.clone())
    }

    /// `T S`.
    pub fn compose(&self, other: &OperatorInSpace<'_>) -> Result<OperatorInSpace<'s>> {
        self.same_space(other)?;
        self.space.bind(self.t.matmul(&other.t))
    }

    pub fn plus(&self, other: &OperatorInSpace<'_>) -> Result<OperatorInSpace<'s>> {
        self.same_space(other)?;
        self.space.bind(&self.t + &other.t)
    }

    pub fn minus(&self, other: &OperatorInSpace<'_>) -> Result<OperatorInSpace<'s>> {
        self.same_space(other)?;
        self.space.bind(&self.t - &other.t)
    }

    pub fn scaled(&self, s: C64) -> Result<OperatorInSpace<'s>> {
        self.space.bind(self.t.scale(s))
    }

    pub fn square(&self) -> Result<OperatorInSpace<'s>> {
        self.compose(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn space(rows: &[&[f64]]) -> SemiHilbertSpace {
        SemiHilbertSpace::with_default_tol(ComplexMatrix::real(rows)).unwrap()
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        (a - b).frobenius_norm() <= tol
    }

    #[test]
    fn identity_space() {
        let s = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(3)).unwrap();
        assert_eq!(s.rank(), 3);
        assert!(close(s.a_half(), &ComplexMatrix::identity(3), 1e-14));
        let t = ComplexMatrix::real(&[&[1.0, 2.0, 0.0], &[0.0, 1.0, 3.0], &[4.0, 0.0, 1.0]]);
        let op = s.bind(t.clone()).unwrap();
        assert!(op.membership().admits_adjoint);
        assert!(close(op.sharp().unwrap(), &t.adjoint(), 1e-13));
        // compression of A = I is T itself, up to the basis of eigenvectors
        let v = s.range_basis();
        assert!(close(&v.matmul(op.compression().unwrap()).matmul(&v.adjoint()), &t, 1e-13));
    }

    #[test]
    fn rank_deficient_diagonal() {
        let s = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        assert_eq!(s.rank(), 1);
        assert!(close(s.proj(), &ComplexMatrix::diag_real(&[1.0, 0.0]), 1e-14));
        assert_eq!(s.kernel_basis().cols(), 1);
    }

    #[test]
    fn rank_one_all_ones() {
        let ones = ComplexMatrix::real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let s = SemiHilbertSpace::with_default_tol(ones.clone()).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(close(s.a_half(), &ones.scale_re(std::f64::consts::FRAC_1_SQRT_2), 1e-14));
        assert!(close(s.a_pinv(), &ones.scale_re(0.25), 1e-14));
    }

    #[test]
    fn rejects_invalid_inducing_operators() {
        assert!(matches!(
            SemiHilbertSpace::with_default_tol(ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]])),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            SemiHilbertSpace::with_default_tol(ComplexMatrix::diag_real(&[1.0, -1.0])),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn semi_inner_product_examples() {
        let e1 = [c(1.0), c(0.0)];
        let e2 = [c(0.0), c(1.0)];
        let id = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(2)).unwrap();
        assert_eq!(id.a_inner(&e1, &e1).unwrap(), c(1.0));
        assert_eq!(id.a_norm_vec(&e1).unwrap(), 1.0);

        let degenerate = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        assert_eq!(degenerate.a_inner(&e2, &e2).unwrap(), c(0.0));
        assert_eq!(degenerate.a_norm_vec(&[c(0.0), c(5.0)]).unwrap(), 0.0);

        let d12 = space(&[&[1.0, 0.0], &[0.0, 2.0]]);
        assert_eq!(d12.a_inner(&[c(1.0), c(1.0)], &e1).unwrap(), c(1.0));
        assert!((d12.a_norm_vec(&e2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(d12.a_inner(&[c(1.0)], &e1), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn unbounded_swap_on_degenerate_space() {
        let s = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let op = s.bind(ComplexMatrix::real(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!(!op.membership().a_bounded);
        assert!(!op.membership().admits_adjoint);
        assert!(op.a_operator_norm().is_infinite());
        assert_eq!(op.sharp(), Err(Error::NoAdjoint));
    }

    #[test]
    fn selfadjoint_but_not_normal() {
        let s = space(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let op = s.bind(ComplexMatrix::real(&[&[2.0, 2.0], &[0.0, 0.0]])).unwrap();
        assert!(op.membership().admits_adjoint);
        assert!(op.is_a_selfadjoint(1e-9));
        assert!(!op.is_a_normal(1e-9));
        let sh = op.sharp().unwrap();
        assert!(close(&op.matrix().matmul(sh), &ComplexMatrix::real(&[&[4.0, 4.0], &[0.0, 0.0]]), 1e-12));
        assert!(close(&sh.matmul(op.matrix()), &ComplexMatrix::real(&[&[2.0, 2.0], &[2.0, 2.0]]), 1e-12));
        // rank-one compression is the scalar 2
        let comp = op.compression().unwrap();
        assert_eq!((comp.rows(), comp.cols()), (1, 1));
        assert!((comp[(0, 0)] - c(2.0)).norm() < 1e-13);
        assert!((op.a_operator_norm().finite().unwrap() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn sharp_of_upper_triangular_on_diag_space() {
        let s = space(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let t = ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let op = s.bind(t.clone()).unwrap();
        let sh = op.sharp().unwrap();
        // A T^# = T* A
        assert!(close(&s.a().matmul(sh), &t.adjoint().matmul(s.a()), 1e-13));
        assert!(close(sh, &ComplexMatrix::real(&[&[1.0, 0.0], &[1.0, 1.0]]), 1e-13));
        assert!(!op.is_a_selfadjoint(1e-9));
        let norm = op.a_operator_norm().finite().unwrap();
        assert!((norm - (2.0 + 3f64.sqrt()).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn compression_drops_kernel_direction() {
        let s = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let op = s.bind(ComplexMatrix::diag_real(&[1.0, 2.0])).unwrap();
        let comp = op.compression().unwrap();
        assert_eq!(comp.rows(), 1);
        assert!((comp[(0, 0)] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn annihilated_operator_has_zero_seminorm() {
        let s = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        // maps everything into the kernel
        let op = s.bind(ComplexMatrix::real(&[&[0.0, 0.0], &[1.0, 3.0]])).unwrap();
        assert!(op.is_a_null());
        assert_eq!(op.a_operator_norm(), ExtendedReal::Finite(0.0));
    }

    #[test]
    fn unitary_has_unit_seminorm() {
        let s = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(2)).unwrap();
        let i = C64::new(0.0, 1.0);
        let u = ComplexMatrix::from_rows(&[vec![c(0.0), i], vec![c(1.0), c(0.0)]]).unwrap();
        let op = s.bind(u).unwrap();
        assert!((op.norm().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn extended_real_serde() {
        let json = serde_json::to_string(&[ExtendedReal::Finite(1.5), ExtendedReal::Infinite]).unwrap();
        assert_eq!(json, "[1.5,\"+inf\"]");
        let back: Vec<ExtendedReal> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![ExtendedReal::Finite(1.5), ExtendedReal::Infinite]);
    }
}
