//! Computational calculus of semi-Hilbertian spaces.
//!
//! A positive semidefinite matrix `A` induces the semi-inner product
//! `<x, y>_A = <Ax, y>` and the seminorm `||x||_A`. This crate computes the
//! quantities built on top of it (A-adjoints, A-operator seminorms,
//! A-numerical radii, A-Crawford numbers) and evaluates a catalogue of
//! inequalities and equality characterizations between them, returning
//! every constituent value and slack as plain data.
//!
//! Every A-quantity of an operator that maps `N(A)` into itself is computed
//! from its compression to `R(A)`; see [`semispace`] for the reduction.

pub mod error;
pub mod fuzz;
pub mod golden;
pub mod inequalities;
pub mod linalg;
pub mod oracle;
pub mod radius;
pub mod semispace;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigDecomposition, C64};
pub use radius::{RadiusEstimate, RadiusMethod};
pub use semispace::{ExtendedReal, Membership, OperatorInSpace, SemiHilbertSpace};

/// Eigenvalues below `rank_tol * lambda_max` are treated as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Relative Frobenius tolerance for accepting a matrix as Hermitian.
pub const DEFAULT_HERMITICITY_TOL: f64 = 1e-10;
/// Target accuracy of radius and Crawford computations.
pub const DEFAULT_RADIUS_TOL: f64 = 1e-9;
/// Absolute tolerance of the adaptive Simpson rule.
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;
/// Inequality slack tolerance (absolute, plus the same relative to the chain).
pub const DEFAULT_CHECK_TOL: f64 = 1e-8;
/// Tolerance on the gap of equality diagnostics.
pub const DEFAULT_EQ_TOL: f64 = 1e-7;
/// Tolerance of the operator-class predicates.
pub const DEFAULT_PREDICATE_TOL: f64 = 1e-9;
