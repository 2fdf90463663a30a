//! A-numerical radius and A-Crawford number.
//!
//! For an admissible `T` with compression `C = C(T)`, the values `<Tx, x>_A`
//! over A-unit `x` are exactly the numerical range `W(C)`, a compact convex
//! set. Hence
//!
//! ```text
//! w_A(T) = sup_theta max |lambda(Re(e^{i theta} C))|
//! c_A(T) = max(0, sup_theta lambda_min(Re(e^{i theta} C)))
//! ```
//!
//! the second being the distance from 0 to `W(C)`: each `theta` gives a
//! supporting half-plane `Re(e^{i theta} z) >= lambda_min`, and the distance
//! from 0 to a convex set is the largest signed distance to such a half-plane.
//!
//! The primary radius route builds `Re(e^{i theta} C)` from the compressions of
//! `T` and of the actual matrix `T^#`, i.e. it evaluates the A-seminorm of the
//! A-real part `(e^{i theta} T + (e^{i theta} T)^#) / 2`. The oracle route uses
//! the classical formula on `C` alone.

mod direct;
pub mod sweep;

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

pub use direct::a_crawford_direct;
use sweep::{sup_sweep, COARSE_POINTS, REFINE_TOL};

use crate::error::Result;
use crate::linalg::{eigenvalues_of_hermitian_part, hermitian_eig, spectral_norm, ComplexMatrix, C64};
use crate::semispace::{ExtendedReal, OperatorInSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    ThetaSweepSeminorm,
    CompressionClassical,
    CrawfordSupport,
    DirectSampling,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub value: f64,
    /// Angle at which the supporting line was found.
    pub certificate_theta: f64,
    /// A-unit witness in the original space; absent when no A-unit vector
    /// exists (`A = 0`) or, for Crawford numbers, when the value is 0.
    pub certificate_vector: Option<Vec<C64>>,
    pub method: RadiusMethod,
    pub abs_error_bound: f64,
}

impl RadiusEstimate {
    fn without_witness(value: f64, method: RadiusMethod) -> Self {
        Self {
            value,
            certificate_theta: 0.0,
            certificate_vector: None,
            method,
            abs_error_bound: 0.0,
        }
    }
}

/// Largest eigenvalue and a unit eigenvector of `(e^{i theta} B + e^{-i theta} B*) / 2`.
pub fn support_max(b: &ComplexMatrix, theta: f64) -> Result<(f64, Vec<C64>)> {
    let e = hermitian_eig(&b.rotated_real_part(theta), f64::INFINITY)?;
    let k = e.dim().checked_sub(1).ok_or(crate::Error::NotSquare { rows: 0, cols: 0 })?;
    Ok((e.eigenvalues[k], e.eigenvector(k)))
}

/// `(e^{i theta} C + e^{-i theta} D) / 2`, where `D` plays the role of `C*`.
fn real_part_pair(c: &ComplexMatrix, d: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    let ph = C64::from_polar(1.0, theta);
    ComplexMatrix::from_fn(c.rows(), c.cols(), |i, j| (ph * c[(i, j)] + ph.conj() * d[(i, j)]) * 0.5)
}

fn extreme_eigenvalues(m: &ComplexMatrix) -> (f64, f64) {
    let ev = eigenvalues_of_hermitian_part(m).unwrap_or_else(|_| vec![f64::NAN]);
    (ev[0], ev[ev.len() - 1])
}

/// `|<Tx, x>_A|` evaluated in the original space.
fn witness_modulus(op: &OperatorInSpace<'_>, x: &[C64]) -> f64 {
    let tx = op.matrix().mul_vec(x);
    op.space().a_inner(&tx, x).map(|z| z.norm()).unwrap_or(f64::NAN)
}

/// A-numerical radius by the angle sweep of the A-real part (period `pi`).
///
/// `tol` is the accuracy the caller requires; it is not used to stop early but
/// the returned `abs_error_bound` can be compared against it.
pub fn a_numerical_radius(op: &OperatorInSpace<'_>, _tol: f64) -> Result<RadiusEstimate> {
    let c = op.compression()?;
    let c_sharp = op.space().compress_matrix(op.sharp()?);
    if c.rows() == 0 || op.is_a_null() {
        return Ok(RadiusEstimate::without_witness(0.0, RadiusMethod::ThetaSweepSeminorm));
    }
    let f = |theta: f64| {
        let (lo, hi) = extreme_eigenvalues(&real_part_pair(c, &c_sharp, theta));
        lo.abs().max(hi)
    };
    let (theta, value) = sup_sweep(f, PI, COARSE_POINTS, REFINE_TOL);

    let e = hermitian_eig(&real_part_pair(c, &c_sharp, theta), f64::INFINITY)?;
    let n = e.dim();
    let k = if e.eigenvalues[0].abs() > e.eigenvalues[n - 1] { 0 } else { n - 1 };
    let x = op.space().from_compressed(&e.eigenvector(k));
    let witness = witness_modulus(op, &x);
    let asym = (&c_sharp - &c.adjoint()).frobenius_norm();
    Ok(RadiusEstimate {
        value,
        certificate_theta: theta,
        certificate_vector: Some(x),
        method: RadiusMethod::ThetaSweepSeminorm,
        abs_error_bound: (witness - value).abs() + spectral_norm(c) * REFINE_TOL + asym,
    })
}

/// `w_A(T)`, or `+inf` when `T` is not A-bounded.
pub fn a_numerical_radius_extended(op: &OperatorInSpace<'_>, tol: f64) -> Result<ExtendedReal> {
    if !op.membership().a_bounded {
        return Ok(ExtendedReal::Infinite);
    }
    if op.membership().admits_adjoint {
        Ok(ExtendedReal::Finite(a_numerical_radius(op, tol)?.value))
    } else {
        // Both criteria coincide in finite dimension; this branch only guards
        // against a numerically borderline disagreement.
        Ok(ExtendedReal::Finite(a_numerical_radius_oracle(op, tol)?.value))
    }
}

/// Classical numerical radius of the compression, `sup_theta lambda_max(Re(e^{i theta} C))` over `[0, 2 pi)`.
pub fn a_numerical_radius_oracle(op: &OperatorInSpace<'_>, _tol: f64) -> Result<RadiusEstimate> {
    let c = op.compression()?;
    if c.rows() == 0 || op.is_a_null() {
        return Ok(RadiusEstimate::without_witness(0.0, RadiusMethod::CompressionClassical));
    }
    let f = |theta: f64| extreme_eigenvalues(&c.rotated_real_part(theta)).1;
    let (theta, value) = sup_sweep(f, TAU, COARSE_POINTS, REFINE_TOL);
    let (_, u) = support_max(c, theta)?;
    let x = op.space().from_compressed(&u);
    let witness = witness_modulus(op, &x);
    Ok(RadiusEstimate {
        value,
        certificate_theta: theta,
        certificate_vector: Some(x),
        method: RadiusMethod::CompressionClassical,
        abs_error_bound: (witness - value).abs() + spectral_norm(c) * REFINE_TOL,
    })
}

/// A-Crawford number `inf |<Tx, x>_A|` as the distance from 0 to the numerical range of the compression.
///
/// Returns 0 with no certificate vector when 0 lies in the numerical range,
/// and also when `A = 0` (no A-unit vector exists).
pub fn a_crawford(op: &OperatorInSpace<'_>, _tol: f64) -> Result<RadiusEstimate> {
    let c = op.compression()?;
    let c_sharp = op.space().compress_matrix(op.sharp()?);
    if c.rows() == 0 || op.is_a_null() {
        return Ok(RadiusEstimate::without_witness(0.0, RadiusMethod::CrawfordSupport));
    }
    let f = |theta: f64| extreme_eigenvalues(&real_part_pair(c, &c_sharp, theta)).0;
    let (theta, best) = sup_sweep(f, TAU, COARSE_POINTS, REFINE_TOL);
    let asym = (&c_sharp - &c.adjoint()).frobenius_norm();
    let abs_error_bound = spectral_norm(c) * REFINE_TOL + asym;
    if best <= 0.0 {
        return Ok(RadiusEstimate {
            value: 0.0,
            certificate_theta: theta,
            certificate_vector: None,
            method: RadiusMethod::CrawfordSupport,
            abs_error_bound,
        });
    }
    let e = hermitian_eig(&real_part_pair(c, &c_sharp, theta), f64::INFINITY)?;
    Ok(RadiusEstimate {
        value: best,
        certificate_theta: theta,
        certificate_vector: Some(op.space().from_compressed(&e.eigenvector(0))),
        method: RadiusMethod::CrawfordSupport,
        abs_error_bound,
    })
}
