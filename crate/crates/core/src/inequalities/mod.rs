//! Checkable inequalities and equality characterizations between A-seminorms,
//! A-numerical radii and A-Crawford numbers.
//!
//! Inputs must be admissible (have an A-adjoint); anything else is rejected
//! with [`Error::NoAdjoint`](crate::Error::NoAdjoint) before a report is built, so
//! chain values are always finite.

mod bounds;
mod equality;
pub mod quadrature;
mod report;

pub use bounds::{
    check_adjoint_sum_bound, check_fourth_power_bounds, check_halfnorm_bounds, check_hh_triangle,
    check_integral_radius_bound, check_power_inequality, check_product_sum_bounds, check_real_part_bounds,
    check_reverse_power, check_square_bounds, check_squares_sum_chain, verify_square_identity, CheckConfig,
    CheckId,
};
pub use equality::{
    check_positive_product_equality, max_equality_diagnostic, norm_radius_equality, orthogonality_defect,
    pythagoras_diagnostic, radius_additivity_diagnostic, squares_radius_equality, triangle_equality_diagnostic,
    witness_a_norm, ConditionSide, Consistency, EqualityDiagnostic, Regime,
};
pub use report::{inputs_digest, ChainLink, InequalityReport, SideInequality};
