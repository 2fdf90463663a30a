//! Inequality checks. Each returns the full chain of values with its slacks;
//! a violated inequality is a finding in the report, never an error.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::quadrature::adaptive_simpson;
use super::report::{inputs_digest, InequalityReport};
use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, ComplexMatrix, C64};
use crate::radius::sweep::sup_sweep_with;
use crate::radius::{a_crawford, a_numerical_radius};
use crate::semispace::OperatorInSpace;
use crate::{
    DEFAULT_CHECK_TOL, DEFAULT_EQ_TOL, DEFAULT_PREDICATE_TOL, DEFAULT_QUAD_TOL, DEFAULT_RADIUS_TOL,
};

/// Coarse grid of the angle sweep over integrals; every grid point costs a quadrature.
const INTEGRAL_SWEEP_POINTS: usize = 64;
const INTEGRAL_SWEEP_TOL: f64 = 1e-6;

/// Tolerances and heuristic settings shared by checks and diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub check_tol: f64,
    pub quad_tol: f64,
    pub radius_tol: f64,
    pub eq_tol: f64,
    pub predicate_tol: f64,
    /// Random starts of the heuristic ascents.
    pub starts: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            check_tol: DEFAULT_CHECK_TOL,
            quad_tol: DEFAULT_QUAD_TOL,
            radius_tol: DEFAULT_RADIUS_TOL,
            eq_tol: DEFAULT_EQ_TOL,
            predicate_tol: DEFAULT_PREDICATE_TOL,
            starts: 32,
            seed: 0,
        }
    }
}

pub(crate) fn radius(op: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<f64> {
    Ok(a_numerical_radius(op, cfg.radius_tol)?.value)
}

fn digest1(t: &OperatorInSpace<'_>) -> String {
    inputs_digest(t.space(), &[t.matrix()])
}

fn digest2(t: &OperatorInSpace<'_>, s: &OperatorInSpace<'_>) -> String {
    inputs_digest(t.space(), &[t.matrix(), s.matrix()])
}

/// `a X + b Y` for compressions.
fn combine(x: &ComplexMatrix, a: C64, y: &ComplexMatrix, b: C64) -> ComplexMatrix {
    ComplexMatrix::from_fn(x.rows(), x.cols(), |i, j| a * x[(i, j)] + b * y[(i, j)])
}

fn one(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `1/2 ||T||_A ≤ w_A(T) ≤ ||T||_A`.
pub fn check_halfnorm_bounds(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let n = t.norm()?;
    let w = radius(t, cfg)?;
    Ok(InequalityReport::build(
        CheckId::HalfnormBounds.name(),
        &[("½‖T‖_A", 0.5 * n), ("w_A(T)", w), ("‖T‖_A", n)],
        &[],
        &[],
        cfg.check_tol,
        digest1(t),
    ))
}

/// `‖T+S‖_A ≤ 2 ∫₀¹ ‖tT + (1-t)S‖_A dt ≤ ‖T‖_A + ‖S‖_A`.
pub fn check_hh_triangle(t: &OperatorInSpace<'_>, s: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let sum = t.plus(s)?;
    let (nt, ns, nsum) = (t.norm()?, s.norm()?, sum.norm()?);
    let (ct, cs) = (t.compression()?, s.compression()?);
    let q = adaptive_simpson(
        |x| spectral_norm(&combine(ct, one(x), cs, one(1.0 - x))),
        0.0,
        1.0,
        cfg.quad_tol,
    );
    Ok(InequalityReport::build(
        CheckId::HhTriangle.name(),
        &[("‖T+S‖_A", nsum), ("2∫‖tT+(1−t)S‖_A", 2.0 * q.value), ("‖T‖_A+‖S‖_A", nt + ns)],
        &[],
        &[
            ("integral", q.value),
            ("norm_t", nt),
            ("norm_s", ns),
            ("quad_intervals", q.intervals as f64),
            ("quad_converged", f64::from(u8::from(q.converged))),
        ],
        cfg.check_tol,
        digest2(t, s),
    ))
}

/// `w_A(T) ≤ sup_θ ∫₀¹ ‖t e^{iθ} T + (1-t) T^#‖_A dt ≤ ‖T‖_A`.
///
/// The sweep is seeded at twice the radius-maximizing angle, where the
/// integrand's midpoint value already equals `w_A(T)`, so the lower link
/// holds up to quadrature error regardless of the grid.
pub fn check_integral_radius_bound(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let n = t.norm()?;
    let west = a_numerical_radius(t, cfg.radius_tol)?;
    let c = t.compression()?;
    let c_sharp = t.space().compress_matrix(t.sharp()?);
    let integral = |phi: f64| {
        let ph = C64::from_polar(1.0, phi);
        adaptive_simpson(
            |x| spectral_norm(&combine(c, ph * x, &c_sharp, one(1.0 - x))),
            0.0,
            1.0,
            cfg.quad_tol,
        )
        .value
    };
    let seed = 2.0 * west.certificate_theta;
    let (phi, mid) = sup_sweep_with(integral, TAU, INTEGRAL_SWEEP_POINTS, INTEGRAL_SWEEP_TOL, 1, &[seed]);
    Ok(InequalityReport::build(
        CheckId::IntegralRadiusBound.name(),
        &[("w_A(T)", west.value), ("sup_θ∫‖te^{iθ}T+(1−t)T♯‖_A", mid), ("‖T‖_A", n)],
        &[],
        &[("theta", phi)],
        cfg.check_tol,
        digest1(t),
    ))
}

/// `‖T+S‖_A ≤ (‖T^#T + S^#S‖_A + 2 w_A(S^#T))^{1/2} ≤ ‖T‖_A + ‖S‖_A`.
pub fn check_adjoint_sum_bound(
    t: &OperatorInSpace<'_>,
    s: &OperatorInSpace<'_>,
    cfg: &CheckConfig,
) -> Result<InequalityReport> {
    let sum = t.plus(s)?;
    let (nt, ns, nsum) = (t.norm()?, s.norm()?, sum.norm()?);
    let (tsh, ssh) = (t.sharp_op()?, s.sharp_op()?);
    let gram = tsh.compose(t)?.plus(&ssh.compose(s)?)?.norm()?;
    let cross = radius(&ssh.compose(t)?, cfg)?;
    let mid = (gram + 2.0 * cross).max(0.0).sqrt();
    Ok(InequalityReport::build(
        CheckId::AdjointSumBound.name(),
        &[("‖T+S‖_A", nsum), ("(‖T♯T+S♯S‖_A+2w_A(S♯T))^½", mid), ("‖T‖_A+‖S‖_A", nt + ns)],
        &[],
        &[("gram_norm", gram), ("cross_radius", cross)],
        cfg.check_tol,
        digest2(t, s),
    ))
}

/// `½ max(‖T−T^#‖_A, ‖T+T^#‖_A) ≤ w_A(T) ≤ ½ (‖T−T^#‖²_A + ‖T+T^#‖²_A)^{1/2}`.
pub fn check_real_part_bounds(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let sh = t.sharp_op()?;
    let d = t.minus(&sh)?.norm()?;
    let s = t.plus(&sh)?.norm()?;
    let w = radius(t, cfg)?;
    Ok(InequalityReport::build(
        CheckId::RealPartBounds.name(),
        &[
            ("½max(‖T−T♯‖_A,‖T+T♯‖_A)", 0.5 * d.max(s)),
            ("w_A(T)", w),
            ("½(‖T−T♯‖²_A+‖T+T♯‖²_A)^½", 0.5 * d.hypot(s)),
        ],
        &[],
        &[("norm_t_minus_sharp", d), ("norm_t_plus_sharp", s)],
        cfg.check_tol,
        digest1(t),
    ))
}

/// `½ max(‖T²−(T^#)²‖^{1/2}_A, ‖T²+(T^#)²‖^{1/2}_A) ≤ w_A(T) ≤ (√2/2)(‖T‖²_A + w_A(T²))^{1/2} ≤ ‖T‖_A`.
pub fn check_square_bounds(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let n = t.norm()?;
    let w = radius(t, cfg)?;
    let t2 = t.square()?;
    let sh2 = t.sharp_op()?.square()?;
    let d = t2.minus(&sh2)?.norm()?;
    let s = t2.plus(&sh2)?.norm()?;
    let w2 = radius(&t2, cfg)?;
    let lower = 0.5 * d.sqrt().max(s.sqrt());
    let upper = FRAC_1_SQRT_2 * (n * n + w2).sqrt();
    Ok(InequalityReport::build(
        CheckId::SquareBounds.name(),
        &[
            ("½max(‖T²−T♯²‖_A^½,‖T²+T♯²‖_A^½)", lower),
            ("w_A(T)", w),
            ("(√2/2)(‖T‖²_A+w_A(T²))^½", upper),
            ("‖T‖_A", n),
        ],
        &[],
        &[("radius_of_square", w2), ("norm_sq_minus", d), ("norm_sq_plus", s)],
        cfg.check_tol,
        digest1(t),
    ))
}

/// Residual `‖(XY+YX)² + (X²+Y²)² − ½(X+Y)⁴ − ½(X−Y)⁴‖_F`.
pub fn verify_square_identity(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    let n = x.ensure_square()?;
    let m = y.ensure_square()?;
    if n != m {
        return Err(Error::DimensionMismatch { expected: n, found: m });
    }
    let xy = x.matmul(y);
    let yx = y.matmul(x);
    let anti = &xy + &yx;
    let squares = &x.matmul(x) + &y.matmul(y);
    let lhs = &anti.matmul(&anti) + &squares.matmul(&squares);
    let sum2 = (x + y).powi(2);
    let diff2 = (x - y).powi(2);
    let rhs = (&sum2.matmul(&sum2) + &diff2.matmul(&diff2)).scale_re(0.5);
    Ok((&lhs - &rhs).frobenius_norm())
}

/// `‖TT^# + T^#T‖_A`.
fn product_sum_norm(t: &OperatorInSpace<'_>) -> Result<f64> {
    let sh = t.sharp_op()?;
    t.compose(&sh)?.plus(&sh.compose(t)?)?.norm()
}

/// `½‖T‖_A ≤ lower^{1/4} ≤ w_A(T) ≤ upper^{1/4} ≤ ‖T‖_A` with
/// `lower = (1/16)‖TT^#+T^#T‖²_A + (1/16) c_A((T²+(T^#)²)²)` and
/// `upper = (1/8)‖TT^#+T^#T‖²_A + (1/2) w²_A(T²)`.
pub fn check_fourth_power_bounds(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let n = t.norm()?;
    let w = radius(t, cfg)?;
    let k = product_sum_norm(t)?;
    let t2 = t.square()?;
    let w2 = radius(&t2, cfg)?;
    let m = t2.plus(&t.sharp_op()?.square()?)?.square()?;
    let c = a_crawford(&m, cfg.radius_tol)?.value;
    let lower = k * k / 16.0 + c / 16.0;
    let upper = k * k / 8.0 + 0.5 * w2 * w2;
    Ok(InequalityReport::build(
        CheckId::FourthPowerBounds.name(),
        &[
            ("½‖T‖_A", 0.5 * n),
            ("lower^¼", lower.powf(0.25)),
            ("w_A(T)", w),
            ("upper^¼", upper.powf(0.25)),
            ("‖T‖_A", n),
        ],
        &[],
        &[
            ("product_sum_norm", k),
            ("crawford", c),
            ("radius_of_square", w2),
            ("lower", lower),
            ("upper", upper),
        ],
        cfg.check_tol,
        digest1(t),
    ))
}

/// `w_A(T²) ≤ w²_A(T) ≤ ‖T‖²_A ≤ 4 w²_A(T)`, with `w_A(T²) ≤ ‖T²‖_A ≤ ‖T‖²_A` alongside.
pub fn check_power_inequality(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let n = t.norm()?;
    let w = radius(t, cfg)?;
    let t2 = t.square()?;
    let w2 = radius(&t2, cfg)?;
    let n2 = t2.norm()?;
    Ok(InequalityReport::build(
        CheckId::PowerInequality.name(),
        &[("w_A(T²)", w2), ("w²_A(T)", w * w), ("‖T‖²_A", n * n), ("4w²_A(T)", 4.0 * w * w)],
        &[("w_A(T²) ≤ ‖T²‖_A", w2, n2), ("‖T²‖_A ≤ ‖T‖²_A", n2, n * n)],
        &[("norm_of_square", n2)],
        cfg.check_tol,
        digest1(t),
    ))
}

/// `w²_A(T) ≤ ½‖TT^#+T^#T‖_A ≤ w_A(T²) + ½ min(‖T−T^#‖²_A, ‖T+T^#‖²_A)`.
pub fn check_reverse_power(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let w = radius(t, cfg)?;
    let w2 = radius(&t.square()?, cfg)?;
    let k = product_sum_norm(t)?;
    let sh = t.sharp_op()?;
    let d = t.minus(&sh)?.norm()?;
    let s = t.plus(&sh)?.norm()?;
    let min_term = 0.5 * (d * d).min(s * s);
    Ok(InequalityReport::build(
        CheckId::ReversePower.name(),
        &[
            ("w²_A(T)", w * w),
            ("½‖TT♯+T♯T‖_A", 0.5 * k),
            ("w_A(T²)+½min(‖T−T♯‖²_A,‖T+T♯‖²_A)", w2 + min_term),
        ],
        &[],
        &[("radius_of_square", w2), ("min_term", min_term), ("product_sum_norm", k)],
        cfg.check_tol,
        digest1(t),
    ))
}

/// `2w²_A(T) ≤ ‖TT^#+T^#T‖_A ≤ 2‖T‖²_A`, with `‖T‖²_A ≤ ‖TT^#+T^#T‖_A` alongside.
pub fn check_product_sum_bounds(t: &OperatorInSpace<'_>, cfg: &CheckConfig) -> Result<InequalityReport> {
    let n = t.norm()?;
    let w = radius(t, cfg)?;
    let k = product_sum_norm(t)?;
    Ok(InequalityReport::build(
        CheckId::ProductSumBounds.name(),
        &[("2w²_A(T)", 2.0 * w * w), ("‖TT♯+T♯T‖_A", k), ("2‖T‖²_A", 2.0 * n * n)],
        &[("‖T‖²_A ≤ ‖TT♯+T♯T‖_A", n * n, k)],
        &[],
        cfg.check_tol,
        digest1(t),
    ))
}

/// `w_A(T²+S²) ≤ w_A(T²)+w_A(S²) ≤ w²_A(T)+w²_A(S) ≤ 2max(w²_A(T), w²_A(S))`.
pub fn check_squares_sum_chain(
    t: &OperatorInSpace<'_>,
    s: &OperatorInSpace<'_>,
    cfg: &CheckConfig,
) -> Result<InequalityReport> {
    let (t2, s2) = (t.square()?, s.square()?);
    let lhs = radius(&t2.plus(&s2)?, cfg)?;
    let (wt2, ws2) = (radius(&t2, cfg)?, radius(&s2, cfg)?);
    let (wt, ws) = (radius(t, cfg)?, radius(s, cfg)?);
    Ok(InequalityReport::build(
        CheckId::SquaresSumChain.name(),
        &[
            ("w_A(T²+S²)", lhs),
            ("w_A(T²)+w_A(S²)", wt2 + ws2),
            ("w²_A(T)+w²_A(S)", wt * wt + ws * ws),
            ("2max(w²_A(T),w²_A(S))", 2.0 * (wt * wt).max(ws * ws)),
        ],
        &[],
        &[("radius_t", wt), ("radius_s", ws)],
        cfg.check_tol,
        digest2(t, s),
    ))
}

/// Identifier of an inequality check, as used by the CLI and campaigns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    HalfnormBounds,
    HhTriangle,
    IntegralRadiusBound,
    AdjointSumBound,
    RealPartBounds,
    SquareBounds,
    FourthPowerBounds,
    PowerInequality,
    ReversePower,
    ProductSumBounds,
    SquaresSumChain,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::HalfnormBounds,
        CheckId::HhTriangle,
        CheckId::IntegralRadiusBound,
        CheckId::AdjointSumBound,
        CheckId::RealPartBounds,
        CheckId::SquareBounds,
        CheckId::FourthPowerBounds,
        CheckId::PowerInequality,
        CheckId::ReversePower,
        CheckId::ProductSumBounds,
        CheckId::SquaresSumChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::HalfnormBounds => "halfnorm_bounds",
            CheckId::HhTriangle => "hh_triangle",
            CheckId::IntegralRadiusBound => "integral_radius_bound",
            CheckId::AdjointSumBound => "adjoint_sum_bound",
            CheckId::RealPartBounds => "real_part_bounds",
            CheckId::SquareBounds => "square_bounds",
            CheckId::FourthPowerBounds => "fourth_power_bounds",
            CheckId::PowerInequality => "power_inequality",
            CheckId::ReversePower => "reverse_power",
            CheckId::ProductSumBounds => "product_sum_bounds",
            CheckId::SquaresSumChain => "squares_sum_chain",
        }
    }

    /// Whether the check needs a second operator `S`.
    pub fn needs_pair(self) -> bool {
        matches!(
            self,
            CheckId::HhTriangle | CheckId::AdjointSumBound | CheckId::SquaresSumChain
        )
    }

    pub fn run(
        self,
        t: &OperatorInSpace<'_>,
        s: Option<&OperatorInSpace<'_>>,
        cfg: &CheckConfig,
    ) -> Result<InequalityReport> {
        let pair = || s.ok_or_else(|| Error::PreconditionNotMet(format!("{} needs a second operator S", self.name())));
        match self {
            CheckId::HalfnormBounds => check_halfnorm_bounds(t, cfg),
            CheckId::HhTriangle => check_hh_triangle(t, pair()?, cfg),
            CheckId::IntegralRadiusBound => check_integral_radius_bound(t, cfg),
            CheckId::AdjointSumBound => check_adjoint_sum_bound(t, pair()?, cfg),
            CheckId::RealPartBounds => check_real_part_bounds(t, cfg),
            CheckId::SquareBounds => check_square_bounds(t, cfg),
            CheckId::FourthPowerBounds => check_fourth_power_bounds(t, cfg),
            CheckId::PowerInequality => check_power_inequality(t, cfg),
            CheckId::ReversePower => check_reverse_power(t, cfg),
            CheckId::ProductSumBounds => check_product_sum_bounds(t, cfg),
            CheckId::SquaresSumChain => check_squares_sum_chain(t, pair()?, cfg),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown check {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semispace::SemiHilbertSpace;

    fn space(rows: &[&[f64]]) -> SemiHilbertSpace {
        SemiHilbertSpace::with_default_tol(ComplexMatrix::real(rows)).unwrap()
    }

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    fn values(r: &InequalityReport) -> Vec<f64> {
        r.chain.iter().map(|l| l.value).collect()
    }

    #[test]
    fn hh_triangle_example_values() {
        let s = space(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let t = s.bind(ComplexMatrix::real(&[&[1.0, 0.0], &[0.0, 0.0]])).unwrap();
        let u = s.bind(ComplexMatrix::real(&[&[0.0, 0.0], &[1.0, 0.0]])).unwrap();
        let r = check_hh_triangle(&t, &u, &cfg()).unwrap();
        assert!(r.holds);
        let v = values(&r);
        assert!((v[0] - 3f64.sqrt()).abs() < 1e-12);
        assert!((r.value("integral").unwrap() - 0.98538).abs() < 5e-5);
        assert!((v[2] - (1.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn hh_triangle_degenerate_pairs() {
        let s = space(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let t = s.bind(ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]])).unwrap();
        let n = t.norm().unwrap();
        let r = check_hh_triangle(&t, &t, &cfg()).unwrap();
        for v in values(&r) {
            assert!((v - 2.0 * n).abs() < 1e-9);
        }
        let neg = t.scaled(one(-1.0)).unwrap();
        let r = check_hh_triangle(&t, &neg, &cfg()).unwrap();
        let v = values(&r);
        assert!(v[0].abs() < 1e-12);
        assert!((r.value("integral").unwrap() - 0.5 * n).abs() < 1e-9);
        assert!(r.holds);
    }

    #[test]
    fn integral_radius_examples() {
        let s = space(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let t = s.bind(ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]])).unwrap();
        let r = check_integral_radius_bound(&t, &cfg()).unwrap();
        assert!(r.holds, "{}", r.render_text());

        let id = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(2)).unwrap();
        let h = id.bind(ComplexMatrix::real(&[&[2.0, 1.0], &[1.0, -1.0]])).unwrap();
        let r = check_integral_radius_bound(&h, &cfg()).unwrap();
        let n = h.norm().unwrap();
        for v in values(&r) {
            assert!((v - n).abs() < 1e-8, "{}", r.render_text());
        }

        let d = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let null = d.bind(ComplexMatrix::real(&[&[0.0, 0.0], &[1.0, 1.0]])).unwrap();
        let r = check_integral_radius_bound(&null, &cfg()).unwrap();
        assert!(values(&r).iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn square_bounds_example() {
        let s = space(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let t = s.bind(ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]])).unwrap();
        let r = check_square_bounds(&t, &cfg()).unwrap();
        assert!(r.holds);
        let v = values(&r);
        assert!((v[1] - 1.70711).abs() < 1e-5);
        assert!((v[2] - 1.75).abs() < 1e-2);
        assert!((v[3] - 1.93185).abs() < 1e-5);
        assert!((r.value("radius_of_square").unwrap() - (1.0 + 2f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn fourth_power_example() {
        let s = space(&[&[1.0, -1.0], &[-1.0, 2.0]]);
        let t = s.bind(ComplexMatrix::real(&[&[1.0, 0.0], &[1.0, 1.0]])).unwrap();
        let r = check_fourth_power_bounds(&t, &cfg()).unwrap();
        assert!(r.holds);
        let v = values(&r);
        let expected = [1.21, 1.60, 2.0, 2.03, 2.41];
        for (a, b) in v.iter().zip(expected) {
            assert!((a - b).abs() < 1e-2, "{v:?}");
        }
        assert!((r.value("product_sum_norm").unwrap() - 10.0).abs() < 1e-8);
        assert!((r.value("crawford").unwrap() - 4.0).abs() < 1e-8);
    }

    #[test]
    fn hermitian_operators_are_tight() {
        let id = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(2)).unwrap();
        let h = id.bind(ComplexMatrix::real(&[&[2.0, 1.0], &[1.0, -1.0]])).unwrap();
        let n = h.norm().unwrap();
        let r = check_real_part_bounds(&h, &cfg()).unwrap();
        for v in values(&r) {
            assert!((v - n).abs() < 1e-9);
        }
        let r = check_square_bounds(&h, &cfg()).unwrap();
        assert!(r.slacks[1].abs() < 1e-9);
        let r = check_fourth_power_bounds(&h, &cfg()).unwrap();
        assert!(r.slacks[2].abs() < 1e-8);
        let r = check_reverse_power(&h, &cfg()).unwrap();
        assert!(r.slacks.iter().all(|s| s.abs() < 1e-8), "{}", r.render_text());
    }

    #[test]
    fn shift_examples() {
        let id = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(2)).unwrap();
        let shift = id.bind(ComplexMatrix::real(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap();
        let r = check_halfnorm_bounds(&shift, &cfg()).unwrap();
        let v = values(&r);
        assert!((v[0] - 0.5).abs() < 1e-12 && (v[1] - 0.5).abs() < 1e-12 && (v[2] - 1.0).abs() < 1e-12);
        let r = check_power_inequality(&shift, &cfg()).unwrap();
        let v = values(&r);
        assert!(v[0].abs() < 1e-12 && (v[1] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn adjoint_sum_examples() {
        let s = space(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let t = s.bind(ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]])).unwrap();
        let n = t.norm().unwrap();
        let r = check_adjoint_sum_bound(&t, &t, &cfg()).unwrap();
        for v in values(&r) {
            assert!((v - 2.0 * n).abs() < 1e-9);
        }
        let d = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let t = d.bind(ComplexMatrix::real(&[&[3.0, 0.0], &[1.0, 1.0]])).unwrap();
        let null = d.bind(ComplexMatrix::real(&[&[0.0, 0.0], &[1.0, 1.0]])).unwrap();
        let r = check_adjoint_sum_bound(&t, &null, &cfg()).unwrap();
        for v in values(&r) {
            assert!((v - 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn square_identity() {
        let id = ComplexMatrix::identity(3);
        assert!(verify_square_identity(&id, &id).unwrap() < 1e-12);
        let y = ComplexMatrix::real(&[&[1.0, 2.0], &[-1.0, 0.5]]);
        assert!(verify_square_identity(&ComplexMatrix::zeros(2, 2), &y).unwrap() < 1e-12);
        assert!(verify_square_identity(&id, &y).is_err());
    }

    #[test]
    fn non_admissible_is_rejected() {
        let d = space(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let swap = d.bind(ComplexMatrix::real(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        for id in CheckId::ALL {
            assert!(id.run(&swap, Some(&swap), &cfg()).is_err(), "{id}");
        }
    }

    #[test]
    fn check_ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!("nope".parse::<CheckId>().is_err());
    }
}
