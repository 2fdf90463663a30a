//! Reference instances with known values.
//!
//! Each group is a small instance whose quantities are known in closed form
//! or to a stated number of decimals; [`run_golden`] recomputes them and
//! compares against a table that callers may replace (e.g. to test that a
//! tampered table is caught).

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::inequalities::{check_fourth_power_bounds, check_hh_triangle, check_square_bounds, CheckConfig};
use crate::linalg::ComplexMatrix;
use crate::radius::{a_crawford, a_numerical_radius, a_numerical_radius_extended};
use crate::semispace::{ExtendedReal, SemiHilbertSpace};
use crate::{DEFAULT_PREDICATE_TOL, DEFAULT_RADIUS_TOL};

pub const GROUPS: [&str; 6] = ["r81", "r91", "r21", "noncontinuity", "unbounded", "selfadjoint-not-normal"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum GoldenValue {
    Number(f64),
    Infinite,
    Bool(bool),
    Matrix(ComplexMatrix),
}

impl GoldenValue {
    /// Absolute deviation from `other`, or `None` when the kinds differ.
    fn distance(&self, other: &GoldenValue) -> Option<f64> {
        match (self, other) {
            (GoldenValue::Number(a), GoldenValue::Number(b)) => Some((a - b).abs()),
            (GoldenValue::Infinite, GoldenValue::Infinite) => Some(0.0),
            (GoldenValue::Bool(a), GoldenValue::Bool(b)) => Some(if a == b { 0.0 } else { f64::INFINITY }),
            (GoldenValue::Matrix(a), GoldenValue::Matrix(b)) if a.rows() == b.rows() && a.cols() == b.cols() => {
                Some((a - b).max_abs())
            }
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            GoldenValue::Number(v) => format!("{v:.9}"),
            GoldenValue::Infinite => "+inf".into(),
            GoldenValue::Bool(b) => b.to_string(),
            GoldenValue::Matrix(m) => {
                let rows: Vec<String> = m
                    .row_vectors()
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|z| format!("{:.6}", z.re)).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                format!("[{}]", rows.join(", "))
            }
        }
    }
}

impl From<ExtendedReal> for GoldenValue {
    fn from(v: ExtendedReal) -> Self {
        match v {
            ExtendedReal::Finite(x) => GoldenValue::Number(x),
            ExtendedReal::Infinite => GoldenValue::Infinite,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub group: String,
    pub name: String,
    pub expected: GoldenValue,
    /// Absolute tolerance.
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenOutcome {
    pub group: String,
    pub name: String,
    pub expected: GoldenValue,
    pub computed: Option<GoldenValue>,
    pub tol: f64,
    pub deviation: Option<f64>,
    pub pass: bool,
}

fn entry(group: &str, name: &str, expected: GoldenValue, tol: f64) -> GoldenEntry {
    GoldenEntry {
        group: group.into(),
        name: name.into(),
        expected,
        tol,
    }
}

fn num(v: f64) -> GoldenValue {
    GoldenValue::Number(v)
}

/// The built-in expected values.
pub fn golden_table() -> Vec<GoldenEntry> {
    let sqrt3 = 3f64.sqrt();
    vec![
        entry("r81", "norm", num((2.0 + sqrt3).sqrt()), 1e-6),
        entry("r81", "radius", num((2.0 + SQRT_2) / 2.0), 1e-6),
        entry("r81", "radius_of_square", num(1.0 + SQRT_2), 1e-6),
        entry("r81", "radius_squared", num(1.5 + SQRT_2), 1e-6),
        entry("r81", "square_upper_bound", num(1.75), 1e-2),
        entry("r91", "radius", num(2.0), 1e-6),
        entry("r91", "radius_of_square", num(3.0), 1e-6),
        entry("r91", "crawford", num(4.0), 1e-6),
        entry("r91", "norm", num((3.0 + 2.0 * SQRT_2).sqrt()), 1e-6),
        entry("r91", "product_sum_norm", num(10.0), 1e-6),
        entry("r91", "half_norm", num(1.21), 1e-2),
        entry("r91", "lower_quarter", num(1.60), 1e-2),
        entry("r91", "upper_quarter", num(2.03), 1e-2),
        entry("r91", "norm_rounded", num(2.41), 1e-2),
        entry("r21", "norm_t", num(1.0), 1e-8),
        entry("r21", "norm_s", num(SQRT_2), 1e-8),
        entry("r21", "norm_sum", num(sqrt3), 1e-8),
        entry("r21", "integral", num(0.98538), 5e-5),
        entry("r21", "chain_lower", num(1.73), 1e-2),
        entry("r21", "chain_middle", num(1.97), 1e-2),
        entry("r21", "chain_upper", num(2.41), 1e-2),
        entry("noncontinuity", "radius_degenerate", num(1.0), 1e-9),
        entry("noncontinuity", "radius_perturbed", num(2.0), 1e-9),
        entry("unbounded", "norm", GoldenValue::Infinite, 0.0),
        entry("unbounded", "radius", GoldenValue::Infinite, 0.0),
        entry("selfadjoint-not-normal", "a_selfadjoint", GoldenValue::Bool(true), 0.0),
        entry("selfadjoint-not-normal", "a_normal", GoldenValue::Bool(false), 0.0),
        entry(
            "selfadjoint-not-normal",
            "t_times_sharp",
            GoldenValue::Matrix(ComplexMatrix::real(&[&[4.0, 4.0], &[0.0, 0.0]])),
            1e-9,
        ),
        entry(
            "selfadjoint-not-normal",
            "sharp_times_t",
            GoldenValue::Matrix(ComplexMatrix::real(&[&[2.0, 2.0], &[2.0, 2.0]])),
            1e-9,
        ),
    ]
}

fn space(rows: &[&[f64]]) -> Result<SemiHilbertSpace> {
    SemiHilbertSpace::with_default_tol(ComplexMatrix::real(rows))
}

/// Computes every quantity of `group`; unknown groups yield nothing.
pub fn compute_group(group: &str) -> Result<Vec<(&'static str, GoldenValue)>> {
    let cfg = CheckConfig::default();
    let tol = DEFAULT_RADIUS_TOL;
    Ok(match group {
        "r81" => {
            let s = space(&[&[1.0, 0.0], &[0.0, 2.0]])?;
            let t = s.bind(ComplexMatrix::real(&[&[1.0, 2.0], &[0.0, 1.0]]))?;
            let w = a_numerical_radius(&t, tol)?.value;
            let report = check_square_bounds(&t, &cfg)?;
            vec![
                ("norm", t.a_operator_norm().into()),
                ("radius", num(w)),
                ("radius_of_square", num(a_numerical_radius(&t.square()?, tol)?.value)),
                ("radius_squared", num(w * w)),
                ("square_upper_bound", num(report.chain[2].value)),
            ]
        }
        "r91" => {
            let s = space(&[&[1.0, -1.0], &[-1.0, 2.0]])?;
            let t = s.bind(ComplexMatrix::real(&[&[1.0, 0.0], &[1.0, 1.0]]))?;
            let sh = t.sharp_op()?;
            let m = t.square()?.plus(&sh.square()?)?.square()?;
            let report = check_fourth_power_bounds(&t, &cfg)?;
            let n = t.norm()?;
            vec![
                ("radius", num(a_numerical_radius(&t, tol)?.value)),
                ("radius_of_square", num(a_numerical_radius(&t.square()?, tol)?.value)),
                ("crawford", num(a_crawford(&m, tol)?.value)),
                ("norm", num(n)),
                ("product_sum_norm", num(t.compose(&sh)?.plus(&sh.compose(&t)?)?.norm()?)),
                ("half_norm", num(report.chain[0].value)),
                ("lower_quarter", num(report.chain[1].value)),
                ("upper_quarter", num(report.chain[3].value)),
                ("norm_rounded", num(report.chain[4].value)),
            ]
        }
        "r21" => {
            let s = space(&[&[1.0, 0.0], &[0.0, 2.0]])?;
            let t = s.bind(ComplexMatrix::real(&[&[1.0, 0.0], &[0.0, 0.0]]))?;
            let u = s.bind(ComplexMatrix::real(&[&[0.0, 0.0], &[1.0, 0.0]]))?;
            let report = check_hh_triangle(&t, &u, &cfg)?;
            vec![
                ("norm_t", num(t.norm()?)),
                ("norm_s", num(u.norm()?)),
                ("norm_sum", num(t.plus(&u)?.norm()?)),
                ("integral", num(report.quantities["integral"])),
                ("chain_lower", num(report.chain[0].value)),
                ("chain_middle", num(report.chain[1].value)),
                ("chain_upper", num(report.chain[2].value)),
            ]
        }
        "noncontinuity" => {
            let t = ComplexMatrix::diag_real(&[1.0, 2.0]);
            let degenerate = space(&[&[1.0, 0.0], &[0.0, 0.0]])?;
            let perturbed = space(&[&[2.0, 0.0], &[0.0, 1.0]])?;
            vec![
                ("radius_degenerate", num(a_numerical_radius(&degenerate.bind(t.clone())?, tol)?.value)),
                ("radius_perturbed", num(a_numerical_radius(&perturbed.bind(t)?, tol)?.value)),
            ]
        }
        "unbounded" => {
            let s = space(&[&[1.0, 0.0], &[0.0, 0.0]])?;
            let t = s.bind(ComplexMatrix::real(&[&[0.0, 1.0], &[1.0, 0.0]]))?;
            vec![
                ("norm", t.a_operator_norm().into()),
                ("radius", a_numerical_radius_extended(&t, tol)?.into()),
            ]
        }
        "selfadjoint-not-normal" => {
            let s = space(&[&[1.0, 1.0], &[1.0, 1.0]])?;
            let t = s.bind(ComplexMatrix::real(&[&[2.0, 2.0], &[0.0, 0.0]]))?;
            let sh = t.sharp()?;
            vec![
                ("a_selfadjoint", GoldenValue::Bool(t.is_a_selfadjoint(DEFAULT_PREDICATE_TOL))),
                ("a_normal", GoldenValue::Bool(t.is_a_normal(DEFAULT_PREDICATE_TOL))),
                ("t_times_sharp", GoldenValue::Matrix(t.matrix().matmul(sh))),
                ("sharp_times_t", GoldenValue::Matrix(sh.matmul(t.matrix()))),
            ]
        }
        _ => Vec::new(),
    })
}

/// Compares `table` (restricted to `only`, if given) against freshly computed values.
pub fn run_golden(table: &[GoldenEntry], only: Option<&str>) -> Result<Vec<GoldenOutcome>> {
    let mut out = Vec::new();
    for group in GROUPS.iter().filter(|g| only.is_none_or(|o| o == **g)) {
        let computed = compute_group(group)?;
        for e in table.iter().filter(|e| e.group == *group) {
            let value = computed.iter().find(|(n, _)| *n == e.name).map(|(_, v)| v.clone());
            let deviation = value.as_ref().and_then(|v| v.distance(&e.expected));
            out.push(GoldenOutcome {
                group: e.group.clone(),
                name: e.name.clone(),
                expected: e.expected.clone(),
                computed: value,
                tol: e.tol,
                deviation,
                pass: deviation.is_some_and(|d| d <= e.tol),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_passes() {
        let outcomes = run_golden(&golden_table(), None).unwrap();
        assert_eq!(outcomes.len(), golden_table().len());
        for o in &outcomes {
            assert!(o.pass, "{o:?}");
        }
    }

    #[test]
    fn every_entry_has_a_computed_value() {
        for e in golden_table() {
            let names: Vec<&str> = compute_group(&e.group).unwrap().into_iter().map(|(n, _)| n).collect();
            assert!(names.contains(&e.name.as_str()), "{}/{}", e.group, e.name);
        }
    }

    #[test]
    fn tampered_value_fails() {
        let mut table = golden_table();
        table[1].expected = GoldenValue::Number(1.8);
        let outcomes = run_golden(&table, Some("r81")).unwrap();
        assert_eq!(outcomes.len(), 5);
        assert!(!outcomes[1].pass);
    }

    #[test]
    fn kind_mismatch_fails() {
        let mut table = golden_table();
        let idx = table.iter().position(|e| e.group == "unbounded").unwrap();
        table[idx].expected = GoldenValue::Number(1.0);
        let outcomes = run_golden(&table, Some("unbounded")).unwrap();
        assert!(!outcomes[0].pass);
    }

    #[test]
    fn table_serde_round_trip() {
        let table = golden_table();
        let json = serde_json::to_string(&table).unwrap();
        let back: Vec<GoldenEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
    }
}
