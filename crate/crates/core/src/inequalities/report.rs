use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::linalg::{ComplexMatrix, C64};
use crate::semispace::SemiHilbertSpace;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainLink {
    pub label: String,
    pub value: f64,
}

/// An inequality checked alongside the main chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideInequality {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub holds: bool,
}

/// Outcome of one inequality check: every constituent value and slack.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    /// Values that must be nondecreasing from left to right.
    pub chain: Vec<ChainLink>,
    /// `chain[k + 1] - chain[k]`.
    pub slacks: Vec<f64>,
    pub side: Vec<SideInequality>,
    pub quantities: BTreeMap<String, f64>,
    pub holds: bool,
    pub check_tol: f64,
    /// Slacks down to `-threshold` are accepted: `check_tol * (1 + max |chain value|)`.
    pub threshold: f64,
    pub inputs_digest: String,
}

impl InequalityReport {
    pub(crate) fn build(
        name: &str,
        chain: &[(&str, f64)],
        side: &[(&str, f64, f64)],
        quantities: &[(&str, f64)],
        check_tol: f64,
        inputs_digest: String,
    ) -> Self {
        let scale = chain.iter().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        let threshold = check_tol * (1.0 + scale);
        let slacks: Vec<f64> = chain.windows(2).map(|w| w[1].1 - w[0].1).collect();
        let side: Vec<SideInequality> = side
            .iter()
            .map(|&(label, lhs, rhs)| SideInequality {
                label: label.to_string(),
                lhs,
                rhs,
                slack: rhs - lhs,
                holds: rhs - lhs >= -threshold,
            })
            .collect();
        let finite = chain.iter().all(|(_, v)| v.is_finite());
        let holds = finite && slacks.iter().all(|&s| s >= -threshold) && side.iter().all(|s| s.holds);
        Self {
            name: name.to_string(),
            chain: chain
                .iter()
                .map(|&(label, value)| ChainLink {
                    label: label.to_string(),
                    value,
                })
                .collect(),
            slacks,
            side,
            quantities: quantities.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            holds,
            check_tol,
            threshold,
            inputs_digest,
        }
    }

    /// Smallest slack over the chain and the side inequalities.
    pub fn min_slack(&self) -> f64 {
        self.slacks
            .iter()
            .copied()
            .chain(self.side.iter().map(|s| s.slack))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn value(&self, label: &str) -> Option<f64> {
        self.chain
            .iter()
            .find(|l| l.label == label)
            .map(|l| l.value)
            .or_else(|| self.quantities.get(label).copied())
    }

    /// `a ≤ b ≤ c (slack₁=…, slack₂=…)` followed by the labels and side inequalities.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let status = if self.holds { "holds" } else { "VIOLATED" };
        let _ = writeln!(out, "{}: {status}", self.name);
        let values: Vec<String> = self.chain.iter().map(|l| format!("{:.6}", l.value)).collect();
        let slacks: Vec<String> = self
            .slacks
            .iter()
            .enumerate()
            .map(|(k, s)| format!("slack{}={s:.3e}", subscript(k + 1)))
            .collect();
        let _ = writeln!(out, "  {} ({})", values.join(" ≤ "), slacks.join(", "));
        let labels: Vec<&str> = self.chain.iter().map(|l| l.label.as_str()).collect();
        let _ = writeln!(out, "  [{}]", labels.join(" ≤ "));
        for s in &self.side {
            let mark = if s.holds { "" } else { "  VIOLATED" };
            let _ = writeln!(out, "  {}: {:.6} ≤ {:.6} (slack={:.3e}){mark}", s.label, s.lhs, s.rhs, s.slack);
        }
        out
    }
}

fn subscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

/// `n=<dim> r=<rank> sha256=<16 hex digits>` over the bit patterns of `A` and the operators.
pub fn inputs_digest(space: &SemiHilbertSpace, operators: &[&ComplexMatrix]) -> String {
    let mut h = Sha256::new();
    let mut feed = |m: &ComplexMatrix| {
        h.update((m.rows() as u64).to_le_bytes());
        for z in m.as_slice() {
            let z: &C64 = z;
            h.update(z.re.to_le_bytes());
            h.update(z.im.to_le_bytes());
        }
    };
    feed(space.a());
    for m in operators {
        feed(m);
    }
    let hex = format!("{:x}", h.finalize());
    format!("n={} r={} sha256={}", space.dim(), space.rank(), &hex[..16])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_threshold_is_relative() {
        let r = InequalityReport::build("t", &[("a", 1.0), ("b", 1.0 - 1e-8), ("c", 3.0)], &[], &[], 1e-8, String::new());
        assert_eq!(r.slacks.len(), 2);
        assert!(r.holds);
        assert!((r.threshold - 4e-8).abs() < 1e-20);
        let r = InequalityReport::build("t", &[("a", 1.0), ("b", 0.9)], &[], &[], 1e-8, String::new());
        assert!(!r.holds);
        assert!((r.min_slack() + 0.1).abs() < 1e-15);
    }

    #[test]
    fn side_inequalities_count() {
        let r = InequalityReport::build("t", &[("a", 1.0), ("b", 2.0)], &[("x", 2.0, 1.0)], &[], 1e-8, String::new());
        assert!(!r.holds);
        assert_eq!(r.min_slack(), -1.0);
    }

    #[test]
    fn non_finite_chain_never_holds() {
        let r = InequalityReport::build("t", &[("a", 1.0), ("b", f64::INFINITY)], &[], &[], 1e-8, String::new());
        assert!(!r.holds);
    }

    #[test]
    fn text_rendering() {
        let r = InequalityReport::build("demo", &[("a", 1.0), ("b", 2.0), ("c", 2.5)], &[], &[], 1e-8, String::new());
        let text = r.render_text();
        assert!(text.contains("1.000000 ≤ 2.000000 ≤ 2.500000 (slack₁=1.000e0, slack₂=5.000e-1)"), "{text}");
        assert!(text.starts_with("demo: holds"));
    }

    #[test]
    fn digest_depends_on_inputs() {
        let s = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(2)).unwrap();
        let t = ComplexMatrix::identity(2);
        let u = ComplexMatrix::diag_real(&[1.0, 2.0]);
        assert_eq!(inputs_digest(&s, &[&t]), inputs_digest(&s, &[&t]));
        assert_ne!(inputs_digest(&s, &[&t]), inputs_digest(&s, &[&u]));
        assert!(inputs_digest(&s, &[&t]).starts_with("n=2 r=2 sha256="));
    }
}
