//! The JSON instance file read by `semihilbert check`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use semihilbert::{ComplexMatrix, SemiHilbertSpace, DEFAULT_RANK_TOL};

/// `{"dim": n, "A": [[[re, im], ...], ...], "T": ..., "S": ...}`; `S` is optional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dim: usize,
    #[serde(rename = "A")]
    pub a: ComplexMatrix,
    #[serde(rename = "T")]
    pub t: ComplexMatrix,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<ComplexMatrix>,
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let inst: InstanceFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        inst.validate_shapes()?;
        Ok(inst)
    }

    fn validate_shapes(&self) -> Result<()> {
        let n = self.dim;
        if n == 0 {
            bail!("dim must be positive");
        }
        let named = [("A", Some(&self.a)), ("T", Some(&self.t)), ("S", self.s.as_ref())];
        for (name, m) in named {
            if let Some(m) = m {
                if m.rows() != n || m.cols() != n {
                    bail!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols());
                }
            }
        }
        Ok(())
    }

    /// Validates `A` as Hermitian positive semidefinite and builds the space.
    pub fn space(&self) -> Result<SemiHilbertSpace> {
        SemiHilbertSpace::new(self.a.clone(), DEFAULT_RANK_TOL).context("A")
    }
}
