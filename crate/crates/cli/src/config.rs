//! User-defined cases read from a TOML file.
//!
//! ```toml
//! name = "order 16 group over Z[i]"
//! ring = 4                 # 1 (integer matrices), 2, 3, 4 or 6
//! model = "standard"       # or "sum-zero"
//! generators = [
//!     [["-1", "1+i"], ["0", "1"]],
//!     [["-i", "i-1"], ["0", "i"]],
//! ]
//! delta = ["1/2,1/2,1/2,1/2"]   # optional
//! ```
//!
//! Ring elements are written `a+bz` with `z` a primitive `m`-th root of
//! unity; `i` is accepted for `z` when `m = 4`.

use serde::{Deserialize, Serialize};
use smoothquot_core::groups::{AffineGroup, DeltaGroup, FiniteMatrixGroup};
use smoothquot_core::smoothness::check_smooth;
use smoothquot_core::torus::{RealizedSurface, SurfaceModel};
use smoothquot_core::{CycMat2, CyclotomicInteger, TorsionVector};

use crate::classify::{CaseResult, Verdict, WitnessReport};
use crate::error::{CliError, CliResult};
use crate::expectations::{DeltaShape, Expectation, ExpectationEntry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomCase {
    #[serde(default)]
    pub name: String,
    pub ring: u32,
    #[serde(default = "default_model")]
    pub model: String,
    pub generators: Vec<[[String; 2]; 2]>,
    #[serde(default)]
    pub delta: Vec<String>,
}

fn default_model() -> String {
    "standard".into()
}

impl CustomCase {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn surface_model(&self) -> CliResult<SurfaceModel> {
        match self.model.as_str() {
            "standard" => Ok(SurfaceModel::Standard),
            "sum-zero" => Ok(SurfaceModel::SumZero),
            other => Err(CliError::Config(format!(
                "model must be \"standard\" or \"sum-zero\", got \"{other}\""
            ))),
        }
    }

    pub fn group(&self) -> CliResult<FiniteMatrixGroup> {
        let cfg = |e: smoothquot_core::Error| CliError::Config(e.to_string());
        let surface = RealizedSurface::new(self.ring, self.surface_model()?).map_err(cfg)?;
        if self.generators.is_empty() {
            return Err(CliError::Config(
                "at least one generator is required".into(),
            ));
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            let p = |s: &String| CyclotomicInteger::parse(self.ring, s).map_err(cfg);
            let m = CycMat2::new([[p(&g[0][0])?, p(&g[0][1])?], [p(&g[1][0])?, p(&g[1][1])?]])
                .map_err(cfg)?;
            if m.det().norm() != 1 {
                return Err(CliError::Config(format!(
                    "generator {m} is not invertible over the ring"
                )));
            }
            gens.push(m);
        }
        FiniteMatrixGroup::generate(surface, &gens, None).map_err(cfg)
    }

    pub fn delta(&self, group: &FiniteMatrixGroup) -> CliResult<DeltaGroup> {
        let gens = self
            .delta
            .iter()
            .map(|s| TorsionVector::parse(s).map_err(|e| CliError::Config(e.to_string())))
            .collect::<CliResult<Vec<_>>>()?;
        if let Some(g) = gens.iter().find(|g| g.dim() != 4) {
            return Err(CliError::Config(format!(
                "torsion vector {g} must have 4 coordinates"
            )));
        }
        DeltaGroup::new(group, &gens).map_err(|e| CliError::Config(format!("delta: {e}")))
    }

    pub fn run(&self) -> CliResult<CaseResult> {
        let group = self.group()?;
        let delta = self.delta(&group)?;
        let shape = DeltaShape::of(group.surface(), &delta);
        let delta_order = delta.order();
        let aff = AffineGroup::new(group, delta);
        let v = check_smooth(&aff)?;
        let witness = v.witness.as_ref().map(|w| WitnessReport {
            point: w.point.to_string(),
            stabilizer: w.stabilizer.iter().map(|a| aff.describe(a)).collect(),
            stabilizer_order: w.stabilizer.len(),
            reflection_subgroup_order: w.reflection_subgroup.len(),
        });
        Ok(CaseResult {
            case: crate::classify::CaseDescriptor {
                m: self.ring,
                p: 0,
                model: aff.group().surface().model(),
                delta: aff.delta().descriptor(),
                alias_of: None,
            },
            shape,
            delta_order,
            verdict: if v.smooth {
                Verdict::Smooth
            } else {
                Verdict::NotSmooth
            },
            candidates: v.candidates_checked,
            witness,
            expectation: ExpectationEntry {
                expected: Expectation::NoPaperExpectation,
                citation: if self.name.is_empty() {
                    "custom case".into()
                } else {
                    format!("custom case: {}", self.name)
                },
            },
            matched: None,
            spot_check: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
name = "order 16"
ring = 4
generators = [
    [["-1", "1+i"], ["0", "1"]],
    [["-i", "i-1"], ["0", "i"]],
    [["-1", "0"], ["i-1", "1"]],
]
"#;

    #[test]
    fn parses_and_runs() {
        let c = CustomCase::from_toml(EXAMPLE).unwrap();
        assert_eq!(c.group().unwrap().order(), 16);
        let r = c.run().unwrap();
        assert!(r.smooth());
        assert_eq!(r.matched, None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(CustomCase::from_toml("ring = 4").is_err());
        let c = CustomCase::from_toml("ring = 4\nmodel = \"flat\"\ngenerators = []").unwrap();
        assert!(c.group().is_err());
        let c = CustomCase::from_toml("ring = 4\ngenerators = [[[\"2\",\"0\"],[\"0\",\"1\"]]]")
            .unwrap();
        assert!(c.group().is_err());
    }
}
