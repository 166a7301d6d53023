//! The full case sweep and single-case runs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smoothquot_core::groups::{
    build_gmp, build_sum_zero, enumerate_invariant_deltas, AffineGroup, DeltaGroup,
    FiniteMatrixGroup, ALL_CASES,
};
use smoothquot_core::smoothness::{check_smooth, SmoothnessVerdict};
use smoothquot_core::torus::SurfaceModel;
use smoothquot_core::TorsionVector;

use crate::error::{CliError, CliResult};
use crate::expectations::{DeltaShape, ExpectationEntry, ExpectationTable};
use crate::spotcheck::{spot_check, SpotCheck};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub max_torsion: i64,
    /// Also run `G(3,3)` and `G(6,6)` on `E × E` with CM.
    pub cm_standard: bool,
    pub seed: u64,
    pub spot_samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            max_torsion: 6,
            cm_standard: false,
            seed: 0,
            spot_samples: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub m: u32,
    pub p: u32,
    pub model: SurfaceModel,
    /// Canonical generator list of `Δ`.
    pub delta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias_of: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub point: String,
    pub stabilizer: Vec<String>,
    pub stabilizer_order: usize,
    pub reflection_subgroup_order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Smooth,
    NotSmooth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: CaseDescriptor,
    pub shape: DeltaShape,
    pub delta_order: usize,
    pub verdict: Verdict,
    pub candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub expectation: ExpectationEntry,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot_check: Option<SpotCheck>,
}

impl CaseResult {
    pub fn smooth(&self) -> bool {
        self.verdict == Verdict::Smooth
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCase {
    pub m: u32,
    pub p: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub max_torsion: i64,
    pub cases: Vec<CaseResult>,
    pub rejected: Vec<RejectedCase>,
    /// Internal consistency failures (alias disagreement, spot-check failure).
    pub violations: Vec<String>,
}

impl ClassificationReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.matched == Some(false))
    }

    /// 0 when everything matched, 1 on a mismatch, 2 on an internal violation.
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            2
        } else if self.mismatches().next().is_some() {
            1
        } else {
            0
        }
    }
}

/// The group used for `(m, p)`; `(3,3)` and `(6,6)` default to the sum-zero model.
pub fn group_for(m: u32, p: u32, model: SurfaceModel) -> CliResult<FiniteMatrixGroup> {
    let g = match (model, m, p) {
        (SurfaceModel::SumZero, 3, 3) => build_sum_zero(false)?,
        (SurfaceModel::SumZero, 6, 6) => build_sum_zero(true)?,
        (SurfaceModel::SumZero, _, _) => {
            return Err(CliError::Usage(format!(
                "G({m},{p}) has no sum-zero realization; only G(3,3) and G(6,6) do"
            )))
        }
        (SurfaceModel::Standard, 4, 4) => build_gmp(2, 1)?,
        (SurfaceModel::Standard, _, _) => build_gmp(m, p)?,
    };
    Ok(g)
}

pub fn default_model(m: u32, p: u32) -> SurfaceModel {
    if m == p && m != 4 {
        SurfaceModel::SumZero
    } else {
        SurfaceModel::Standard
    }
}

pub fn evaluate(
    m: u32,
    p: u32,
    group: &FiniteMatrixGroup,
    delta: DeltaGroup,
    table: &ExpectationTable,
    opts: &ClassifyOptions,
) -> CliResult<CaseResult> {
    let surface = group.surface().clone();
    let shape = DeltaShape::of(&surface, &delta);
    let delta_order = delta.order();
    let aff = AffineGroup::new(group.clone(), delta);
    let verdict: SmoothnessVerdict = check_smooth(&aff)?;
    let witness = verdict.witness.as_ref().map(|w| WitnessReport {
        point: w.point.to_string(),
        stabilizer: w.stabilizer.iter().map(|a| aff.describe(a)).collect(),
        stabilizer_order: w.stabilizer.len(),
        reflection_subgroup_order: w.reflection_subgroup.len(),
    });
    let spot = if opts.spot_samples > 0 {
        Some(spot_check(&aff, opts.spot_samples, 12, opts.seed)?)
    } else {
        None
    };
    let model = surface.model();
    let expectation = table.lookup(m, p, model, shape);
    let matched = expectation.expected.matches(verdict.smooth);
    Ok(CaseResult {
        case: CaseDescriptor {
            m,
            p,
            model,
            delta: aff.delta().descriptor(),
            alias_of: ((m, p) == (4, 4)).then_some((2, 1)),
        },
        shape,
        delta_order,
        verdict: if verdict.smooth {
            Verdict::Smooth
        } else {
            Verdict::NotSmooth
        },
        candidates: verdict.candidates_checked,
        witness,
        expectation,
        matched,
        spot_check: spot,
    })
}

/// `(m, p, model)` triples of the sweep, in report order.
pub fn sweep_plan(opts: &ClassifyOptions) -> Vec<(u32, u32, SurfaceModel)> {
    let mut plan: Vec<_> = ALL_CASES
        .into_iter()
        .filter(|&c| c != (2, 2))
        .map(|(m, p)| (m, p, default_model(m, p)))
        .collect();
    if opts.cm_standard {
        plan.push((3, 3, SurfaceModel::Standard));
        plan.push((6, 6, SurfaceModel::Standard));
    }
    plan
}

pub fn run_classification(opts: &ClassifyOptions) -> CliResult<ClassificationReport> {
    let table = ExpectationTable::published();
    let mut jobs = Vec::new();
    for (m, p, model) in sweep_plan(opts) {
        let group = group_for(m, p, model)?;
        for delta in enumerate_invariant_deltas(&group, opts.max_torsion)? {
            jobs.push((m, p, group.clone(), delta));
        }
    }
    let cases = jobs
        .into_par_iter()
        .map(|(m, p, g, d)| evaluate(m, p, &g, d, &table, opts))
        .collect::<CliResult<Vec<_>>>()?;

    let mut violations = Vec::new();
    // G(4,4) rows must agree with the G(2,1) rows of the same kernel.
    for alias in cases.iter().filter(|c| c.case.alias_of.is_some()) {
        let base = cases
            .iter()
            .find(|c| (c.case.m, c.case.p) == (2, 1) && c.case.delta == alias.case.delta);
        match base {
            Some(b) if b.verdict == alias.verdict && b.shape == alias.shape => {}
            _ => violations.push(format!(
                "G(4,4) alias row {} disagrees with G(2,1)",
                alias.case.delta
            )),
        }
    }
    for c in &cases {
        if let Some(s) = &c.spot_check {
            if !s.failures.is_empty() {
                violations.push(format!(
                    "G({},{}) Δ={}: spot-check found non-candidate points failing the criterion: {}",
                    c.case.m,
                    c.case.p,
                    c.case.delta,
                    s.failures.join(", ")
                ));
            }
        }
    }
    let rejected = match build_gmp(2, 2) {
        Err(e) => vec![RejectedCase {
            m: 2,
            p: 2,
            reason: e.to_string(),
        }],
        Ok(_) => {
            violations.push("G(2,2) was not rejected".into());
            vec![]
        }
    };
    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION,
        max_torsion: opts.max_torsion,
        cases,
        rejected,
        violations,
    })
}

/// How a user names a kernel on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaSpec {
    Trivial,
    /// Position in the enumerated list.
    Index(usize),
    Generators(Vec<TorsionVector>),
}

impl DeltaSpec {
    /// `trivial`, `#k`, or `;`-separated torsion vectors such as `1/2,1/2,1/2,1/2`.
    pub fn parse(s: &str) -> CliResult<Self> {
        let s = s.trim();
        if s.is_empty() || s == "trivial" || s == "0" {
            return Ok(DeltaSpec::Trivial);
        }
        if let Some(k) = s.strip_prefix('#') {
            return k
                .parse()
                .map(DeltaSpec::Index)
                .map_err(|_| CliError::Usage(format!("bad kernel index '{s}'")));
        }
        let gens = s
            .split(';')
            .map(|g| TorsionVector::parse(g).map_err(|e| CliError::Usage(e.to_string())))
            .collect::<CliResult<Vec<_>>>()?;
        if let Some(g) = gens.iter().find(|g| g.dim() != 4) {
            return Err(CliError::Usage(format!(
                "torsion vector {g} must have 4 coordinates"
            )));
        }
        Ok(DeltaSpec::Generators(gens))
    }
}

pub fn parse_case(m: u32, p: u32) -> CliResult<()> {
    if !ALL_CASES.contains(&(m, p)) {
        return Err(CliError::Usage(format!(
            "(m,p) = ({m},{p}) is not one of {:?}",
            ALL_CASES
        )));
    }
    if (m, p) == (2, 2) {
        if let Err(e) = build_gmp(2, 2) {
            return Err(CliError::Usage(format!("G(2,2) is excluded: {e}")));
        }
    }
    Ok(())
}

pub fn run_case(
    m: u32,
    p: u32,
    model: SurfaceModel,
    spec: &DeltaSpec,
    opts: &ClassifyOptions,
) -> CliResult<ClassificationReport> {
    parse_case(m, p)?;
    let group = group_for(m, p, model)?;
    let delta = match spec {
        DeltaSpec::Trivial => DeltaGroup::trivial(&group),
        DeltaSpec::Index(k) => {
            let all = enumerate_invariant_deltas(&group, opts.max_torsion)?;
            let n = all.len();
            all.into_iter().nth(*k).ok_or_else(|| {
                CliError::Usage(format!("kernel index #{k} out of range (found {n})"))
            })?
        }
        DeltaSpec::Generators(gens) => {
            let d = DeltaGroup::new(&group, gens)
                .map_err(|e| CliError::Usage(format!("kernel {spec:?}: {e}")))?;
            if model == SurfaceModel::Standard {
                let s = group.surface();
                if let Some(x) = d.elements().iter().find(|x| s.is_axis_point(x)) {
                    return Err(CliError::Usage(format!(
                        "kernel contains {x}, a nonzero point with a zero coordinate"
                    )));
                }
            }
            d
        }
    };
    let table = ExpectationTable::published();
    let result = evaluate(m, p, &group, delta, &table, opts)?;
    let mut violations = Vec::new();
    if let Some(s) = &result.spot_check {
        if !s.failures.is_empty() {
            violations.push(format!("spot-check failures: {}", s.failures.join(", ")));
        }
    }
    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION,
        max_torsion: opts.max_torsion,
        cases: vec![result],
        rejected: vec![],
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaListing {
    pub m: u32,
    pub p: u32,
    pub model: SurfaceModel,
    pub deltas: Vec<DeltaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaEntry {
    pub index: usize,
    pub order: usize,
    pub shape: DeltaShape,
    pub generators: String,
    pub elements: Vec<String>,
}

pub fn list_deltas(
    m: u32,
    p: u32,
    model: SurfaceModel,
    max_torsion: i64,
) -> CliResult<DeltaListing> {
    parse_case(m, p)?;
    let group = group_for(m, p, model)?;
    let deltas = enumerate_invariant_deltas(&group, max_torsion)?;
    let entries = deltas
        .iter()
        .enumerate()
        .map(|(index, d)| DeltaEntry {
            index,
            order: d.order(),
            shape: DeltaShape::of(group.surface(), d),
            generators: d.descriptor(),
            elements: d.elements().iter().map(|x| x.to_string()).collect(),
        })
        .collect();
    Ok(DeltaListing {
        m,
        p,
        model,
        deltas: entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_spec_forms() {
        assert_eq!(DeltaSpec::parse("trivial").unwrap(), DeltaSpec::Trivial);
        assert_eq!(DeltaSpec::parse("#3").unwrap(), DeltaSpec::Index(3));
        let DeltaSpec::Generators(g) = DeltaSpec::parse("1/2,1/2,1/2,1/2;0,1/2,0,1/2").unwrap()
        else {
            panic!("expected generators");
        };
        assert_eq!(g.len(), 2);
        assert!(DeltaSpec::parse("1/2,1/2").is_err());
        assert!(DeltaSpec::parse("#x").is_err());
    }

    #[test]
    fn single_case_matches() {
        let opts = ClassifyOptions {
            spot_samples: 20,
            ..Default::default()
        };
        let r = run_case(6, 1, SurfaceModel::Standard, &DeltaSpec::Trivial, &opts).unwrap();
        assert_eq!(r.cases.len(), 1);
        assert!(r.cases[0].smooth());
        assert_eq!(r.cases[0].matched, Some(true));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn axis_kernels_are_refused() {
        let spec = DeltaSpec::parse("1/2,0,0,0").unwrap();
        let err = run_case(
            2,
            1,
            SurfaceModel::Standard,
            &spec,
            &ClassifyOptions::default(),
        );
        assert!(err.is_err());
    }
}
