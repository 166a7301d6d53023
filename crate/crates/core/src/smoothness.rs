//! Deciding smoothness of `B / (Δ ⋊ G)` with the Chevalley–Shephard–Todd
//! criterion: the quotient is smooth at the image of `x` iff `Stab(x)` is
//! generated by pseudoreflections.
//!
//! Only finitely many points need checking. If `Stab(x)` contains an element
//! `h` for which `x` is an isolated fixed point, then `x` is a fixed point of
//! an element with `det(1 - h) ≠ 0`, and all such points are enumerated.
//! Otherwise every non-identity `h ∈ Stab(x)` has `rank(1 - h) = 2` (the rank
//! is 0, 2 or 4 on a complex surface), so `h` fixes a curve through `x`
//! pointwise and is a pseudoreflection; then `Stab(x)` is generated by its
//! pseudoreflections and `x` passes. In particular a generic point of a
//! reflection curve passes, since its stabilizer is the pointwise stabilizer
//! of the curve. Intersections of two reflection curves are added to the
//! candidates anyway; they pass or fail by the same rule.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groups::{AffineElement, AffineGroup};
use crate::linalg::{solve_mod_lattice, IntMatrix, TorsionVector};
use crate::torus::{fixed_locus, SurfaceModel, RANK};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Isolated fixed point of this element.
    IsolatedFixedPoint(AffineElement),
    /// Isolated point of the intersection of the fixed curves of two affine
    /// pseudoreflections.
    CurveIntersection(AffineElement, AffineElement),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePoint {
    /// Lexicographically least point of its orbit.
    pub point: TorsionVector,
    pub provenance: Provenance,
    pub orbit_size: usize,
}

/// Candidate points up to the action of `Δ ⋊ G`, sorted by representative.
pub fn candidate_points(group: &AffineGroup) -> Result<Vec<CandidatePoint>> {
    let mut seen: HashSet<TorsionVector> = HashSet::new();
    let mut out = Vec::new();
    let mut reflections: Vec<(AffineElement, IntMatrix)> = Vec::new();
    let mut add = |x: TorsionVector, prov: Provenance, out: &mut Vec<CandidatePoint>| {
        if seen.contains(&x) {
            return;
        }
        let orbit = orbit(group, &x);
        let point = orbit[0].clone();
        let orbit_size = orbit.len();
        seen.extend(orbit);
        out.push(CandidatePoint {
            point,
            provenance: prov,
            orbit_size,
        });
    };
    for a in group.elements() {
        if group.is_identity(&a) {
            continue;
        }
        let g = &group.linear(&a).mat4;
        let locus = fixed_locus(&a.t, g)?;
        match locus.real_rank() {
            Some(0) => {
                for c in locus.components() {
                    add(
                        c.translate,
                        Provenance::IsolatedFixedPoint(a.clone()),
                        &mut out,
                    );
                }
            }
            Some(2) => reflections.push((a.clone(), IntMatrix::identity(RANK).sub(g))),
            _ => {}
        }
    }
    for (i, (a, ma)) in reflections.iter().enumerate() {
        for (b, mb) in &reflections[i + 1..] {
            let stacked = ma.vcat(mb);
            let rhs = {
                let mut f = a.t.fractions();
                f.extend(b.t.fractions());
                TorsionVector::from_fractions(&f)
            };
            let Some(sol) = solve_mod_lattice(&stacked, &rhs)? else {
                continue;
            };
            if sol.dimension() != 0 {
                continue;
            }
            for x in sol.particular() {
                add(
                    x.clone(),
                    Provenance::CurveIntersection(a.clone(), b.clone()),
                    &mut out,
                );
            }
        }
    }
    out.sort_by(|x, y| x.point.cmp(&y.point));
    Ok(out)
}

/// The orbit of `x`, sorted.
pub fn orbit(group: &AffineGroup, x: &TorsionVector) -> Vec<TorsionVector> {
    let mut pts: Vec<TorsionVector> = group.elements().map(|a| group.apply(&a, x)).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// All `(t, g)` with `g·x + t ≡ x`.
pub fn stabilizer(x: &TorsionVector, group: &AffineGroup) -> Vec<AffineElement> {
    let mut out = Vec::new();
    for (gi, g) in group.group().elements().iter().enumerate() {
        let t = x.sub(&x.apply(&g.mat4));
        if group.delta().contains(&t) {
            out.push(AffineElement { t, g: gi });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub point: TorsionVector,
    pub stabilizer: Vec<AffineElement>,
    /// Subgroup generated by the pseudoreflections of the stabilizer.
    pub reflection_subgroup: Vec<AffineElement>,
    pub passes: bool,
}

impl StabilizerReport {
    /// Stabilizer elements that are pseudoreflections.
    pub fn pseudoreflections<'a>(
        &'a self,
        group: &'a AffineGroup,
    ) -> impl Iterator<Item = &'a AffineElement> {
        self.stabilizer
            .iter()
            .filter(move |a| group.has_reflection_part(a))
    }
}

pub fn cst_check(x: &TorsionVector, group: &AffineGroup) -> StabilizerReport {
    let stab = stabilizer(x, group);
    // An element of Stab(x) with reflection linear part fixes a curve through x.
    let refl: Vec<AffineElement> = stab
        .iter()
        .filter(|a| group.has_reflection_part(a))
        .cloned()
        .collect();
    let reflection_subgroup = group.subgroup_generated_by(&refl);
    let passes = reflection_subgroup.len() == stab.len();
    StabilizerReport {
        point: x.clone(),
        stabilizer: stab,
        reflection_subgroup,
        passes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseId {
    pub m: u32,
    pub p: u32,
    pub model: SurfaceModel,
    pub delta: String,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G({},{}) [{}] Δ={}",
            self.m, self.p, self.model, self.delta
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessVerdict {
    pub case: CaseId,
    pub smooth: bool,
    pub candidates_checked: usize,
    pub witness: Option<StabilizerReport>,
}

/// Runs [`cst_check`] on every candidate; the witness is the least failing one.
pub fn check_smooth(group: &AffineGroup) -> Result<SmoothnessVerdict> {
    let candidates = candidate_points(group)?;
    let witness = candidates
        .iter()
        .map(|c| cst_check(&c.point, group))
        .find(|r| !r.passes);
    let (m, p) = group
        .group()
        .label()
        .unwrap_or((group.group().surface().ring(), 0));
    Ok(SmoothnessVerdict {
        case: CaseId {
            m,
            p,
            model: group.group().surface().model(),
            delta: group.delta().descriptor(),
        },
        smooth: witness.is_none(),
        candidates_checked: candidates.len(),
        witness,
    })
}
