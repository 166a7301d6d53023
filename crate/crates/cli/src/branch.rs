//! Branch locus of `A/G → B/G(4,1)` for the order-16 example.
//!
//! `B = E × E` with `E = C/Z[i]`, `G = G(4,2)`, `Δ = <(t₀,t₀)>`. The three
//! nontrivial elements `s`, `t₀*`, `s·t₀*` of the Klein group acting on
//! `A/G` have fixed sets whose preimages in `B` are the solutions of
//!
//! * `s`:     `(τ - h)·x ≡ δ`
//! * `t₀*`:   `(τ - 1)·x ≡ (t₀, 0) + δ`
//! * `s·t₀*`: `(τ - h)·x ≡ (t₀, 0) + δ`
//!
//! over `τ ∈ G`, `δ ∈ Δ`, with `h = (i, 1)`. These are pushed through
//! `q₀ × q₀` (multiplication by `1 + i`) and their curve components kept.

use serde::{Deserialize, Serialize};
use smoothquot_core::groups::{build_gmp, DeltaGroup};
use smoothquot_core::linalg::solve_mod_lattice;
use smoothquot_core::torus::{congruence_locus, LocusComponent, RealizedSurface};
use smoothquot_core::{CycMat2, CyclotomicInteger, IntMatrix, TorsionVector};

use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSet {
    pub name: String,
    /// Curve components, e.g. `E x {(1/2,0)}`.
    pub components: Vec<String>,
    pub expected: Vec<String>,
    /// Whether finitely many isolated points occur besides the curves.
    pub has_finite_residue: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchComponentReport {
    pub sets: Vec<BranchSet>,
    pub components_match: bool,
    /// Curves from different sets meet in finitely many points.
    pub pairwise_finite: bool,
    pub triple_empty: bool,
    /// `G(4,1)` permutes the four components of the `t₀*` set transitively.
    pub t0_transitive: bool,
}

impl BranchComponentReport {
    pub fn passed(&self) -> bool {
        self.components_match && self.pairwise_finite && self.triple_empty && self.t0_transitive
    }
}

fn push_unique(list: &mut Vec<LocusComponent>, c: LocusComponent) {
    if !list.iter().any(|x| x.same_as(&c)) {
        list.push(c);
    }
}

/// Curve components and whether isolated points also occur.
fn fixed_set(
    surface: &RealizedSurface,
    group: &[IntMatrix],
    delta: &DeltaGroup,
    shift: &IntMatrix,
    offset: &TorsionVector,
) -> CliResult<(Vec<LocusComponent>, bool)> {
    let push = surface.rho4(&CycMat2::scalar(CyclotomicInteger::parse(4, "1+i")?)?)?;
    let mut curves = Vec::new();
    let mut points = false;
    for tau in group {
        let a = tau.sub(shift);
        for d in delta.elements() {
            let locus = congruence_locus(&a, &offset.add(d))?;
            match locus.real_rank() {
                Some(2) => {
                    for c in locus.components() {
                        push_unique(&mut curves, c.image(&push)?);
                    }
                }
                Some(0) => points = true,
                _ => {}
            }
        }
    }
    curves.sort_by_key(describe);
    Ok((curves, points))
}

/// `E x {b}` or `{a} x E` for axis-parallel curves.
fn describe(c: &LocusComponent) -> String {
    let basis = c.subtorus.span().basis();
    let horizontal = (0..basis.cols()).all(|j| basis[(2, j)] == 0 && basis[(3, j)] == 0);
    let vertical = (0..basis.cols()).all(|j| basis[(0, j)] == 0 && basis[(1, j)] == 0);
    let f = c.translate.fractions();
    let pt = |a: (i64, i64), b: (i64, i64)| TorsionVector::from_fractions(&[a, b]).to_string();
    if horizontal {
        format!("E x {{{}}}", pt(f[2], f[3]))
    } else if vertical {
        format!("{{{}}} x E", pt(f[0], f[1]))
    } else {
        format!("{} + span{}", c.translate, basis)
    }
}

fn meet(cs: &[&LocusComponent]) -> CliResult<Option<usize>> {
    let n = 4;
    let mut a = IntMatrix::zeros(0, n);
    let mut fr = Vec::new();
    for c in cs {
        // x ∈ c ⇔ x - c.translate ∈ span ⇔ P·x ≡ P·translate, with P the
        // projection onto the quotient by the saturated span.
        let proj = complement_projection(c.subtorus.span().basis());
        fr.extend(c.translate.apply(&proj).fractions());
        a = a.vcat(&proj);
    }
    let rhs = TorsionVector::from_fractions(&fr);
    Ok(solve_mod_lattice(&a, &rhs)?.map(|s| s.dimension()))
}

/// Rows cutting out a saturated sublattice: `P·v = 0` iff `v` lies in its span.
fn complement_projection(basis: &IntMatrix) -> IntMatrix {
    let snf = smoothquot_core::linalg::smith_normal_form(basis);
    let r = snf.rank();
    let u = &snf.u;
    let rows: Vec<Vec<i64>> = (r..u.rows()).map(|i| u.row(i).to_vec()).collect();
    IntMatrix::from_rows(&rows)
}

pub fn branch_locus_report() -> CliResult<BranchComponentReport> {
    let g = build_gmp(4, 2)?;
    let g1 = build_gmp(4, 1)?;
    let surface = g.surface().clone();
    let t0t0 = TorsionVector::from_fractions(&[(1, 2); 4]);
    let delta = DeltaGroup::new(&g, &[t0t0])?;
    let mats = g.matrices4();
    let one = CyclotomicInteger::one(4)?;
    let i = CyclotomicInteger::zeta(4)?;
    let h = surface.rho4(&CycMat2::diag(i, one)?)?;
    let id = IntMatrix::identity(4);
    let zero = TorsionVector::zero(4);
    let t0_first = TorsionVector::from_fractions(&[(1, 2), (1, 2), (0, 1), (0, 1)]);

    let (ds, ps) = fixed_set(&surface, &mats, &delta, &h, &zero)?;
    let (dt, pt) = fixed_set(&surface, &mats, &delta, &id, &t0_first)?;
    let (dst, pst) = fixed_set(&surface, &mats, &delta, &h, &t0_first)?;

    let pts = ["(0,0)", "(1/2,1/2)", "(1/2,0)", "(0,1/2)"];
    let lines = |ps: &[&str]| -> Vec<String> {
        let mut v: Vec<String> = ps
            .iter()
            .flat_map(|p| [format!("E x {{{p}}}"), format!("{{{p}}} x E")])
            .collect();
        v.sort();
        v
    };
    let expected = [lines(&pts[..1]), lines(&pts[2..]), lines(&pts[1..2])];
    let found = [&ds, &dt, &dst];
    let residues = [ps, pt, pst];
    let names = ["s", "t0*", "s t0*"];
    let mut sets = Vec::new();
    let mut components_match = true;
    for k in 0..3 {
        let mut comps: Vec<String> = found[k].iter().map(describe).collect();
        comps.sort();
        components_match &= comps == expected[k];
        sets.push(BranchSet {
            name: names[k].into(),
            components: comps,
            expected: expected[k].clone(),
            has_finite_residue: residues[k],
        });
    }

    let mut pairwise_finite = true;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        for x in found[a] {
            for y in found[b] {
                if let Some(dim) = meet(&[x, y])? {
                    pairwise_finite &= dim == 0;
                }
            }
        }
    }
    let mut triple_empty = true;
    for x in &ds {
        for y in &dt {
            for z in &dst {
                triple_empty &= meet(&[x, y, z])?.is_none();
            }
        }
    }

    let mut orbit: Vec<LocusComponent> = Vec::new();
    if let Some(first) = dt.first() {
        for e in g1.elements() {
            push_unique(&mut orbit, first.image(&e.mat4)?);
        }
    }
    let t0_transitive =
        orbit.len() == dt.len() && dt.iter().all(|c| orbit.iter().any(|o| o.same_as(c)));

    Ok(BranchComponentReport {
        sets,
        components_match,
        pairwise_finite,
        triple_empty,
        t0_transitive,
    })
}
