//! Exact checks of the conjugation identities behind the isomorphic-pair
//! arguments, and of the order-16 example over `Z[i]`.

use serde::{Deserialize, Serialize};
use smoothquot_core::groups::{
    build_gmp, build_sum_zero, conjugate_pair_check, example_c_generators, example_c_group,
    example_c_isogeny, AffineGroup, DeltaGroup,
};
use smoothquot_core::smoothness::check_smooth;
use smoothquot_core::torus::{congruence_locus, quotient_by_delta, RealizedSurface, SurfaceModel};
use smoothquot_core::{CycMat2, CyclotomicInteger, TorsionVector};

use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn mat(m: u32, rows: [[&str; 2]; 2]) -> CliResult<CycMat2> {
    let p = |s: &str| CyclotomicInteger::parse(m, s);
    Ok(CycMat2::new([
        [p(rows[0][0])?, p(rows[0][1])?],
        [p(rows[1][0])?, p(rows[1][1])?],
    ])?)
}

/// `which(C)·X·which(C)⁻¹` compared entrywise with `expected`.
fn conj_check(
    name: &str,
    c: &CycMat2,
    inverse_side: bool,
    x: &CycMat2,
    expected: &CycMat2,
) -> CliResult<IdentityCheck> {
    let got = if inverse_side {
        // C⁻¹·X·C = adj(C)·X·adj(C)⁻¹
        c.adjugate().conjugate(x)?
    } else {
        c.conjugate(x)?
    };
    Ok(match got {
        Some(g) if g == *expected => IdentityCheck::new(name, true, format!("= {g}")),
        Some(g) => IdentityCheck::new(name, false, format!("got {g}, expected {expected}")),
        None => IdentityCheck::new(name, false, "conjugate is not integral"),
    })
}

/// Kernel of `x ↦ C·x` on the torus, compared with the span of `expected`.
fn kernel_check(
    name: &str,
    surface: &RealizedSurface,
    c: &CycMat2,
    expected: &[TorsionVector],
) -> CliResult<IdentityCheck> {
    let a = surface.rho4(c)?;
    let locus = congruence_locus(&a, &TorsionVector::zero(4))?;
    let Some(sol) = locus.solutions() else {
        return Ok(IdentityCheck::new(name, false, "kernel is empty"));
    };
    if sol.dimension() != 0 {
        return Ok(IdentityCheck::new(name, false, "kernel is not finite"));
    }
    let mut want = smoothquot_core::torus::torsion_span(4, expected);
    want.sort();
    let got = sol.particular().to_vec();
    let passed = got == want;
    let detail = format!(
        "kernel of order {}: {}",
        got.len(),
        got.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(IdentityCheck::new(name, passed, detail))
}

pub fn verify_matrix_identities() -> CliResult<Vec<IdentityCheck>> {
    let mut out = Vec::new();

    // G(2,1): M = (1 1; 1 -1) swaps the two generator types.
    let m2 = CycMat2::from_ints(2, [[1, 1], [1, -1]])?;
    let d = CycMat2::from_ints(2, [[1, 0], [0, -1]])?;
    let s2 = CycMat2::swap(2)?;
    out.push(conj_check(
        "G(2,1): M (1,-1) M^-1 = (1 2)",
        &m2,
        false,
        &d,
        &s2,
    )?);
    out.push(conj_check(
        "G(2,1): M (1 2) M^-1 = (1,-1)",
        &m2,
        false,
        &s2,
        &d,
    )?);
    out.push(IdentityCheck::new(
        "G(2,1): conjugation by M preserves G",
        conjugate_pair_check(&m2, &build_gmp(2, 1)?)?,
        "all generators land in G(2,1)",
    ));
    let s = RealizedSurface::new(2, SurfaceModel::Standard)?;
    let half_diag = |a: (i64, i64)| TorsionVector::from_fractions(&[a, (0, 1), a, (0, 1)]);
    out.push(kernel_check(
        "G(2,1): ker M is the full diagonal E[2]",
        &s,
        &m2,
        &[
            half_diag((1, 2)),
            TorsionVector::from_fractions(&[(0, 1), (1, 2), (0, 1), (1, 2)]),
        ],
    )?);

    // G(4,2): M and N over Z[i].
    let g42 = build_gmp(4, 2)?;
    let m4 = m2.to_ring(4)?;
    let di = mat(4, [["i", "0"], ["0", "-i"]])?;
    let dm = mat(4, [["-1", "0"], ["0", "1"]])?;
    let s4 = CycMat2::swap(4)?;
    let ii = mat(4, [["i", "0"], ["0", "i"]])?;
    out.push(conj_check(
        "G(4,2): M (i,-i) M^-1 = (i,i)(1 2)",
        &m4,
        false,
        &di,
        &ii.try_mul(&s4)?,
    )?);
    let n = mat(4, [["1", "i"], ["i", "1"]])?;
    // The isogeny for the swap-pair kernel is adj(N), so the group moves by N^-1·X·N.
    out.push(conj_check(
        "G(4,2): N (i,-i) N^-1 = (0 -1; 1 0) = (-1,1)(1 2)",
        &n,
        true,
        &di,
        &dm.try_mul(&s4)?,
    )?);
    out.push(conj_check(
        "G(4,2): N (-1,1) N^-1 = (0 -i; i 0) = (1 2)(i,-i)",
        &n,
        true,
        &dm,
        &s4.try_mul(&di)?,
    )?);
    out.push(conj_check(
        "G(4,2): N (1 2) N^-1 = (1 2)",
        &n,
        true,
        &s4,
        &s4,
    )?);
    out.push(IdentityCheck::new(
        "G(4,2): conjugation by M and by N preserves G",
        conjugate_pair_check(&m4, &g42)? && conjugate_pair_check(&n, &g42)?,
        "all generators land in G(4,2) under X -> C X C^-1",
    ));
    let s4s = RealizedSurface::new(4, SurfaceModel::Standard)?;
    let t0t0 = TorsionVector::from_fractions(&[(1, 2); 4]);
    let t1t2 = TorsionVector::from_fractions(&[(1, 2), (0, 1), (0, 1), (1, 2)]);
    out.push(kernel_check(
        "G(4,2): ker adj(N) is the swap-pair kernel {0,(t0,t0),(t1,t2),(t2,t1)}",
        &s4s,
        &n.adjugate(),
        &[t0t0.clone(), t1t2],
    )?);

    // G(6,6) on the sum-zero surface.
    let g66 = build_sum_zero(true)?;
    let m = CycMat2::from_ints(1, [[-1, -2], [2, 1]])?;
    let minus = CycMat2::from_ints(1, [[-1, 0], [0, -1]])?;
    let cyc = CycMat2::from_ints(1, [[-1, -1], [1, 0]])?;
    let s1 = CycMat2::swap(1)?;
    out.push(conj_check(
        "G(6,6): M (-1) M^-1 = -1",
        &m,
        false,
        &minus,
        &minus,
    )?);
    out.push(conj_check(
        "G(6,6): M (1 2 3) M^-1 = (1 2 3)",
        &m,
        false,
        &cyc,
        &cyc,
    )?);
    out.push(conj_check(
        "G(6,6): M (1 2) M^-1 = (0 -1; -1 0) = (1 2)(-1)",
        &m,
        false,
        &s1,
        &s1.try_mul(&minus)?,
    )?);
    out.push(IdentityCheck::new(
        "G(6,6): conjugation by M preserves G",
        conjugate_pair_check(&m, &g66)?,
        "all generators land in S3 x mu2",
    ));
    let sz = RealizedSurface::new(1, SurfaceModel::SumZero)?;
    let diag3 = |a: (i64, i64), b: (i64, i64)| TorsionVector::from_fractions(&[a, b, a, b]);
    out.push(kernel_check(
        "G(6,6): ker M is the diagonal E[3]",
        &sz,
        &m,
        &[diag3((1, 3), (0, 1)), diag3((0, 1), (1, 3))],
    )?);
    Ok(out)
}

pub fn verify_example_c() -> CliResult<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    let ex = example_c_group()?;
    out.push(IdentityCheck::new(
        "order is 16",
        ex.order() == 16,
        format!("order {}", ex.order()),
    ));

    let q = example_c_isogeny()?;
    let gens = example_c_generators()?;
    let sources = [
        mat(4, [["-1", "0"], ["0", "1"]])?,
        mat(4, [["-i", "0"], ["0", "i"]])?,
        CycMat2::swap(4)?,
    ];
    for (src, want) in sources.iter().zip(&gens) {
        out.push(conj_check(
            &format!("Q {src} Q^-1 = {want}"),
            &q,
            false,
            src,
            want,
        )?);
    }

    let g42 = build_gmp(4, 2)?;
    let mut conj = Vec::new();
    for e in g42.elements() {
        conj.push(q.conjugate(&e.mat2)?);
    }
    let all_in = conj
        .iter()
        .all(|c| c.as_ref().is_some_and(|c| ex.contains(c)));
    out.push(IdentityCheck::new(
        "Q G(4,2) Q^-1 equals the group",
        all_in && conj.len() == ex.order(),
        format!("{} conjugated elements", conj.len()),
    ));

    let np = |g: &smoothquot_core::FiniteMatrixGroup| g.pseudoreflections().len();
    out.push(IdentityCheck::new(
        "same number of pseudoreflections as G(4,2)",
        np(&ex) == np(&g42),
        format!("{} and {}", np(&ex), np(&g42)),
    ));

    let s = RealizedSurface::new(4, SurfaceModel::Standard)?;
    let t0t0 = TorsionVector::from_fractions(&[(1, 2); 4]);
    out.push(kernel_check(
        "ker Q = <(t0,t0)>",
        &s,
        &q,
        std::slice::from_ref(&t0t0),
    )?);

    let v = check_smooth(&AffineGroup::linear_only(ex))?;
    out.push(IdentityCheck::new(
        "quotient of E x E by the group is smooth",
        v.smooth,
        format!("{} candidate orbits", v.candidates_checked),
    ));

    // Same quotient computed from B = E x E with Δ = <(t0,t0)>, and from the
    // lattice of A = B/Δ with the transported group.
    let delta = DeltaGroup::new(&g42, std::slice::from_ref(&t0t0))?;
    let vb = check_smooth(&AffineGroup::new(g42.clone(), delta))?;
    let iso = quotient_by_delta(g42.surface(), &g42.matrices4(), &[t0t0], true)?;
    let on_a = g42.rebased(iso.transported())?;
    let va = check_smooth(&AffineGroup::linear_only(on_a))?;
    out.push(IdentityCheck::new(
        "B/(Δ ⋊ G) and A/G agree and are smooth",
        vb.smooth && va.smooth && iso.index() == 2,
        format!(
            "index {}, smooth on B: {}, on A: {}",
            iso.index(),
            vb.smooth,
            va.smooth
        ),
    ));
    Ok(out)
}
