use std::collections::BTreeSet;

use proptest::prelude::*;
use smoothquot_core::groups::{
    admissible_cases, build_gmp, build_sum_zero, enumerate_invariant_deltas, AffineElement,
    AffineGroup, FiniteMatrixGroup,
};
use smoothquot_core::linalg::{all_torsion_points, solve_mod_lattice};
use smoothquot_core::smoothness::stabilizer;
use smoothquot_core::torus::quotient_by_delta;
use smoothquot_core::{check_smooth, CyclotomicInteger, IntMatrix, TorsionVector};

fn standard_groups() -> Vec<FiniteMatrixGroup> {
    admissible_cases()
        .filter(|&(m, p)| m != p || m == 4)
        .map(|(m, p)| build_gmp(m, p).unwrap())
        .collect()
}

fn all_affine_groups() -> Vec<AffineGroup> {
    let mut groups = standard_groups();
    groups.push(build_sum_zero(false).unwrap());
    groups.push(build_sum_zero(true).unwrap());
    let mut out = Vec::new();
    for g in groups {
        for d in enumerate_invariant_deltas(&g, 6).unwrap() {
            out.push(AffineGroup::new(g.clone(), d));
        }
    }
    out
}

#[test]
fn stabilizers_are_conjugate_along_orbits() {
    let points: Vec<TorsionVector> = all_torsion_points(4, 6).into_iter().step_by(53).collect();
    for aff in all_affine_groups() {
        for x in &points {
            let sx: BTreeSet<AffineElement> = stabilizer(x, &aff).into_iter().collect();
            for a in aff.elements() {
                let y = aff.apply(&a, x);
                let sy: BTreeSet<AffineElement> = stabilizer(&y, &aff).into_iter().collect();
                let inv = aff.inverse(&a);
                let conj: BTreeSet<AffineElement> = sx
                    .iter()
                    .map(|s| aff.compose(&aff.compose(&a, s), &inv))
                    .collect();
                assert_eq!(sy, conj, "Stab({y}) vs conjugate of Stab({x})");
            }
        }
    }
}

/// Smoothness of `B/(Δ⋊G)` agrees with the linear action moved onto `A = B/Δ`.
#[test]
fn verdict_agrees_with_the_quotient_surface() {
    for aff in all_affine_groups() {
        let g = aff.group();
        let q = quotient_by_delta(g.surface(), &g.matrices4(), aff.delta().generators(), false)
            .unwrap();
        let on_a = AffineGroup::linear_only(g.rebased(q.transported()).unwrap());
        let on_b = check_smooth(&aff).unwrap();
        let direct = check_smooth(&on_a).unwrap();
        assert_eq!(
            on_b.smooth,
            direct.smooth,
            "{:?} Δ={}",
            g.label(),
            aff.delta().descriptor()
        );
    }
}

/// `G(m,p)` has `m` reflections swapping the axes and `2(m/p - 1)` diagonal ones.
#[test]
fn pseudoreflection_inventory() {
    for g in standard_groups() {
        let (m, p) = g.label().unwrap();
        let z = CyclotomicInteger::zeta(m).unwrap();
        let zero = CyclotomicInteger::zero(m).unwrap();
        let one = CyclotomicInteger::one(m).unwrap();
        let mut swaps = BTreeSet::new();
        let mut diagonal = 0;
        for i in g.pseudoreflections() {
            let x = g.element(i).mat2;
            if x.get(0, 0) == zero && x.get(1, 1) == zero {
                assert!((x.get(0, 1) * x.get(1, 0)).is_one());
                swaps.insert(x.get(0, 1));
            } else {
                assert!(x.get(0, 1) == zero && x.get(1, 0) == zero);
                let (a, b) = (x.get(0, 0), x.get(1, 1));
                assert!(a == one || b == one);
                let other = if a == one { b } else { a };
                let k = (0..m).find(|&k| z.pow(k) == other).unwrap();
                assert_eq!(k % p, 0, "diag exponent {k} in G({m},{p})");
                diagonal += 1;
            }
        }
        assert_eq!(swaps.len() as u32, m, "G({m},{p})");
        assert_eq!(diagonal, 2 * (m / p - 1), "G({m},{p})");
    }
}

/// Kernels on the sum-zero surface are fixed by the transpositions of S3.
/// (The negated transpositions in S3 x {±1} are reflections too, but they
/// move `(x, x, x)` to its negative.)
#[test]
fn sum_zero_kernels_lie_in_reflection_fixed_loci() {
    let s3 = build_sum_zero(false).unwrap();
    for with_minus in [false, true] {
        let g = build_sum_zero(with_minus).unwrap();
        let deltas = enumerate_invariant_deltas(&g, 6).unwrap();
        assert_eq!(
            deltas.iter().map(|d| d.order()).collect::<BTreeSet<_>>(),
            [1, 3, 9].into()
        );
        for d in &deltas {
            for i in g.pseudoreflections() {
                if !s3.contains(&g.element(i).mat2) {
                    continue;
                }
                for x in d.elements() {
                    assert_eq!(&x.apply(&g.element(i).mat4), x);
                }
            }
        }
    }
}

#[test]
fn affine_law_is_associative_with_inverses() {
    for aff in all_affine_groups().into_iter().step_by(3) {
        let elts: Vec<_> = aff.elements().step_by(5).collect();
        for a in &elts {
            assert!(aff.is_identity(&aff.compose(a, &aff.inverse(a))));
            for b in &elts {
                for c in elts.iter().step_by(4) {
                    let l = aff.compose(&aff.compose(a, b), c);
                    let r = aff.compose(a, &aff.compose(b, c));
                    assert_eq!(l, r);
                }
            }
        }
    }
}

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        IntMatrix::from_rows(&v.chunks(n).map(|c| c.to_vec()).collect::<Vec<_>>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn three_dimensional_congruences_match_brute_force(
        a in small_matrix(3),
        den in 1i64..=3,
        num in proptest::collection::vec(0i64..3, 3),
    ) {
        let t = TorsionVector::new(den, num);
        let big = 6 * t.den();
        let brute: Vec<_> = all_torsion_points(3, big)
            .into_iter()
            .filter(|x| x.apply(&a) == t)
            .collect();
        match solve_mod_lattice(&a, &t).unwrap() {
            None => prop_assert!(brute.is_empty()),
            Some(sol) => prop_assert_eq!(sol.torsion_points(big), brute),
        }
    }
}
