//! Abelian surfaces `B = C² / Λ` modelled as the real torus `R⁴ / Z⁴`.
//!
//! Two models are supported:
//!
//! * [`SurfaceModel::Standard`]: `B = E × E` with `E = C / Z[ζ_m]` for
//!   `m ∈ {3, 4, 6}` (basis `e₁, ζe₁, e₂, ζe₂`), or an arbitrary `E` with lattice
//!   basis `(1, τ)` when `m = 2`. A 2×2 matrix over `Z[ζ_m]` acts blockwise,
//!   each entry by its multiplication matrix.
//! * [`SurfaceModel::SumZero`]: `B = {x₁ + x₂ + x₃ = 0} ⊂ E³` in the basis
//!   `f₁ = (1, 0, -1)`, `f₂ = (0, 1, -1)`, for groups with integer matrices.
//!   The modulus of `E` never enters a matrix, so `E` stays arbitrary.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycMat2, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::linalg::{
    hnf_columns, image_lattice, lattice_intersection, solve_mod_lattice, CosetSolutionSet,
    IntMatrix, Sublattice, TorsionVector,
};

/// Real rank of the lattice of an abelian surface.
pub const RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceModel {
    /// `E × E` with coordinatewise structure.
    Standard,
    /// The sum-zero surface in `E³`.
    SumZero,
}

impl SurfaceModel {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceModel::Standard => "E^2 standard",
            SurfaceModel::SumZero => "sum-zero E^3",
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealizedSurface {
    m: u32,
    model: SurfaceModel,
    cm_matrix: Option<IntMatrix>,
}

impl RealizedSurface {
    pub fn new(m: u32, model: SurfaceModel) -> Result<Self> {
        let ok = match model {
            SurfaceModel::Standard => matches!(m, 2 | 3 | 4 | 6),
            SurfaceModel::SumZero => matches!(m, 1 | 2),
        };
        if !ok {
            return Err(Error::IncompatibleModel {
                m,
                model: model.name(),
            });
        }
        let mut surface = Self {
            m,
            model,
            cm_matrix: None,
        };
        if m >= 3 {
            let z = CyclotomicInteger::zeta(m)?;
            surface.cm_matrix = Some(surface.rho4(&CycMat2::scalar(z)?)?);
        }
        Ok(surface)
    }

    pub fn ring(&self) -> u32 {
        self.m
    }

    pub fn model(&self) -> SurfaceModel {
        self.model
    }

    /// Multiplication by `ζ_m` on both factors, when `E` has CM.
    pub fn cm_matrix(&self) -> Option<&IntMatrix> {
        self.cm_matrix.as_ref()
    }

    pub fn basis_labels(&self) -> [&'static str; 4] {
        match (self.model, self.m) {
            (SurfaceModel::SumZero, _) => ["f1", "tau*f1", "f2", "tau*f2"],
            (_, m) if m <= 2 => ["e1", "tau*e1", "e2", "tau*e2"],
            _ => ["e1", "z*e1", "e2", "z*e2"],
        }
    }

    /// The rational representation of an analytic 2×2 matrix.
    pub fn rho4(&self, x: &CycMat2) -> Result<IntMatrix> {
        if x.order() != self.m {
            return Err(Error::RingMismatch {
                left: x.order(),
                right: self.m,
            });
        }
        let mut out = IntMatrix::zeros(RANK, RANK);
        for bi in 0..2 {
            for bj in 0..2 {
                let block = x.get(bi, bj).mult_matrix();
                for (i, row) in block.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        out[(2 * bi + i, 2 * bj + j)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Action of a ring element on one factor `E`, as a 2×2 integer matrix.
    pub fn curve_action(&self, c: &CyclotomicInteger) -> Result<IntMatrix> {
        if c.order() != self.m {
            return Err(Error::RingMismatch {
                left: c.order(),
                right: self.m,
            });
        }
        let b = c.mult_matrix();
        Ok(IntMatrix::from_rows(&[b[0], b[1]]))
    }

    /// Splits a point of `B` into its two curve coordinates.
    pub fn split(&self, x: &TorsionVector) -> (TorsionVector, TorsionVector) {
        let f = x.fractions();
        (
            TorsionVector::from_fractions(&f[0..2]),
            TorsionVector::from_fractions(&f[2..4]),
        )
    }

    pub fn join(&self, x: &TorsionVector, y: &TorsionVector) -> TorsionVector {
        let mut f = x.fractions();
        f.extend(y.fractions());
        TorsionVector::from_fractions(&f)
    }

    /// Whether `x` is a nonzero point of `E × {0}` or `{0} × E`.
    pub fn is_axis_point(&self, x: &TorsionVector) -> bool {
        if x.is_zero() {
            return false;
        }
        let (a, b) = self.split(x);
        a.is_zero() || b.is_zero()
    }

    /// A point of the sum-zero surface from its three coordinates in `E³`.
    pub fn from_cube_coordinates(&self, coords: [&TorsionVector; 3]) -> Result<TorsionVector> {
        if self.model != SurfaceModel::SumZero {
            return Err(Error::IncompatibleModel {
                m: self.m,
                model: "cube coordinates on a non sum-zero surface",
            });
        }
        let total = coords[0].add(coords[1]).add(coords[2]);
        if !total.is_zero() {
            return Err(Error::Dimension("coordinates do not sum to zero".into()));
        }
        Ok(self.join(coords[0], coords[1]))
    }
}

/// A complex subtorus, represented by the saturated lattice of its tangent
/// span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subtorus {
    span: Sublattice,
}

impl Subtorus {
    pub fn new(span: Sublattice) -> Result<Self> {
        if !span.rank().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "complex subtorus needs even real rank, got {}",
                span.rank()
            )));
        }
        Ok(Self {
            span: span.saturation(),
        })
    }

    pub fn span(&self) -> &Sublattice {
        &self.span
    }

    pub fn real_rank(&self) -> usize {
        self.span.rank()
    }

    pub fn contains(&self, x: &TorsionVector) -> bool {
        self.span.subtorus_contains(x)
    }
}

/// One translate `x₀ + T` of a subtorus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocusComponent {
    pub translate: TorsionVector,
    pub subtorus: Subtorus,
}

impl LocusComponent {
    pub fn contains(&self, x: &TorsionVector) -> bool {
        self.subtorus.contains(&x.sub(&self.translate))
    }

    /// Same coset of the same subtorus.
    pub fn same_as(&self, other: &Self) -> bool {
        self.subtorus == other.subtorus && self.contains(&other.translate)
    }

    pub fn image(&self, m: &IntMatrix) -> Result<Self> {
        let span = image_lattice(&m.mul(self.subtorus.span().basis())).saturation;
        Ok(Self {
            translate: self.translate.apply(m),
            subtorus: Subtorus::new(span)?,
        })
    }
}

/// Solution set of `(1 - g)·x ≡ t`, i.e. the fixed points of `x ↦ g·x + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocus {
    solutions: Option<CosetSolutionSet>,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_none()
    }

    /// Real rank of each component; `None` when empty.
    pub fn real_rank(&self) -> Option<usize> {
        self.solutions.as_ref().map(|s| s.dimension())
    }

    pub fn solutions(&self) -> Option<&CosetSolutionSet> {
        self.solutions.as_ref()
    }

    pub fn components(&self) -> Vec<LocusComponent> {
        let Some(s) = &self.solutions else {
            return vec![];
        };
        let sub = Subtorus {
            span: s.kernel().clone(),
        };
        s.particular()
            .iter()
            .map(|t| LocusComponent {
                translate: t.clone(),
                subtorus: sub.clone(),
            })
            .collect()
    }

    pub fn contains(&self, x: &TorsionVector) -> bool {
        self.solutions.as_ref().is_some_and(|s| s.contains(x))
    }

    pub fn torsion_points(&self, n: i64) -> Vec<TorsionVector> {
        self.solutions
            .as_ref()
            .map_or_else(Vec::new, |s| s.torsion_points(n))
    }
}

/// Solutions of `A·x ≡ t` for an arbitrary square integer matrix `A`.
pub fn congruence_locus(a: &IntMatrix, t: &TorsionVector) -> Result<FixedLocus> {
    Ok(FixedLocus {
        solutions: solve_mod_lattice(a, t)?,
    })
}

/// Fixed locus of the affine map `x ↦ g·x + t`.
pub fn fixed_locus(t: &TorsionVector, g: &IntMatrix) -> Result<FixedLocus> {
    let one_minus = IntMatrix::identity(g.rows()).sub(g);
    congruence_locus(&one_minus, t)
}

/// `D_σ`, `E_σ` and their finite intersection for a pseudoreflection `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionCurves {
    pub order: u32,
    /// Identity component of the fixed locus, `im(1 + σ + … + σ^{r-1})`.
    pub fixed_curve: Subtorus,
    /// `im(1 - σ)`.
    pub moved_curve: Subtorus,
    /// `|D_σ ∩ E_σ|`.
    pub intersection_order: i64,
    /// Elementary divisors of `D_σ ∩ E_σ` (trivial factors dropped).
    pub intersection_divisors: Vec<i64>,
}

impl ReflectionCurves {
    /// Smallest `k > 0` with `k·(D_σ ∩ E_σ) = 0`.
    pub fn intersection_exponent(&self) -> i64 {
        self.intersection_divisors.iter().fold(1, |a, b| a.lcm(b))
    }
}

pub fn reflection_curves(g: &GroupElement) -> Result<ReflectionCurves> {
    if !g.is_pseudoreflection() {
        return Err(Error::NotPseudoreflection);
    }
    let n = g.mat4.rows();
    let id = IntMatrix::identity(n);
    let mut norm = IntMatrix::zeros(n, n);
    let mut power = id.clone();
    for _ in 0..g.order {
        norm = norm.add(&power);
        power = power.mul(&g.mat4);
    }
    let fixed_curve = Subtorus::new(image_lattice(&norm).saturation)?;
    let moved_curve = Subtorus::new(image_lattice(&id.sub(&g.mat4)).saturation)?;
    let x = lattice_intersection(fixed_curve.span(), moved_curve.span())?;
    Ok(ReflectionCurves {
        order: g.order,
        fixed_curve,
        moved_curve,
        intersection_order: x.finite_order,
        intersection_divisors: x.divisors,
    })
}

/// All elements of the subgroup of the torus generated by `gens`.
pub fn torsion_span(dim: usize, gens: &[TorsionVector]) -> Vec<TorsionVector> {
    let mut seen: HashSet<TorsionVector> = HashSet::new();
    let zero = TorsionVector::zero(dim);
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.add(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// The isogeny `B → A = B / Δ` with its lattice `Λ_A ⊇ Λ_B = Z⁴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientIsogeny {
    delta: Vec<TorsionVector>,
    denominator: i64,
    /// `Λ_A` has basis `basis / denominator` (columns, Hermite form).
    basis: IntMatrix,
    index: i64,
    transported: Vec<IntMatrix>,
}

impl QuotientIsogeny {
    pub fn delta(&self) -> &[TorsionVector] {
        &self.delta
    }

    /// Columns of `denominator · (basis of Λ_A)`.
    pub fn lattice_basis(&self) -> (&IntMatrix, i64) {
        (&self.basis, self.denominator)
    }

    /// `[Λ_A : Λ_B]`.
    pub fn index(&self) -> i64 {
        self.index
    }

    /// Group matrices written in the basis of `Λ_A`.
    pub fn transported(&self) -> &[IntMatrix] {
        &self.transported
    }

    /// Rewrites a `Λ_A`-basis matrix in the basis of `Λ_B`.
    pub fn transport_back(&self, g: &IntMatrix) -> IntMatrix {
        let scaled = self.basis.mul(g).mul(&self.basis.adjugate());
        let det = self.basis.det();
        IntMatrix::from_rows(
            &(0..g.rows())
                .map(|i| scaled.row(i).iter().map(|v| v / det).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }

    /// Image `π(x)` in the coordinates of `Λ_A`.
    pub fn project(&self, x: &TorsionVector) -> TorsionVector {
        let det = self.basis.det();
        let num = self.basis.adjugate().mul_vec(x.num());
        let num: Vec<i64> = num.iter().map(|v| v * self.denominator).collect();
        TorsionVector::new(det * x.den(), num)
    }
}

/// Builds `A = B / Δ` and moves the group into the basis of `Λ_A`.
///
/// With `check_axes`, a nonzero element of `Δ` on `E × {0}` or `{0} × E`
/// is reported as [`Error::AxisElement`].
pub fn quotient_by_delta(
    surface: &RealizedSurface,
    group: &[IntMatrix],
    delta_generators: &[TorsionVector],
    check_axes: bool,
) -> Result<QuotientIsogeny> {
    let delta = torsion_span(RANK, delta_generators);
    if check_axes {
        if let Some(bad) = delta.iter().find(|x| surface.is_axis_point(x)) {
            return Err(Error::AxisElement(bad.to_string()));
        }
    }
    let set: HashSet<&TorsionVector> = delta.iter().collect();
    for g in group {
        if delta_generators.iter().any(|t| !set.contains(&t.apply(g))) {
            return Err(Error::NotInvariant);
        }
    }
    let den = delta.iter().fold(1i64, |a, t| a.lcm(&t.den()));
    let mut cols: Vec<Vec<i64>> = IntMatrix::identity(RANK).scale(den).columns();
    cols.extend(delta_generators.iter().map(|t| t.scaled_to(den)));
    let basis = hnf_columns(&IntMatrix::from_columns(RANK, &cols));
    let det = basis.det();
    let index = den.pow(RANK as u32) / det;
    debug_assert_eq!(index as usize, delta.len());
    let transported = group
        .iter()
        .map(|g| g.conjugate_by(&basis)?.ok_or(Error::NotInvariant))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuotientIsogeny {
        delta,
        denominator: den,
        basis,
        index,
        transported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::all_torsion_points;

    fn half() -> TorsionVector {
        TorsionVector::from_fractions(&[(1, 2), (1, 2), (1, 2), (1, 2)])
    }

    #[test]
    fn cm_matrices_are_companions() {
        let s4 = RealizedSurface::new(4, SurfaceModel::Standard).unwrap();
        let cm = s4.cm_matrix().unwrap();
        assert_eq!(cm[(0, 1)], -1);
        assert_eq!(cm[(1, 0)], 1);
        assert_eq!(cm.mul(cm), IntMatrix::identity(4).scale(-1));

        let s3 = RealizedSurface::new(3, SurfaceModel::Standard).unwrap();
        let cm = s3.cm_matrix().unwrap();
        let id = IntMatrix::identity(4);
        // ζ² + ζ + 1 = 0
        assert!(cm.mul(cm).add(cm).add(&id).is_zero());
        assert_eq!(
            IntMatrix::from_rows(&[[cm[(0, 0)], cm[(0, 1)]], [cm[(1, 0)], cm[(1, 1)]]]),
            IntMatrix::from_rows(&[[0, -1], [1, -1]])
        );

        let s6 = RealizedSurface::new(6, SurfaceModel::Standard).unwrap();
        let cm = s6.cm_matrix().unwrap();
        // ζ² - ζ + 1 = 0
        assert!(cm.mul(cm).sub(cm).add(&id).is_zero());
    }

    #[test]
    fn incompatible_models() {
        assert!(RealizedSurface::new(5, SurfaceModel::Standard).is_err());
        assert!(RealizedSurface::new(1, SurfaceModel::Standard).is_err());
        assert!(RealizedSurface::new(4, SurfaceModel::SumZero).is_err());
    }

    #[test]
    fn rho4_is_multiplicative() {
        let s = RealizedSurface::new(6, SurfaceModel::Standard).unwrap();
        let p = |a: &str, b: &str, c: &str, d: &str| {
            CycMat2::new([
                [
                    CyclotomicInteger::parse(6, a).unwrap(),
                    CyclotomicInteger::parse(6, b).unwrap(),
                ],
                [
                    CyclotomicInteger::parse(6, c).unwrap(),
                    CyclotomicInteger::parse(6, d).unwrap(),
                ],
            ])
            .unwrap()
        };
        let x = p("1+z", "2", "-z", "3-z");
        let y = p("z", "1-2z", "0", "-1");
        let xy = x.try_mul(&y).unwrap();
        assert_eq!(
            s.rho4(&xy).unwrap(),
            s.rho4(&x).unwrap().mul(&s.rho4(&y).unwrap())
        );
    }

    #[test]
    fn sum_zero_generators() {
        let s = RealizedSurface::new(1, SurfaceModel::SumZero).unwrap();
        let cyc = CycMat2::from_ints(1, [[-1, -1], [1, 0]]).unwrap();
        let m = s.rho4(&cyc).unwrap();
        assert_eq!(m.pow(3), IntMatrix::identity(4));
        assert_eq!(m[(0, 0)], -1);
        assert_eq!(m[(1, 1)], -1);
        assert_eq!(m[(0, 2)], -1);
    }

    #[test]
    fn fixed_locus_of_minus_one_is_two_torsion() {
        let g = IntMatrix::identity(4).scale(-1);
        let fl = fixed_locus(&TorsionVector::zero(4), &g).unwrap();
        assert_eq!(fl.real_rank(), Some(0));
        assert_eq!(fl.components().len(), 16);
        assert!(fl.components().iter().all(|c| c.translate.order() <= 2));
    }

    #[test]
    fn fixed_locus_of_swap() {
        let s = RealizedSurface::new(4, SurfaceModel::Standard).unwrap();
        let swap = s.rho4(&CycMat2::swap(4).unwrap()).unwrap();
        let fl = fixed_locus(&TorsionVector::zero(4), &swap).unwrap();
        assert_eq!(fl.components().len(), 1);
        assert_eq!(fl.real_rank(), Some(2));
        let brute: Vec<_> = all_torsion_points(4, 6)
            .into_iter()
            .filter(|x| x.apply(&swap) == *x)
            .collect();
        assert_eq!(fl.torsion_points(6), brute);

        // Twisted by the diagonal 2-torsion point (t₀, t₀): x₂ = x₁ + t₀.
        let t = half();
        let fl = fixed_locus(&t, &swap).unwrap();
        let brute: Vec<_> = all_torsion_points(4, 4)
            .into_iter()
            .filter(|x| x.apply(&swap).add(&t) == *x)
            .collect();
        assert_eq!(fl.torsion_points(4), brute);
        let t0 = TorsionVector::from_fractions(&[(1, 2), (1, 2)]);
        for x in &brute {
            let (a, b) = s.split(x);
            assert_eq!(a.add(&t0), b);
        }
    }

    #[test]
    fn quotient_trivial_and_diagonal() {
        let s = RealizedSurface::new(4, SurfaceModel::Standard).unwrap();
        let swap = s.rho4(&CycMat2::swap(4).unwrap()).unwrap();
        let q = quotient_by_delta(&s, std::slice::from_ref(&swap), &[], true).unwrap();
        assert_eq!(q.index(), 1);
        assert_eq!(q.transported(), std::slice::from_ref(&swap));

        let q = quotient_by_delta(&s, std::slice::from_ref(&swap), &[half()], true).unwrap();
        assert_eq!(q.index(), 2);
        assert_eq!(q.transport_back(&q.transported()[0]), swap);
        assert!(q.project(&half()).is_zero());

        let axis = TorsionVector::from_fractions(&[(1, 2), (0, 1), (0, 1), (0, 1)]);
        assert!(matches!(
            quotient_by_delta(
                &s,
                std::slice::from_ref(&swap),
                std::slice::from_ref(&axis),
                true
            ),
            Err(Error::AxisElement(_))
        ));
        assert!(matches!(
            quotient_by_delta(&s, &[swap], &[axis], false),
            Err(Error::NotInvariant)
        ));
    }
}
