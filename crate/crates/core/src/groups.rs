//! The imprimitive reflection groups `G(m,p)`, the affine groups `Δ ⋊ G`,
//! and the enumeration of admissible kernels `Δ`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycMat2, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::linalg::{all_torsion_points, IntMatrix, TorsionVector};
use crate::torus::{
    fixed_locus, reflection_curves, torsion_span, RealizedSurface, SurfaceModel, RANK,
};

/// Every `(m, p)` with `p | m`, `m ∈ {2, 3, 4, 6}`, including the excluded `(2, 2)`.
pub const ALL_CASES: [(u32, u32); 11] = [
    (2, 1),
    (2, 2),
    (3, 1),
    (4, 1),
    (6, 1),
    (3, 3),
    (4, 2),
    (4, 4),
    (6, 2),
    (6, 3),
    (6, 6),
];

/// The admissible cases (all of [`ALL_CASES`] except `(2, 2)`).
pub fn admissible_cases() -> impl Iterator<Item = (u32, u32)> {
    ALL_CASES.into_iter().filter(|&c| c != (2, 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub mat2: CycMat2,
    pub mat4: IntMatrix,
    pub order: u32,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.mat2.is_identity()
    }

    /// Non-identity and fixing a complex line: `rank_Q(g - 1) = 2`.
    pub fn is_pseudoreflection(&self) -> bool {
        !self.is_identity() && self.mat4.sub(&IntMatrix::identity(self.mat4.rows())).rank() == 2
    }

    /// `1 - g` is invertible over `Q`, so `g` has only isolated fixed points.
    pub fn has_isolated_fixed_points(&self) -> bool {
        IntMatrix::identity(self.mat4.rows()).sub(&self.mat4).det() != 0
    }
}

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    surface: RealizedSurface,
    label: Option<(u32, u32)>,
    elements: Vec<GroupElement>,
    generators: Vec<usize>,
    lookup: HashMap<CycMat2, usize>,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteMatrixGroup {
    /// Closure of `gens` under multiplication. Elements are sorted by their
    /// 2×2 matrices, except that the identity always comes first.
    pub fn generate(
        surface: RealizedSurface,
        gens: &[CycMat2],
        label: Option<(u32, u32)>,
    ) -> Result<Self> {
        let m = surface.ring();
        let id = CycMat2::identity(m)?;
        let mut seen: HashSet<CycMat2> = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        const LIMIT: usize = 10_000;
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.try_mul(g)?;
                if seen.insert(y) {
                    if seen.len() > LIMIT {
                        return Err(Error::SearchExhausted(format!(
                            "group closure exceeded {LIMIT} elements"
                        )));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut mats: Vec<CycMat2> = seen.into_iter().collect();
        mats.sort_by_key(|x| (!x.is_identity(), *x));
        let lookup: HashMap<CycMat2, usize> =
            mats.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let n = mats.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = lookup[&mats[i].try_mul(&mats[j])?];
            }
        }
        let inverses = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| table[i * n + j] == 0)
                    .expect("finite group")
            })
            .collect();
        let mut elements = Vec::with_capacity(n);
        for (i, x) in mats.iter().enumerate() {
            let mut order = 1;
            let mut cur = i;
            while cur != 0 {
                cur = table[cur * n + i];
                order += 1;
            }
            elements.push(GroupElement {
                mat2: *x,
                mat4: surface.rho4(x)?,
                order,
            });
        }
        let generators = gens.iter().map(|g| lookup[g]).collect();
        Ok(Self {
            surface,
            label,
            elements,
            generators,
            lookup,
            table,
            inverses,
        })
    }

    pub fn surface(&self) -> &RealizedSurface {
        &self.surface
    }

    /// `(m, p)` for the groups built by [`build_gmp`] and [`build_sum_zero`].
    pub fn label(&self) -> Option<(u32, u32)> {
        self.label
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, x: &CycMat2) -> Option<usize> {
        self.lookup.get(x).copied()
    }

    pub fn contains(&self, x: &CycMat2) -> bool {
        self.lookup.contains_key(x)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pseudoreflections(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].is_pseudoreflection())
            .collect()
    }

    pub fn conjugacy_class(&self, a: usize) -> BTreeSet<usize> {
        (0..self.order())
            .map(|g| self.mul(self.mul(g, a), self.inverse(g)))
            .collect()
    }

    pub fn matrices4(&self) -> Vec<IntMatrix> {
        self.elements.iter().map(|e| e.mat4.clone()).collect()
    }

    /// The same group written in another lattice basis. `mats` lists the new
    /// integer matrices in element order, e.g. from
    /// [`crate::torus::QuotientIsogeny::transported`].
    pub fn rebased(&self, mats: &[IntMatrix]) -> Result<Self> {
        if mats.len() != self.order() {
            return Err(Error::Dimension(format!(
                "expected {} matrices, got {}",
                self.order(),
                mats.len()
            )));
        }
        let mut out = self.clone();
        for (e, m) in out.elements.iter_mut().zip(mats) {
            e.mat4 = m.clone();
        }
        Ok(out)
    }
}

fn check_case(m: u32, p: u32) -> Result<()> {
    if (m, p) == (2, 2) {
        return Err(Error::ReducibleCase);
    }
    if !matches!(m, 2 | 3 | 4 | 6) {
        return Err(Error::InvalidCase {
            m,
            p,
            reason: "m must be 2, 3, 4 or 6".into(),
        });
    }
    if p == 0 || !m.is_multiple_of(p) {
        return Err(Error::InvalidCase {
            m,
            p,
            reason: "p must divide m".into(),
        });
    }
    Ok(())
}

/// `ρ = (ζ, ζ⁻¹)`, `τ = (ζ^p, 1)` and `σ = (1 2)` for `G(m, p)`.
pub fn gmp_generators(m: u32, p: u32) -> Result<[CycMat2; 3]> {
    check_case(m, p)?;
    let z = CyclotomicInteger::zeta(m)?;
    let one = CyclotomicInteger::one(m)?;
    let rho = CycMat2::diag(z, z.pow(m - 1))?;
    let tau = CycMat2::diag(z.pow(p), one)?;
    Ok([rho, tau, CycMat2::swap(m)?])
}

/// `G(m, p) = H(m, p) ⋊ S₂` acting on `E × E`.
pub fn build_gmp(m: u32, p: u32) -> Result<FiniteMatrixGroup> {
    let gens = gmp_generators(m, p)?;
    let surface = RealizedSurface::new(m, SurfaceModel::Standard)?;
    FiniteMatrixGroup::generate(surface, &gens, Some((m, p)))
}

/// `(1 2)` and `(1 2 3)` in the basis `(1,0,-1), (0,1,-1)` of the sum-zero plane.
pub fn sum_zero_generators() -> Result<[CycMat2; 2]> {
    Ok([
        CycMat2::from_ints(1, [[0, 1], [1, 0]])?,
        CycMat2::from_ints(1, [[-1, -1], [1, 0]])?,
    ])
}

/// `S₃` (labelled `G(3,3)`) or `S₃ × μ₂` (labelled `G(6,6)`) on the sum-zero surface.
pub fn build_sum_zero(with_minus_one: bool) -> Result<FiniteMatrixGroup> {
    let surface = RealizedSurface::new(1, SurfaceModel::SumZero)?;
    let mut gens = sum_zero_generators()?.to_vec();
    let label = if with_minus_one {
        gens.push(CycMat2::from_ints(1, [[-1, 0], [0, -1]])?);
        (6, 6)
    } else {
        (3, 3)
    };
    FiniteMatrixGroup::generate(surface, &gens, Some(label))
}

/// Generators of the order-16 group over `Z[i]`.
pub fn example_c_generators() -> Result<[CycMat2; 3]> {
    let p = |s: &str| CyclotomicInteger::parse(4, s);
    Ok([
        CycMat2::new([[p("-1")?, p("1+i")?], [p("0")?, p("1")?]])?,
        CycMat2::new([[p("-i")?, p("i-1")?], [p("0")?, p("i")?]])?,
        CycMat2::new([[p("-1")?, p("0")?], [p("i-1")?, p("1")?]])?,
    ])
}

/// The matrix `(1 -1; 0 i-1)` of the isogeny `E² → E²` with kernel `⟨(t₀, t₀)⟩`.
pub fn example_c_isogeny() -> Result<CycMat2> {
    let p = |s: &str| CyclotomicInteger::parse(4, s);
    CycMat2::new([[p("1")?, p("-1")?], [p("0")?, p("i-1")?]])
}

pub fn example_c_group() -> Result<FiniteMatrixGroup> {
    let surface = RealizedSurface::new(4, SurfaceModel::Standard)?;
    FiniteMatrixGroup::generate(surface, &example_c_generators()?, None)
}

/// Whether conjugation by `m` maps every generator of `group` into `group`.
pub fn conjugate_pair_check(m: &CycMat2, group: &FiniteMatrixGroup) -> Result<bool> {
    let m = m.to_ring(group.surface().ring())?;
    if m.det().is_zero() {
        return Err(Error::Singular);
    }
    for &g in group.generators() {
        match m.conjugate(&group.element(g).mat2)? {
            Some(c) if group.contains(&c) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Some `τ` with `1 - τ` surjective on the torus (no eigenvalue 1).
pub fn find_fixed_point_free_shift(group: &FiniteMatrixGroup) -> Result<&GroupElement> {
    group
        .elements()
        .iter()
        .find(|e| e.has_isolated_fixed_points())
        .ok_or_else(|| Error::SearchExhausted("every element has eigenvalue 1".into()))
}

/// A `G`-stable finite subgroup `Δ` of the torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaGroup {
    generators: Vec<TorsionVector>,
    elements: Vec<TorsionVector>,
    /// `certificate[i][j]` is the index in `elements` of the image of
    /// generator `j` under group generator `i`.
    certificate: Vec<Vec<usize>>,
}

impl DeltaGroup {
    pub fn trivial(group: &FiniteMatrixGroup) -> Self {
        Self {
            generators: vec![],
            elements: vec![TorsionVector::zero(RANK)],
            certificate: vec![vec![]; group.generators().len()],
        }
    }

    pub fn new(group: &FiniteMatrixGroup, gens: &[TorsionVector]) -> Result<Self> {
        let elements = torsion_span(RANK, gens);
        Self::from_elements(group, elements)
    }

    fn from_elements(group: &FiniteMatrixGroup, elements: Vec<TorsionVector>) -> Result<Self> {
        let pos: HashMap<&TorsionVector, usize> =
            elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let generators = minimal_generators(&elements);
        let mut certificate = Vec::new();
        for &gi in group.generators() {
            let g = &group.element(gi).mat4;
            let row = generators
                .iter()
                .map(|t| pos.get(&t.apply(g)).copied().ok_or(Error::NotInvariant))
                .collect::<Result<Vec<_>>>()?;
            certificate.push(row);
        }
        Ok(Self {
            generators,
            elements,
            certificate,
        })
    }

    pub fn generators(&self) -> &[TorsionVector] {
        &self.generators
    }

    pub fn elements(&self) -> &[TorsionVector] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: &TorsionVector) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn certificate(&self) -> &[Vec<usize>] {
        &self.certificate
    }

    /// Canonical generator list, e.g. `<(1/2,1/2,1/2,1/2)>`; `0` when trivial.
    pub fn descriptor(&self) -> String {
        if self.generators.is_empty() {
            return "0".into();
        }
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("<{}>", gens.join(";"))
    }
}

/// Greedy generating set drawn from a sorted element list.
fn minimal_generators(elements: &[TorsionVector]) -> Vec<TorsionVector> {
    let dim = elements.first().map_or(RANK, |x| x.dim());
    let mut gens: Vec<TorsionVector> = Vec::new();
    let mut span: HashSet<TorsionVector> = HashSet::from([TorsionVector::zero(dim)]);
    // Prefer elements of largest order so cyclic groups get one generator.
    let mut order: Vec<&TorsionVector> = elements.iter().collect();
    order.sort_by(|a, b| b.order().cmp(&a.order()).then(a.cmp(b)));
    for x in order {
        if span.contains(x) {
            continue;
        }
        gens.push(x.clone());
        span = torsion_span(dim, &gens).into_iter().collect();
        if span.len() == elements.len() {
            break;
        }
    }
    gens.sort();
    gens
}

/// The `G`-module generated by `base ∪ seeds`, or `None` as soon as it meets
/// a forbidden point.
fn module_closure(
    group: &FiniteMatrixGroup,
    base: &[TorsionVector],
    seeds: &[TorsionVector],
    forbidden: &dyn Fn(&TorsionVector) -> bool,
) -> Option<Vec<TorsionVector>> {
    let mut gens: Vec<TorsionVector> = Vec::new();
    for s in seeds {
        for e in group.elements() {
            gens.push(s.apply(&e.mat4));
        }
    }
    gens.sort();
    gens.dedup();
    let mut seen: HashSet<TorsionVector> = base.iter().cloned().collect();
    let mut queue: VecDeque<TorsionVector> = base.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.add(g);
            if seen.contains(&y) {
                continue;
            }
            if forbidden(&y) {
                return None;
            }
            seen.insert(y.clone());
            queue.push_back(y);
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Some(out)
}

/// All `G`-stable subgroups `Δ ⊂ B[n]` admissible for the surface model.
///
/// On `E × E`, `Δ` must avoid `E × {0}` and `{0} × E`. On the sum-zero
/// surface, `Δ` is drawn from the diagonal `{(x, x, x) : 3x = 0}`.
pub fn enumerate_invariant_deltas(group: &FiniteMatrixGroup, n: i64) -> Result<Vec<DeltaGroup>> {
    let surface = group.surface().clone();
    let forbidden: Box<dyn Fn(&TorsionVector) -> bool> = match surface.model() {
        SurfaceModel::Standard => Box::new(move |x: &TorsionVector| surface.is_axis_point(x)),
        SurfaceModel::SumZero => Box::new(|_: &TorsionVector| false),
    };
    let candidates: Vec<TorsionVector> = match group.surface().model() {
        SurfaceModel::Standard => all_torsion_points(RANK, n)
            .into_iter()
            .filter(|x| !x.is_zero())
            // cheap necessary condition: every x - g·x lies in the module
            .filter(|x| {
                group
                    .elements()
                    .iter()
                    .all(|g| !forbidden(&x.sub(&x.apply(&g.mat4))))
            })
            .filter(|x| {
                module_closure(
                    group,
                    &[TorsionVector::zero(RANK)],
                    std::slice::from_ref(x),
                    &*forbidden,
                )
                .is_some()
            })
            .collect(),
        SurfaceModel::SumZero => {
            if n % 3 != 0 {
                vec![]
            } else {
                all_torsion_points(2, 3)
                    .into_iter()
                    .filter(|x| !x.is_zero())
                    .map(|x| group.surface().join(&x, &x))
                    .collect()
            }
        }
    };
    let zero = vec![TorsionVector::zero(RANK)];
    let mut found: BTreeSet<(usize, Vec<TorsionVector>)> = BTreeSet::from([(1, zero.clone())]);
    let mut queue = VecDeque::from([zero]);
    while let Some(delta) = queue.pop_front() {
        let members: HashSet<&TorsionVector> = delta.iter().collect();
        for x in &candidates {
            if members.contains(x) {
                continue;
            }
            if let Some(bigger) =
                module_closure(group, &delta, std::slice::from_ref(x), &*forbidden)
            {
                if found.insert((bigger.len(), bigger.clone())) {
                    queue.push_back(bigger);
                }
            }
        }
    }
    found
        .into_iter()
        .map(|(_, els)| DeltaGroup::from_elements(group, els))
        .collect()
}

/// `x ↦ g·x + t` with `t ∈ Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineElement {
    pub t: TorsionVector,
    pub g: usize,
}

/// `Δ ⋊ G` acting on the torus.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    group: FiniteMatrixGroup,
    delta: DeltaGroup,
    reflections: Vec<bool>,
}

impl AffineGroup {
    pub fn new(group: FiniteMatrixGroup, delta: DeltaGroup) -> Self {
        let reflections = group
            .elements()
            .iter()
            .map(|e| e.is_pseudoreflection())
            .collect();
        Self {
            group,
            delta,
            reflections,
        }
    }

    pub fn linear_only(group: FiniteMatrixGroup) -> Self {
        let delta = DeltaGroup::trivial(&group);
        Self::new(group, delta)
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    pub fn delta(&self) -> &DeltaGroup {
        &self.delta
    }

    pub fn order(&self) -> usize {
        self.group.order() * self.delta.order()
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement {
            t: TorsionVector::zero(RANK),
            g: 0,
        }
    }

    /// Elements ordered by linear part, then translation.
    pub fn elements(&self) -> impl Iterator<Item = AffineElement> + '_ {
        (0..self.group.order()).flat_map(move |g| {
            self.delta
                .elements()
                .iter()
                .map(move |t| AffineElement { t: t.clone(), g })
        })
    }

    pub fn linear(&self, a: &AffineElement) -> &GroupElement {
        self.group.element(a.g)
    }

    /// `(t₁, g₁)·(t₂, g₂) = (t₁ + g₁t₂, g₁g₂)`.
    pub fn compose(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        AffineElement {
            t: a.t.add(&b.t.apply(&self.linear(a).mat4)),
            g: self.group.mul(a.g, b.g),
        }
    }

    pub fn inverse(&self, a: &AffineElement) -> AffineElement {
        let gi = self.group.inverse(a.g);
        AffineElement {
            t: a.t.apply(&self.group.element(gi).mat4).neg(),
            g: gi,
        }
    }

    pub fn apply(&self, a: &AffineElement, x: &TorsionVector) -> TorsionVector {
        x.apply(&self.linear(a).mat4).add(&a.t)
    }

    pub fn is_identity(&self, a: &AffineElement) -> bool {
        a.g == 0 && a.t.is_zero()
    }

    /// Linear part is a pseudoreflection of `G`.
    pub fn has_reflection_part(&self, a: &AffineElement) -> bool {
        self.reflections[a.g]
    }

    /// Geometric test: the fixed locus has a component of complex dimension one.
    pub fn is_affine_pseudoreflection(&self, a: &AffineElement) -> Result<bool> {
        let fl = fixed_locus(&a.t, &self.linear(a).mat4)?;
        Ok(fl.real_rank() == Some(2))
    }

    /// `a = (t, τ)` with `τ` a pseudoreflection and `t ∈ Δ ∩ E_τ`.
    pub fn is_reflection_by_curves(&self, a: &AffineElement) -> Result<bool> {
        let g = self.linear(a);
        if !g.is_pseudoreflection() {
            return Ok(false);
        }
        let curves = reflection_curves(g)?;
        Ok(self.delta.contains(&a.t) && curves.moved_curve.contains(&a.t))
    }

    /// Closure of `gens` under composition.
    pub fn subgroup_generated_by(&self, gens: &[AffineElement]) -> Vec<AffineElement> {
        let id = self.identity();
        let mut seen: HashSet<AffineElement> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.compose(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    pub fn describe(&self, a: &AffineElement) -> String {
        format!("({}, {})", a.t, self.linear(a).mat2)
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, g{})", self.t, self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: u32, s: &str) -> CyclotomicInteger {
        CyclotomicInteger::parse(m, s).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(build_gmp(2, 1).unwrap().order(), 8);
        assert_eq!(build_gmp(4, 2).unwrap().order(), 16);
        assert_eq!(build_gmp(3, 3).unwrap().order(), 6);
        assert!(matches!(build_gmp(2, 2), Err(Error::ReducibleCase)));
        assert!(build_gmp(5, 1).is_err());
        assert!(build_gmp(4, 3).is_err());
    }

    #[test]
    fn identity_first_and_orders_consistent() {
        let g = build_gmp(6, 2).unwrap();
        assert!(g.element(0).is_identity());
        for (i, e) in g.elements().iter().enumerate() {
            assert_eq!(e.mat4.pow(e.order), IntMatrix::identity(4), "element {i}");
            assert_eq!(g.mul(i, g.inverse(i)), 0);
        }
    }

    #[test]
    fn sum_zero_groups() {
        let s3 = build_sum_zero(false).unwrap();
        assert_eq!(s3.order(), 6);
        let g66 = build_sum_zero(true).unwrap();
        assert_eq!(g66.order(), 12);
        let minus = CycMat2::from_ints(1, [[-1, 0], [0, -1]]).unwrap();
        let idx = g66.index_of(&minus).unwrap();
        assert_eq!(g66.element(idx).mat4, IntMatrix::identity(4).scale(-1));
    }

    #[test]
    fn pseudoreflection_detection() {
        let g = build_gmp(4, 1).unwrap();
        let swap = g.index_of(&CycMat2::swap(4).unwrap()).unwrap();
        assert!(g.element(swap).is_pseudoreflection());
        let tau = CycMat2::diag(c(4, "i"), c(4, "1")).unwrap();
        assert!(g.element(g.index_of(&tau).unwrap()).is_pseudoreflection());
        let minus = CycMat2::scalar(c(4, "-1")).unwrap();
        assert!(!g.element(g.index_of(&minus).unwrap()).is_pseudoreflection());
        assert!(!g.element(0).is_pseudoreflection());
    }

    #[test]
    fn fixed_point_free_shifts() {
        for (m, p) in [(2, 1), (3, 1), (4, 2)] {
            let g = build_gmp(m, p).unwrap();
            let tau = find_fixed_point_free_shift(&g).unwrap();
            assert_ne!(IntMatrix::identity(4).sub(&tau.mat4).det(), 0);
        }
        let g = build_gmp(3, 1).unwrap();
        let z = c(3, "z");
        let scalar = g.element(g.index_of(&CycMat2::scalar(z).unwrap()).unwrap());
        assert!(scalar.has_isolated_fixed_points());

        // a group of reflections sharing a mirror has no such element
        let s = RealizedSurface::new(2, SurfaceModel::Standard).unwrap();
        let only = FiniteMatrixGroup::generate(
            s,
            &[CycMat2::from_ints(2, [[-1, 0], [0, 1]]).unwrap()],
            None,
        )
        .unwrap();
        assert!(matches!(
            find_fixed_point_free_shift(&only),
            Err(Error::SearchExhausted(_))
        ));
    }

    #[test]
    fn delta_enumeration_small_cases() {
        let g61 = build_gmp(6, 1).unwrap();
        let deltas = enumerate_invariant_deltas(&g61, 6).unwrap();
        assert_eq!(deltas.len(), 1);
        assert!(deltas[0].is_trivial());

        let g41 = build_gmp(4, 1).unwrap();
        let deltas = enumerate_invariant_deltas(&g41, 6).unwrap();
        assert_eq!(deltas.len(), 2);
        let t0 = TorsionVector::from_fractions(&[(1, 2); 4]);
        assert_eq!(deltas[1].elements(), &[TorsionVector::zero(4), t0]);
    }

    #[test]
    fn affine_composition_law() {
        let g = build_gmp(2, 1).unwrap();
        let t = TorsionVector::from_fractions(&[(1, 2), (0, 1), (1, 2), (0, 1)]);
        let delta = DeltaGroup::new(&g, std::slice::from_ref(&t)).unwrap();
        let aff = AffineGroup::new(g, delta);
        let els: Vec<_> = aff.elements().collect();
        assert_eq!(els.len(), 16);
        let x = TorsionVector::from_fractions(&[(1, 3), (1, 5), (2, 7), (1, 4)]);
        for a in &els {
            assert_eq!(aff.apply(&aff.inverse(a), &aff.apply(a, &x)), x);
            for b in &els {
                let ab = aff.compose(a, b);
                assert_eq!(aff.apply(&ab, &x), aff.apply(a, &aff.apply(b, &x)));
            }
        }
        assert_eq!(aff.subgroup_generated_by(&[]).len(), 1);
        let swap = AffineElement {
            t: TorsionVector::zero(4),
            g: aff.group().index_of(&CycMat2::swap(2).unwrap()).unwrap(),
        };
        assert_eq!(
            aff.subgroup_generated_by(std::slice::from_ref(&swap)).len(),
            2
        );
        assert!(aff.is_affine_pseudoreflection(&swap).unwrap());
    }

    #[test]
    fn non_invariant_delta_is_rejected() {
        let g = build_gmp(2, 1).unwrap();
        let t = TorsionVector::from_fractions(&[(1, 2), (0, 1), (0, 1), (1, 2)]);
        let u = TorsionVector::from_fractions(&[(0, 1), (1, 2), (1, 2), (0, 1)]);
        assert!(matches!(
            DeltaGroup::new(&g, std::slice::from_ref(&t)),
            Err(Error::NotInvariant)
        ));
        let delta = DeltaGroup::new(&g, &[t, u]).unwrap();
        assert_eq!(delta.order(), 4);
        assert_eq!(delta.generators().len(), 2);
        let t = TorsionVector::from_fractions(&[(1, 3), (0, 1), (0, 1), (1, 2)]);
        assert!(matches!(
            DeltaGroup::new(&g, &[t]),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn conjugation_checks() {
        let g21 = build_gmp(2, 1).unwrap();
        let m = CycMat2::from_ints(2, [[1, 1], [1, -1]]).unwrap();
        assert!(conjugate_pair_check(&m, &g21).unwrap());
        let g42 = build_gmp(4, 2).unwrap();
        let n = CycMat2::new([[c(4, "1"), c(4, "i")], [c(4, "i"), c(4, "1")]]).unwrap();
        assert!(conjugate_pair_check(&n, &g42).unwrap());
        let g66 = build_sum_zero(true).unwrap();
        let m = CycMat2::from_ints(1, [[-1, -2], [2, 1]]).unwrap();
        assert!(conjugate_pair_check(&m, &g66).unwrap());
        let bad = CycMat2::from_ints(1, [[2, 0], [0, 1]]).unwrap();
        assert!(!conjugate_pair_check(&bad, &g66).unwrap());
        let singular = CycMat2::from_ints(1, [[1, 1], [1, 1]]).unwrap();
        assert!(conjugate_pair_check(&singular, &g66).is_err());
    }
}
