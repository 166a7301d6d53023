//! Exact arithmetic in `Z[ζ_m]` for `m ∈ {1, 2, 3, 4, 6}`.
//!
//! These are exactly the rings `Z[ζ_m]` of rank at most two over `Z`, so every
//! element is stored as `a + b·ζ_m` in the basis `{1, ζ_m}`. For `m ∈ {1, 2}`
//! the root of unity is rational and `b` is always zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orders of roots of unity whose ring of integers has rank ≤ 2.
pub const SUPPORTED_ORDERS: [u32; 5] = [1, 2, 3, 4, 6];

/// Coefficients `(c0, c1)` of `ζ_m² = c0 + c1·ζ_m`.
fn square_rule(m: u32) -> (i64, i64) {
    match m {
        3 => (-1, -1),
        4 => (-1, 0),
        6 => (-1, 1),
        _ => unreachable!("square rule requested for rational order {m}"),
    }
}

fn check_order(m: u32) -> Result<()> {
    if SUPPORTED_ORDERS.contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclotomicInteger {
    m: u32,
    a: i64,
    b: i64,
}

impl CyclotomicInteger {
    /// Builds `a + b·ζ_m`, folding `b` into `a` when `ζ_m` is rational.
    pub fn new(m: u32, a: i64, b: i64) -> Result<Self> {
        check_order(m)?;
        Ok(match m {
            1 => Self { m, a: a + b, b: 0 },
            2 => Self { m, a: a - b, b: 0 },
            _ => Self { m, a, b },
        })
    }

    pub fn integer(m: u32, a: i64) -> Result<Self> {
        Self::new(m, a, 0)
    }

    pub fn zero(m: u32) -> Result<Self> {
        Self::new(m, 0, 0)
    }

    pub fn one(m: u32) -> Result<Self> {
        Self::new(m, 1, 0)
    }

    /// The primitive root `ζ_m = exp(2πi/m)`.
    pub fn zeta(m: u32) -> Result<Self> {
        Self::new(m, 0, 1)
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// Coefficient of `1`.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Coefficient of `ζ_m`.
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.m,
                right: other.m,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self {
            m: self.m,
            a: self.a + other.a,
            b: self.b + other.b,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-*other)
    }

    /// Product reduced with the minimal polynomial of `ζ_m`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.m <= 2 {
            return Ok(Self {
                m: self.m,
                a: self.a * other.a,
                b: 0,
            });
        }
        let (c0, c1) = square_rule(self.m);
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        let bd = b * d;
        Ok(Self {
            m: self.m,
            a: a * c + bd * c0,
            b: a * d + b * c + bd * c1,
        })
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = *self;
        let mut acc = Self {
            m: self.m,
            a: 1,
            b: 0,
        };
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Complex conjugate; `ζ_m ↦ ζ_m⁻¹`.
    pub fn conj(&self) -> Self {
        if self.m <= 2 {
            return *self;
        }
        let (_, c1) = square_rule(self.m);
        Self {
            m: self.m,
            a: self.a + self.b * c1,
            b: -self.b,
        }
    }

    /// Field norm `x·x̄`, a non-negative integer.
    pub fn norm(&self) -> i64 {
        let n = *self * self.conj();
        debug_assert_eq!(n.b, 0);
        n.a
    }

    /// Exact quotient `self / d`, or `None` when it does not lie in the ring.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        self.same_ring(d)?;
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let n = d.norm();
        let num = *self * d.conj();
        if num.a % n != 0 || num.b % n != 0 {
            return Ok(None);
        }
        Ok(Some(Self {
            m: self.m,
            a: num.a / n,
            b: num.b / n,
        }))
    }

    /// Integer matrix of multiplication by `self` on the basis `(1, ζ_m)`.
    /// Column `j` is the image of the `j`-th basis vector.
    pub fn mult_matrix(&self) -> [[i64; 2]; 2] {
        if self.m <= 2 {
            return [[self.a, 0], [0, self.a]];
        }
        let (c0, c1) = square_rule(self.m);
        [[self.a, self.b * c0], [self.b, self.a + self.b * c1]]
    }

    /// Re-expresses an element of `Z[ζ_3] = Z[ζ_6]` in the other basis.
    /// Rational elements move freely between any two supported rings.
    pub fn to_ring(&self, target: u32) -> Result<Self> {
        check_order(target)?;
        if self.b == 0 {
            return Self::new(target, self.a, 0);
        }
        match (self.m, target) {
            (s, t) if s == t => Ok(*self),
            // ζ_3 = ζ_6 - 1
            (3, 6) => Self::new(6, self.a - self.b, self.b),
            // ζ_6 = 1 + ζ_3
            (6, 3) => Self::new(3, self.a + self.b, self.b),
            (s, t) => Err(Error::RingMismatch { left: s, right: t }),
        }
    }

    /// Parses `a`, `bz`, `a+bz`, `a-z`, ... where `z` stands for `ζ_m`.
    /// For `m = 4`, `i` is accepted as a synonym of `z`.
    pub fn parse(m: u32, s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let cleaned = if m == 4 {
            cleaned.replace('i', "z")
        } else {
            cleaned
        };
        if cleaned.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        let bad = || Error::Parse(format!("cannot parse '{s}' as an element of Z[zeta_{m}]"));
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && idx > start {
                terms.push(&cleaned[start..idx]);
                start = idx;
            }
        }
        terms.push(&cleaned[start..]);
        let (mut a, mut b) = (0i64, 0i64);
        for term in terms {
            if let Some(coeff) = term.strip_suffix('z') {
                let c = match coeff.trim_start_matches('+') {
                    "" => 1,
                    "-" => -1,
                    c => c.trim_end_matches('*').parse::<i64>().map_err(|_| bad())?,
                };
                b += c;
            } else {
                a += term
                    .trim_start_matches('+')
                    .parse::<i64>()
                    .map_err(|_| bad())?;
            }
        }
        Self::new(m, a, b)
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "z"),
            (0, -1) => write!(f, "-z"),
            (0, b) => write!(f, "{b}z"),
            (a, 1) => write!(f, "{a}+z"),
            (a, -1) => write!(f, "{a}-z"),
            (a, b) if b > 0 => write!(f, "{a}+{b}z"),
            (a, b) => write!(f, "{a}{b}z"),
        }
    }
}

impl Neg for CyclotomicInteger {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            m: self.m,
            a: -self.a,
            b: -self.b,
        }
    }
}

// The operator forms panic on mismatched rings; use the `try_*` methods when
// operands come from user input.
impl Add for CyclotomicInteger {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("ring mismatch in addition")
    }
}

impl Sub for CyclotomicInteger {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for CyclotomicInteger {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("ring mismatch in multiplication")
    }
}

/// Value of `ζ_m + ζ_m⁻¹ = 2cos(2π/m)` when it is a rational integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootTrace {
    Integer(i64),
    NonInteger,
}

/// `ζ_m + ζ_m⁻¹` for any `m ≥ 1`.
///
/// The value is an integer exactly for `m ∈ {1, 2, 3, 4, 6}`; for those orders
/// it is computed in the ring itself, every other order reports
/// [`RootTrace::NonInteger`].
pub fn root_trace(m: u32) -> RootTrace {
    match CyclotomicInteger::zeta(m) {
        Ok(z) => {
            let t = z + z.conj();
            debug_assert_eq!(t.b(), 0);
            RootTrace::Integer(t.a())
        }
        Err(_) => RootTrace::NonInteger,
    }
}

/// The roots of unity `μ_m = {ζ_m^k : 0 ≤ k < m}` in order of increasing `k`.
pub fn unit_group(m: u32) -> Result<Vec<CyclotomicInteger>> {
    let z = CyclotomicInteger::zeta(m)?;
    let mut out = vec![CyclotomicInteger::one(m)?];
    let mut cur = z;
    while !cur.is_one() {
        out.push(cur);
        cur = cur * z;
    }
    Ok(out)
}

/// A 2×2 matrix over `Z[ζ_m]`, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycMat2 {
    pub entries: [[CyclotomicInteger; 2]; 2],
}

impl CycMat2 {
    pub fn new(entries: [[CyclotomicInteger; 2]; 2]) -> Result<Self> {
        let m = entries[0][0].order();
        if entries.iter().flatten().any(|x| x.order() != m) {
            return Err(Error::RingMismatch {
                left: m,
                right: entries
                    .iter()
                    .flatten()
                    .find(|x| x.order() != m)
                    .map(|x| x.order())
                    .unwrap_or(m),
            });
        }
        Ok(Self { entries })
    }

    /// Matrix with rational integer entries viewed in `Z[ζ_m]`.
    pub fn from_ints(m: u32, rows: [[i64; 2]; 2]) -> Result<Self> {
        let e = |v: i64| CyclotomicInteger::integer(m, v);
        Ok(Self {
            entries: [
                [e(rows[0][0])?, e(rows[0][1])?],
                [e(rows[1][0])?, e(rows[1][1])?],
            ],
        })
    }

    pub fn diag(x: CyclotomicInteger, y: CyclotomicInteger) -> Result<Self> {
        let z = CyclotomicInteger::zero(x.order())?;
        Self::new([[x, z], [z, y]])
    }

    pub fn identity(m: u32) -> Result<Self> {
        Self::from_ints(m, [[1, 0], [0, 1]])
    }

    pub fn swap(m: u32) -> Result<Self> {
        Self::from_ints(m, [[0, 1], [1, 0]])
    }

    pub fn scalar(x: CyclotomicInteger) -> Result<Self> {
        Self::diag(x, x)
    }

    pub fn order(&self) -> u32 {
        self.entries[0][0].order()
    }

    pub fn get(&self, i: usize, j: usize) -> CyclotomicInteger {
        self.entries[i][j]
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.entries;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p = self.entries[i][0].try_mul(&rhs.entries[0][j])?;
                let q = self.entries[i][1].try_mul(&rhs.entries[1][j])?;
                *cell = p.try_add(&q)?;
            }
        }
        Ok(Self { entries: out })
    }

    pub fn det(&self) -> CyclotomicInteger {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    /// Adjugate, so that `M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        let e = &self.entries;
        Self {
            entries: [[e[1][1], -e[0][1]], [-e[1][0], e[0][0]]],
        }
    }

    /// Exact inverse over the ring, if the determinant is a unit.
    pub fn inverse(&self) -> Result<Option<Self>> {
        self.divide_by(&self.det(), &self.adjugate())
    }

    /// `M·X·M⁻¹`, or `None` when the result is not integral over `Z[ζ_m]`.
    pub fn conjugate(&self, x: &Self) -> Result<Option<Self>> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let scaled = self.try_mul(x)?.try_mul(&self.adjugate())?;
        self.divide_by(&det, &scaled)
    }

    fn divide_by(&self, d: &CyclotomicInteger, m: &Self) -> Result<Option<Self>> {
        let mut out = m.entries;
        for cell in out.iter_mut().flatten() {
            match cell.div_exact(d)? {
                Some(q) => *cell = q,
                None => return Ok(None),
            }
        }
        Ok(Some(Self { entries: out }))
    }

    pub fn is_identity(&self) -> bool {
        let e = &self.entries;
        e[0][0].is_one() && e[1][1].is_one() && e[0][1].is_zero() && e[1][0].is_zero()
    }

    pub fn neg(&self) -> Self {
        let e = &self.entries;
        Self {
            entries: [[-e[0][0], -e[0][1]], [-e[1][0], -e[1][1]]],
        }
    }

    pub fn to_ring(&self, target: u32) -> Result<Self> {
        let e = &self.entries;
        Ok(Self {
            entries: [
                [e[0][0].to_ring(target)?, e[0][1].to_ring(target)?],
                [e[1][0].to_ring(target)?, e[1][1].to_ring(target)?],
            ],
        })
    }
}

impl fmt::Display for CycMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: u32, a: i64, b: i64) -> CyclotomicInteger {
        CyclotomicInteger::new(m, a, b).unwrap()
    }

    #[test]
    fn zeta_squares_follow_minimal_polynomials() {
        let z4 = CyclotomicInteger::zeta(4).unwrap();
        assert_eq!(z4 * z4, c(4, -1, 0));
        let z3 = CyclotomicInteger::zeta(3).unwrap();
        assert_eq!(z3 * z3, c(3, -1, -1));
        let z6 = CyclotomicInteger::zeta(6).unwrap();
        assert_eq!(z6 * z6, c(6, -1, 1));
    }

    #[test]
    fn rational_orders_are_canonical() {
        assert_eq!(CyclotomicInteger::zeta(2).unwrap(), c(2, -1, 0));
        assert_eq!(CyclotomicInteger::zeta(1).unwrap(), c(1, 1, 0));
        assert_eq!(c(2, 3, 5).b(), 0);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let x = c(3, 1, 1);
        let y = c(4, 1, 1);
        assert!(matches!(
            x.try_mul(&y),
            Err(Error::RingMismatch { left: 3, right: 4 })
        ));
        assert!(CyclotomicInteger::new(5, 0, 1).is_err());
    }

    #[test]
    fn trace_of_small_orders() {
        assert_eq!(root_trace(6), RootTrace::Integer(1));
        assert_eq!(root_trace(4), RootTrace::Integer(0));
        assert_eq!(root_trace(3), RootTrace::Integer(-1));
        assert_eq!(root_trace(2), RootTrace::Integer(-2));
        assert_eq!(root_trace(1), RootTrace::Integer(2));
        assert_eq!(root_trace(5), RootTrace::NonInteger);
    }

    #[test]
    fn unit_groups() {
        let mu4 = unit_group(4).unwrap();
        assert_eq!(mu4, vec![c(4, 1, 0), c(4, 0, 1), c(4, -1, 0), c(4, 0, -1)]);
        assert_eq!(unit_group(2).unwrap(), vec![c(2, 1, 0), c(2, -1, 0)]);
        let mu6 = unit_group(6).unwrap();
        assert_eq!(mu6.len(), 6);
        assert!(mu6.contains(&c(6, -1, 1)));
        assert!(unit_group(5).is_err());
    }

    #[test]
    fn mult_matrix_is_companion_for_zeta() {
        assert_eq!(
            CyclotomicInteger::zeta(4).unwrap().mult_matrix(),
            [[0, -1], [1, 0]]
        );
        assert_eq!(
            CyclotomicInteger::zeta(3).unwrap().mult_matrix(),
            [[0, -1], [1, -1]]
        );
        assert_eq!(
            CyclotomicInteger::zeta(6).unwrap().mult_matrix(),
            [[0, -1], [1, 1]]
        );
    }

    #[test]
    fn norms_and_division() {
        assert_eq!(c(4, 1, 1).norm(), 2);
        assert_eq!(c(3, 1, -1).norm(), 3);
        assert_eq!(c(6, 1, -1).norm(), 1);
        let two = c(4, 2, 0);
        let one_plus_i = c(4, 1, 1);
        assert_eq!(two.div_exact(&one_plus_i).unwrap(), Some(c(4, 1, -1)));
        assert_eq!(c(4, 1, 0).div_exact(&one_plus_i).unwrap(), None);
    }

    #[test]
    fn ring_conversion_between_three_and_six() {
        let z3 = CyclotomicInteger::zeta(3).unwrap();
        let z6 = CyclotomicInteger::zeta(6).unwrap();
        assert_eq!(z3.to_ring(6).unwrap(), z6 * z6);
        assert_eq!(z6.to_ring(3).unwrap(), -(z3 * z3));
        for x in unit_group(6).unwrap() {
            assert_eq!(x.to_ring(3).unwrap().to_ring(6).unwrap(), x);
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(CyclotomicInteger::parse(4, "1+i").unwrap(), c(4, 1, 1));
        assert_eq!(CyclotomicInteger::parse(4, "i-1").unwrap(), c(4, -1, 1));
        assert_eq!(CyclotomicInteger::parse(3, "-z").unwrap(), c(3, 0, -1));
        assert_eq!(CyclotomicInteger::parse(6, "2 - 3z").unwrap(), c(6, 2, -3));
        assert!(CyclotomicInteger::parse(3, "x").is_err());
        for s in ["-1", "z", "-z", "3z", "1+z", "1-z", "2+3z", "2-3z"] {
            assert_eq!(CyclotomicInteger::parse(3, s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn conjugation_by_matrix() {
        // (1 1; 1 -1) conjugates diag(1,-1) to the swap.
        let m = CycMat2::from_ints(2, [[1, 1], [1, -1]]).unwrap();
        let d = CycMat2::from_ints(2, [[1, 0], [0, -1]]).unwrap();
        assert_eq!(m.conjugate(&d).unwrap(), Some(CycMat2::swap(2).unwrap()));
        assert!(CycMat2::from_ints(2, [[1, 1], [1, 1]])
            .unwrap()
            .conjugate(&d)
            .is_err());
    }
}
