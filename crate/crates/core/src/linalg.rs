//! Exact integer linear algebra over `Z^n` and the torus `R^n / Z^n`.
//!
//! Everything here works with `i64` entries. The matrices this crate builds
//! have entries of magnitude at most a handful, and the Smith reduction
//! below keeps intermediate values small; overflow is checked in all build
//! profiles of the workspace.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut cols = self.columns();
        cols.extend(rhs.columns());
        Self::from_columns(self.rows, &cols)
    }

    /// Vertical concatenation.
    pub fn vcat(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Self {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, range: std::ops::Range<usize>) -> Self {
        let cols: Vec<Vec<i64>> = range.map(|j| self.column(j)).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&v| v as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    /// Adjugate of a square matrix, so that `A·adj(A) = det(A)·I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[(j, i)] = s * minor.det();
            }
        }
        adj
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..self.rows)
            .filter(|&i| i != skip_r)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != skip_c)
                    .map(|j| self[(i, j)])
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        match self.det() {
            1 => Ok(self.adjugate()),
            -1 => Ok(self.adjugate().scale(-1)),
            _ => Err(Error::Singular),
        }
    }

    /// Conjugate `P⁻¹·self·P` when it is integral; `None` otherwise.
    pub fn conjugate_by(&self, p: &Self) -> Result<Option<Self>> {
        let det = p.det();
        if det == 0 {
            return Err(Error::Singular);
        }
        let scaled = p.adjugate().mul(self).mul(p);
        if scaled.data.iter().any(|v| v % det != 0) {
            return Ok(None);
        }
        Ok(Some(Self {
            rows: scaled.rows,
            cols: scaled.cols,
            data: scaled.data.iter().map(|v| v / det).collect(),
        }))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn divisors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .take_while(|&v| v != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

struct SmithState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithState {
    // row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: i64) {
        for c in 0..self.a.cols() {
            let t = self.a[(j, c)];
            self.a[(i, c)] += q * t;
        }
        for c in 0..self.u.cols() {
            let t = self.u[(j, c)];
            self.u[(i, c)] += q * t;
        }
        for r in 0..self.u_inv.rows() {
            let t = self.u_inv[(r, i)];
            self.u_inv[(r, j)] -= q * t;
        }
    }

    // col_j += q * col_i
    fn add_col(&mut self, j: usize, i: usize, q: i64) {
        for r in 0..self.a.rows() {
            let t = self.a[(r, i)];
            self.a[(r, j)] += q * t;
        }
        for r in 0..self.v.rows() {
            let t = self.v[(r, i)];
            self.v[(r, j)] += q * t;
        }
        for c in 0..self.v_inv.cols() {
            let t = self.v_inv[(j, c)];
            self.v_inv[(i, c)] -= q * t;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let (x, y) = (self.a[(i, c)], self.a[(j, c)]);
            self.a[(i, c)] = y;
            self.a[(j, c)] = x;
        }
        for c in 0..self.u.cols() {
            let (x, y) = (self.u[(i, c)], self.u[(j, c)]);
            self.u[(i, c)] = y;
            self.u[(j, c)] = x;
        }
        for r in 0..self.u_inv.rows() {
            let (x, y) = (self.u_inv[(r, i)], self.u_inv[(r, j)]);
            self.u_inv[(r, i)] = y;
            self.u_inv[(r, j)] = x;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let (x, y) = (self.a[(r, i)], self.a[(r, j)]);
            self.a[(r, i)] = y;
            self.a[(r, j)] = x;
        }
        for r in 0..self.v.rows() {
            let (x, y) = (self.v[(r, i)], self.v[(r, j)]);
            self.v[(r, i)] = y;
            self.v[(r, j)] = x;
        }
        for c in 0..self.v_inv.cols() {
            let (x, y) = (self.v_inv[(i, c)], self.v_inv[(j, c)]);
            self.v_inv[(i, c)] = y;
            self.v_inv[(j, c)] = x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            self.a[(i, c)] = -self.a[(i, c)];
        }
        for c in 0..self.u.cols() {
            self.u[(i, c)] = -self.u[(i, c)];
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, i)] = -self.u_inv[(r, i)];
        }
    }

    /// Smallest-magnitude nonzero entry of the trailing block, ties broken by
    /// lowest (row, col).
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form with transformation matrices and their inverses.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (a.rows(), a.cols());
    let mut st = SmithState {
        a: a.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    for k in 0..r.min(c) {
        while let Some((pi, pj)) = st.pivot(k) {
            st.swap_rows(k, pi);
            st.swap_cols(k, pj);
            let p = st.a[(k, k)];
            let mut clean = true;
            for i in k + 1..r {
                let q = Integer::div_floor(&st.a[(i, k)], &p);
                if q != 0 {
                    st.add_row(i, k, -q);
                }
                clean &= st.a[(i, k)] == 0;
            }
            for j in k + 1..c {
                let q = Integer::div_floor(&st.a[(k, j)], &p);
                if q != 0 {
                    st.add_col(j, k, -q);
                }
                clean &= st.a[(k, j)] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce d_k | every remaining entry.
            let offender = (k + 1..r)
                .flat_map(|i| (k + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| st.a[(i, j)] % p != 0);
            match offender {
                Some((i, _)) => st.add_row(k, i, 1),
                None => break,
            }
        }
        if k < r && k < c && st.a[(k, k)] < 0 {
            st.negate_row(k);
        }
    }
    SmithDecomposition {
        u: st.u,
        u_inv: st.u_inv,
        d: st.a,
        v: st.v,
        v_inv: st.v_inv,
    }
}

/// Column Hermite normal form of the lattice spanned by the columns of `a`.
///
/// The result has one column per basis vector (zero columns dropped). Column
/// `j` has its leading nonzero entry (its pivot) in row `p_j` with
/// `p_0 < p_1 < …`, the pivot is positive, and entries of earlier columns in
/// row `p_j` are reduced into `[0, pivot)`.
pub fn hnf_columns(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let mut cols: Vec<Vec<i64>> = a
        .columns()
        .into_iter()
        .filter(|c| c.iter().any(|&v| v != 0))
        .collect();
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut pivots = Vec::new();
    for row in 0..n {
        // Euclid on the entries of `row` across the remaining columns.
        loop {
            let nz: Vec<usize> = (0..cols.len()).filter(|&j| cols[j][row] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let &jmin = nz.iter().min_by_key(|&&j| (cols[j][row].abs(), j)).unwrap();
            let pivot = cols[jmin][row];
            for &j in &nz {
                if j == jmin {
                    continue;
                }
                let q = Integer::div_floor(&cols[j][row], &pivot);
                let pc = cols[jmin].clone();
                for (x, y) in cols[j].iter_mut().zip(&pc) {
                    *x -= q * y;
                }
            }
        }
        if let Some(j) = (0..cols.len()).find(|&j| cols[j][row] != 0) {
            let mut col = cols.remove(j);
            if col[row] < 0 {
                col.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(col);
            pivots.push(row);
        }
        cols.retain(|c| c.iter().any(|&v| v != 0));
    }
    // Reduce earlier columns modulo later pivots.
    for k in 0..out.len() {
        let (row, p) = (pivots[k], out[k][pivots[k]]);
        let pc = out[k].clone();
        for col in out.iter_mut().take(k) {
            let q = Integer::div_floor(&col[row], &p);
            if q != 0 {
                for (x, y) in col.iter_mut().zip(&pc) {
                    *x -= q * y;
                }
            }
        }
    }
    IntMatrix::from_columns(n, &out)
}

/// A sublattice of `Z^n` stored by its column Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn from_generators(ambient: usize, gens: &IntMatrix) -> Self {
        assert_eq!(gens.rows(), ambient);
        Self {
            ambient,
            basis: hnf_columns(gens),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: IntMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(ambient, &IntMatrix::identity(ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `Z^n ∩ span_R(self)`.
    pub fn saturation(&self) -> Self {
        if self.rank() == 0 {
            return self.clone();
        }
        let snf = smith_normal_form(&self.basis);
        let r = snf.rank();
        Self::from_generators(self.ambient, &snf.u_inv.select_columns(0..r))
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Index of `self` in its saturation.
    pub fn saturation_index(&self) -> i64 {
        if self.rank() == 0 {
            return 1;
        }
        smith_normal_form(&self.basis).divisors().iter().product()
    }

    /// Whether the torsion point `t` lies on the subtorus `span_R(self) + Z^n`.
    pub fn subtorus_contains(&self, t: &TorsionVector) -> bool {
        assert_eq!(t.dim(), self.ambient);
        let sat = self.saturation();
        if sat.rank() == 0 {
            return t.is_zero();
        }
        // Extend the saturated basis to a unimodular one; the coordinates
        // transverse to the span must be integral.
        let snf = smith_normal_form(&sat.basis);
        let r = snf.rank();
        let coords = t.apply(&snf.u);
        coords.num[r..].iter().all(|&v| v == 0)
    }
}

/// Point of `(1/N)Z^n / Z^n`; canonical with entries in `[0, N)` and `N`
/// minimal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsionVector {
    den: i64,
    num: Vec<i64>,
}

impl TorsionVector {
    pub fn new(den: i64, num: Vec<i64>) -> Self {
        assert!(den > 0, "denominator must be positive");
        let mut t = Self { den, num };
        t.canonicalize();
        t
    }

    pub fn zero(n: usize) -> Self {
        Self {
            den: 1,
            num: vec![0; n],
        }
    }

    /// Reduces a rational vector `(p_i / q_i)` modulo `Z^n`.
    pub fn from_fractions(fracs: &[(i64, i64)]) -> Self {
        let den = fracs.iter().fold(1i64, |acc, &(_, q)| acc.lcm(&q));
        let num = fracs.iter().map(|&(p, q)| p * (den / q)).collect();
        Self::new(den, num)
    }

    fn canonicalize(&mut self) {
        for v in self.num.iter_mut() {
            *v = v.rem_euclid(self.den);
        }
        let g = self.num.iter().fold(self.den, |acc, &v| acc.gcd(&v));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|v| *v /= g);
        }
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn num(&self) -> &[i64] {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.den == 1
    }

    /// Additive order in the torus.
    pub fn order(&self) -> i64 {
        self.den
    }

    /// Numerators over the common denominator `n` (which must be a multiple
    /// of the own denominator).
    pub fn scaled_to(&self, n: i64) -> Vec<i64> {
        assert_eq!(n % self.den, 0);
        let k = n / self.den;
        self.num.iter().map(|v| v * k).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        let den = self.den.lcm(&rhs.den);
        let a = self.scaled_to(den);
        let b = rhs.scaled_to(den);
        Self::new(den, a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.den, self.num.iter().map(|v| -v).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::new(self.den, self.num.iter().map(|v| v * k).collect())
    }

    /// Image under an integer matrix acting on the torus.
    pub fn apply(&self, m: &IntMatrix) -> Self {
        Self::new(self.den, m.mul_vec(&self.num))
    }

    /// Coordinates as `(numerator, denominator)` pairs in lowest terms.
    pub fn fractions(&self) -> Vec<(i64, i64)> {
        self.num
            .iter()
            .map(|&v| {
                let g = v.gcd(&self.den);
                (v / g, self.den / g)
            })
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse torsion vector '{s}'"));
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut fracs = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            let (p, q) = match part.split_once('/') {
                Some((p, q)) => (
                    p.trim().parse::<i64>().map_err(|_| bad())?,
                    q.trim().parse::<i64>().map_err(|_| bad())?,
                ),
                None => (part.parse::<i64>().map_err(|_| bad())?, 1),
            };
            if q <= 0 {
                return Err(bad());
            }
            fracs.push((p, q));
        }
        Ok(Self::from_fractions(&fracs))
    }
}

impl Ord for TorsionVector {
    /// Lexicographic on the coordinates read as rationals in `[0, 1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let o = (*a as i128 * other.den as i128).cmp(&(*b as i128 * self.den as i128));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.num.len().cmp(&other.num.len())
    }
}

impl PartialOrd for TorsionVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TorsionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, q)) in self.fractions().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if q == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}/{q}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for TorsionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Solutions of `A·x ≡ t (mod Z^m)` on the torus `R^n / Z^n`: finitely many
/// translates of one subtorus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSolutionSet {
    particular: Vec<TorsionVector>,
    kernel: Sublattice,
    // Columns of `v` beyond `rank` span the kernel; `v_inv` maps x to the
    // adapted coordinates used for membership tests.
    rank: usize,
    v_inv: IntMatrix,
}

impl CosetSolutionSet {
    pub fn particular(&self) -> &[TorsionVector] {
        &self.particular
    }

    /// Saturated lattice spanning the tangent directions of every component.
    pub fn kernel(&self) -> &Sublattice {
        &self.kernel
    }

    pub fn dimension(&self) -> usize {
        self.kernel.rank()
    }

    pub fn component_count(&self) -> usize {
        self.particular.len()
    }

    pub fn contains(&self, x: &TorsionVector) -> bool {
        let y = x.apply(&self.v_inv);
        let head = |v: &TorsionVector| -> Vec<(i64, i64)> { v.fractions()[..self.rank].to_vec() };
        let target = head(&y);
        self.particular
            .iter()
            .any(|p| head(&p.apply(&self.v_inv)) == target)
    }

    /// All points of the solution set killed by `n`.
    pub fn torsion_points(&self, n: i64) -> Vec<TorsionVector> {
        let dim = self.v_inv.rows();
        let k = self.kernel.rank();
        let kernel_basis = self.kernel.basis();
        let mut out = Vec::new();
        for p in &self.particular {
            if n % p.den() != 0 {
                continue;
            }
            let base = p.scaled_to(n);
            let mut idx = vec![0i64; k];
            loop {
                let mut v = base.clone();
                for (c, &j) in idx.iter().enumerate() {
                    for (i, slot) in v.iter_mut().enumerate() {
                        *slot += j * kernel_basis[(i, c)];
                    }
                }
                out.push(TorsionVector::new(n, v));
                // odometer over (Z/n)^k
                let mut pos = 0;
                while pos < k {
                    idx[pos] += 1;
                    if idx[pos] < n {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
        debug_assert!(out.iter().all(|t| t.dim() == dim));
        out.sort();
        out.dedup();
        out
    }
}

/// All `x ∈ R^n / Z^n` with `A·x ≡ t (mod Z^m)`, or `None` when there are none.
pub fn solve_mod_lattice(a: &IntMatrix, t: &TorsionVector) -> Result<Option<CosetSolutionSet>> {
    if t.dim() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has {} coordinates, matrix has {} rows",
            t.dim(),
            a.rows()
        )));
    }
    let n = a.cols();
    let snf = smith_normal_form(a);
    let divisors = snf.divisors();
    let r = divisors.len();
    let rhs = t.apply(&snf.u);
    if rhs.num[r..].iter().any(|&v| v != 0) {
        return Ok(None);
    }
    // d_i y_i ≡ rhs_i: y_i = (rhs_i + k) / d_i for k in 0..d_i.
    let den = rhs.den;
    let mut choices: Vec<Vec<(i64, i64)>> = Vec::with_capacity(r);
    for (i, &d) in divisors.iter().enumerate() {
        let c = rhs.num[i];
        choices.push((0..d).map(|k| (c + k * den, d * den)).collect());
    }
    let mut particular = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let mut fr: Vec<(i64, i64)> = (0..r).map(|i| choices[i][idx[i]]).collect();
        fr.resize(n, (0, 1));
        let y = TorsionVector::from_fractions(&fr);
        particular.push(y.apply(&snf.v));
        let mut pos = 0;
        while pos < r {
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos >= r {
            break;
        }
    }
    particular.sort();
    let kernel = Sublattice::from_generators(n, &snf.v.select_columns(r..n));
    Ok(Some(CosetSolutionSet {
        particular,
        kernel,
        rank: r,
        v_inv: snf.v_inv,
    }))
}

/// Image `A·Z^n` together with its saturation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageLattice {
    pub lattice: Sublattice,
    pub saturation: Sublattice,
}

pub fn image_lattice(a: &IntMatrix) -> ImageLattice {
    let lattice = Sublattice::from_generators(a.rows(), a);
    let saturation = lattice.saturation();
    ImageLattice {
        lattice,
        saturation,
    }
}

/// Saturated integer kernel `{x ∈ Z^n : A·x = 0}`.
pub fn kernel_lattice(a: &IntMatrix) -> Sublattice {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    Sublattice::from_generators(a.cols(), &snf.v.select_columns(r..a.cols()))
}

/// Intersection of two subtori `T_i = span_R(S_i) / S_i` of `R^n / Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIntersection {
    /// `Z^n ∩ span_R(S1) ∩ span_R(S2)`, the lattice of the identity component.
    pub span: Sublattice,
    /// Number of connected components of `T_1 ∩ T_2`.
    pub finite_order: i64,
    /// Elementary divisors of the component group (entries equal to 1 dropped).
    pub divisors: Vec<i64>,
}

pub fn lattice_intersection(s1: &Sublattice, s2: &Sublattice) -> Result<LatticeIntersection> {
    if s1.ambient() != s2.ambient() {
        return Err(Error::Dimension(
            "sublattices in different ambient ranks".into(),
        ));
    }
    let n = s1.ambient();
    let (p1, p2) = (s1.saturation(), s2.saturation());
    let joined = p1.basis().hcat(p2.basis());
    if joined.cols() == 0 {
        return Ok(LatticeIntersection {
            span: Sublattice::zero(n),
            finite_order: 1,
            divisors: vec![],
        });
    }
    // Span intersection: kernel of [P1 | -P2] pushed through P1.
    let diff = p1.basis().hcat(&p2.basis().scale(-1));
    let ker = kernel_lattice(&diff);
    let span = if ker.rank() == 0 || p1.rank() == 0 {
        Sublattice::zero(n)
    } else {
        let head = IntMatrix::from_rows(
            &(0..p1.rank())
                .map(|i| ker.basis().row(i).to_vec())
                .collect::<Vec<_>>(),
        );
        Sublattice::from_generators(n, &p1.basis().mul(&head)).saturation()
    };
    let divisors: Vec<i64> = smith_normal_form(&joined)
        .divisors()
        .into_iter()
        .filter(|&d| d != 1)
        .collect();
    Ok(LatticeIntersection {
        span,
        finite_order: divisors.iter().product(),
        divisors,
    })
}

/// Every point of `(1/N)Z^n / Z^n` in canonical order.
pub fn all_torsion_points(n: usize, den: i64) -> Vec<TorsionVector> {
    let total = (den as usize).pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0i64; n];
    for _ in 0..total {
        out.push(TorsionVector::new(den, idx.clone()));
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < den {
                break;
            }
            *slot = 0;
        }
    }
    out
}
