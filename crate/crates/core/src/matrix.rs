//! Dense structured matrices: the anti-bidiagonal family, the special Jacobi
//! family sharing its characteristic polynomials, and the antidiagonal unit.
//!
//! Every public index in this module is 1-based.

use std::collections::VecDeque;


use crate::error::{Error, Result};
use crate::scalar::{Scalar, TolerancePolicy};

/// Structural class a matrix was built with (or detected as).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    AntiBidiagonal,
    Jacobi,
    AntidiagonalUnit,
    General,
}

/// Strictly positive coefficients `a_1, ..., a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<S> {
    a: Vec<S>,
}

impl<S: Scalar> CoefficientVector<S> {
    pub fn new(a: Vec<S>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some((i, v)) = a.iter().enumerate().find(|(_, v)| !v.gt_zero()) {
            return Err(Error::NonPositiveEntry {
                index: i + 1,
                value: v.to_string(),
            });
        }
        Ok(CoefficientVector { a })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `a_k`, 1-based.
    pub fn get(&self, k: usize) -> &S {
        &self.a[k - 1]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.a
    }

    pub fn into_vec(self) -> Vec<S> {
        self.a
    }
}

/// Strictly increasing, nonempty set of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidIndexSet {
                reason: "index set is empty".into(),
            });
        }
        if indices[0] == 0 {
            return Err(Error::InvalidIndexSet {
                reason: "indices are 1-based".into(),
            });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet {
                reason: format!("{indices:?} is not strictly increasing"),
            });
        }
        Ok(IndexSet(indices))
    }

    /// `lo..=hi`.
    pub fn range(lo: usize, hi: usize) -> Result<Self> {
        Self::new((lo..=hi).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last > n => Err(Error::IndexOutOfRange { index: last, max: n }),
            _ => Ok(()),
        }
    }
}

/// Dense square matrix tagged with its structural class.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredMatrix<S> {
    n: usize,
    entries: Vec<S>,
    tag: Structure,
}

/// 1-based `(row, col)` holding `a_k` (with `row <= col`) in the
/// anti-bidiagonal pattern of order `n`. The mirror position holds `a_k` too.
pub fn coefficient_position(n: usize, k: usize) -> (usize, usize) {
    debug_assert!(1 <= k && k <= n);
    if (n - k).is_multiple_of(2) {
        // main antidiagonal
        let i = (n + 2 - k) / 2;
        (i, n + 1 - i)
    } else {
        // antidiagonal just below it
        let i = (n + 3 - k) / 2;
        (i, n + 2 - i)
    }
}

impl<S: Scalar> StructuredMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        StructuredMatrix {
            n,
            entries: vec![S::zero(); n * n],
            tag: Structure::General,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::SizeMismatch("matrix must have at least one row".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::SizeMismatch(format!(
                "row {} has {} entries, expected {n}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Ok(StructuredMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
            tag: Structure::General,
        })
    }

    pub fn with_tag(mut self, tag: Structure) -> Self {
        self.tag = tag;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tag(&self) -> Structure {
        self.tag
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructuredMatrix<T> {
        StructuredMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
            tag: self.tag,
        }
    }

    pub fn to_float(&self) -> StructuredMatrix<f64> {
        self.map(Scalar::to_float)
    }

    pub fn neg(&self) -> Self {
        StructuredMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x.clone()).collect(),
            tag: self.tag,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.tag = self.tag;
        t
    }

    /// Exact (bitwise for floats) symmetry.
    pub fn is_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn max_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|x| x.to_float().abs())
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of each row.
    pub fn row_norms(&self) -> Vec<f64> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.to_float().powi(2)).sum::<f64>().sqrt())
            .collect()
    }

    /// `diag(ε) M diag(ε)`.
    pub fn conjugate_signs(&self, eps: &[i8]) -> Result<Self> {
        if eps.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "{} signs for a {}x{} matrix",
                eps.len(),
                self.n,
                self.n
            )));
        }
        let mut out = self.clone();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if eps[i - 1] * eps[j - 1] < 0 {
                    out.set(i, j, -self.get(i, j).clone());
                }
            }
        }
        Ok(out)
    }

    /// Determinant of the submatrix with the given rows and columns.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<S> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows vs {} columns",
                rows.len(),
                cols.len()
            )));
        }
        rows.check_within(self.n)?;
        cols.check_within(self.n)?;
        Ok(self.minor_unchecked(rows.as_slice(), cols.as_slice()))
    }

    pub(crate) fn minor_unchecked(&self, rows: &[usize], cols: &[usize]) -> S {
        let k = rows.len();
        if k == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let mut sub = Vec::with_capacity(k * k);
        for &r in rows {
            for &c in cols {
                sub.push(self.get(r, c).clone());
            }
        }
        S::determinant(sub, k)
    }

    pub fn determinant(&self) -> S {
        S::determinant(self.entries.clone(), self.n)
    }

    /// Dense product. The result is tagged [`Structure::Jacobi`] when it is
    /// symmetric tridiagonal with positive codiagonal, with entries below
    /// `eq_abs * max_norm` treated as zero in the float backend.
    pub fn matmul(&self, other: &Self, policy: &TolerancePolicy) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.n, other.n
            )));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = S::zero();
                for k in 1..=n {
                    let (x, y) = (self.get(i, k), other.get(k, j));
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc + x.clone() * y.clone();
                    }
                }
                out.set(i, j, acc);
            }
        }
        if out.detect_jacobi(policy) {
            out.tag = Structure::Jacobi;
        }
        Ok(out)
    }

    /// Symmetric tridiagonal with strictly positive codiagonal, up to the
    /// tolerance-scaled zero threshold.
    pub fn detect_jacobi(&self, policy: &TolerancePolicy) -> bool {
        let scale = self.max_norm();
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                let v = self.get(i, j);
                let dist = i.abs_diff(j);
                if dist > 1 && !v.is_negligible(scale, policy) {
                    return false;
                }
                if dist == 1 {
                    if !v.gt_zero() || v.is_negligible(scale, policy) {
                        return false;
                    }
                    if !v.approx_eq(self.get(j, i), policy) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether every entry off the main diagonal and the two neighbouring
    /// diagonals is negligible.
    pub fn is_tridiagonal(&self, policy: &TolerancePolicy) -> bool {
        let scale = self.max_norm();
        (1..=self.n).all(|i| {
            (1..=self.n).all(|j| i.abs_diff(j) <= 1 || self.get(i, j).is_negligible(scale, policy))
        })
    }

    /// Diagonal and first superdiagonal of a tridiagonal matrix.
    pub fn tridiagonal_parts(&self) -> (Vec<S>, Vec<S>) {
        let diag = (1..=self.n).map(|i| self.get(i, i).clone()).collect();
        let off = (1..self.n).map(|i| self.get(i, i + 1).clone()).collect();
        (diag, off)
    }

    /// Principal submatrix on the 1-based range `lo..=hi`.
    pub fn principal(&self, lo: usize, hi: usize) -> Self {
        let m = hi + 1 - lo;
        let mut out = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                out.set(i + 1, j + 1, self.get(lo + i, lo + j).clone());
            }
        }
        if self.tag == Structure::Jacobi {
            out.tag = Structure::Jacobi;
        }
        out
    }
}

/// The anti-bidiagonal matrix: row 1 is `(0, ..., 0, a_n)`, row 2 is
/// `(0, ..., a_{n-2}, a_{n-1})`, the last row is `(a_n, a_{n-1}, 0, ..., 0)`.
pub fn build_antibidiagonal<S: Scalar>(a: &CoefficientVector<S>) -> StructuredMatrix<S> {
    let n = a.len();
    let mut m = StructuredMatrix::zeros(n);
    for k in 1..=n {
        let (i, j) = coefficient_position(n, k);
        m.set(i, j, a.get(k).clone());
        m.set(j, i, a.get(k).clone());
    }
    m.with_tag(Structure::AntiBidiagonal)
}

/// Tridiagonal matrix with diagonal `(a_1, 0, ..., 0)` and codiagonal
/// `(a_2, ..., a_n)`.
pub fn build_jacobi_special<S: Scalar>(a: &CoefficientVector<S>) -> StructuredMatrix<S> {
    let n = a.len();
    let mut m = StructuredMatrix::zeros(n);
    m.set(1, 1, a.get(1).clone());
    for k in 2..=n {
        m.set(k - 1, k, a.get(k).clone());
        m.set(k, k - 1, a.get(k).clone());
    }
    m.with_tag(Structure::Jacobi)
}

/// Ones on the main antidiagonal.
pub fn build_antidiagonal_unit<S: Scalar>(n: usize) -> StructuredMatrix<S> {
    let mut m = StructuredMatrix::zeros(n);
    for i in 1..=n {
        m.set(i, n + 1 - i, S::one());
    }
    m.with_tag(Structure::AntidiagonalUnit)
}

/// Outcome of [`sign_normalize`]: `s · diag(ε) M diag(ε)` equals
/// `build_antibidiagonal(a)` with `s = -1` iff `negated`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignNormalization<S> {
    pub a: CoefficientVector<S>,
    pub flips: Vec<i8>,
    pub negated: bool,
}

/// Recover the positive coefficient vector of a symmetric matrix with the
/// anti-bidiagonal sparsity pattern but arbitrary signs.
///
/// `a_1` sits on the diagonal and is untouched by sign conjugation, so its sign
/// decides the global negation. The remaining structural entries form a path
/// graph, along which `ε` is propagated from `ε_1 = +1`.
pub fn sign_normalize<S: Scalar>(
    m: &StructuredMatrix<S>,
    policy: &TolerancePolicy,
) -> Result<SignNormalization<S>> {
    let n = m.n();
    let scale = m.max_norm();
    let mut structural = vec![false; n * n];
    for k in 1..=n {
        let (i, j) = coefficient_position(n, k);
        if m.get(i, j).is_zero() {
            return Err(Error::StructuralZero { row: i, col: j });
        }
        if !m.get(i, j).approx_eq(m.get(j, i), policy) {
            return Err(Error::PatternViolation { row: j, col: i });
        }
        structural[(i - 1) * n + (j - 1)] = true;
        structural[(j - 1) * n + (i - 1)] = true;
    }
    for i in 1..=n {
        for j in 1..=n {
            if !structural[(i - 1) * n + (j - 1)] && !m.get(i, j).is_negligible(scale, policy) {
                return Err(Error::PatternViolation { row: i, col: j });
            }
        }
    }

    let (c1i, c1j) = coefficient_position(n, 1);
    let negated = m.get(c1i, c1j).lt_zero();
    let work = if negated { m.neg() } else { m.clone() };

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for k in 2..=n {
        let (i, j) = coefficient_position(n, k);
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    let mut flips = vec![0_i8; n + 1];
    flips[1] = 1;
    let mut queue = VecDeque::from([1_usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if flips[v] == 0 {
                let s: i8 = if work.get(u, v).gt_zero() { 1 } else { -1 };
                flips[v] = flips[u] * s;
                queue.push_back(v);
            }
        }
    }
    let flips: Vec<i8> = flips.into_iter().skip(1).collect();
    debug_assert!(flips.iter().all(|&e| e != 0), "pattern graph is connected");

    let normalized = work.conjugate_signs(&flips)?;
    let a = (1..=n)
        .map(|k| {
            let (i, j) = coefficient_position(n, k);
            normalized.get(i, j).clone()
        })
        .collect();
    Ok(SignNormalization {
        a: CoefficientVector::new(a)?,
        flips,
        negated,
    })
}
