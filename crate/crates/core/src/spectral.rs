//! Independent verification machinery: a Sturm-count bisection eigensolver for
//! symmetric tridiagonal matrices, the strict interlacing predicate, and an
//! exhaustive sign-regularity classifier over all minors.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, StructuredMatrix};
use crate::poly::{RootList, MAX_BISECTION_STEPS};
use crate::scalar::{Scalar, TolerancePolicy};

/// Upper bound on the number of minors a single enumeration may touch.
pub const MINOR_LIMIT: u128 = 10_000_000;

fn pivot_guard(scale: f64) -> f64 {
    (1e-300 * scale).max(f64::MIN_POSITIVE)
}

/// Number of eigenvalues strictly below `x`, read off the signs of the
/// shifted LDLᵀ pivots `d_i = (diag_i - x) - off_{i-1}^2 / d_{i-1}`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let scale = diag
        .iter()
        .chain(off)
        .map(|v| v.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let guard = pivot_guard(scale);
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / d };
        d = (diag[i] - x) - coupling;
        if d.abs() < guard {
            d = -guard;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin enclosure `[lo, hi]` of the spectrum.
pub fn gershgorin_bounds(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn eigensolve_tridiagonal<S: Scalar>(
    t: &StructuredMatrix<S>,
    policy: &TolerancePolicy,
) -> Result<RootList<f64>> {
    if S::is_exact() {
        return Err(Error::BackendUnsupported {
            operation: "eigensolve_tridiagonal",
        });
    }
    let tf = t.to_float();
    let n = tf.n();
    let scale = tf.max_norm();
    for i in 1..=n {
        for j in 1..=n {
            let v = *tf.get(i, j);
            if i.abs_diff(j) > 1 && !v.is_negligible(scale, policy) {
                return Err(Error::NotTridiagonal { row: i, col: j });
            }
            if i.abs_diff(j) == 1 && !v.approx_eq(tf.get(j, i), policy) {
                return Err(Error::NotTridiagonal { row: i, col: j });
            }
        }
    }
    let (diag, off) = tf.tridiagonal_parts();
    Ok(eigenvalues_from_parts(&diag, &off, policy.root_tol))
}

/// Sturm bisection on raw tridiagonal data.
pub fn eigenvalues_from_parts(diag: &[f64], off: &[f64], root_tol: f64) -> RootList<f64> {
    let n = diag.len();
    if n == 0 {
        return RootList::from_sorted_unchecked(Vec::new());
    }
    let (glo, ghi) = gershgorin_bounds(diag, off);
    let pad = 2.0 * f64::EPSILON * glo.abs().max(ghi.abs()) + root_tol;
    let (glo, ghi) = (glo - pad, ghi + pad);
    let mut eigs = Vec::with_capacity(n);
    for k in 0..n {
        let (mut lo, mut hi) = (glo, ghi);
        for _ in 0..MAX_BISECTION_STEPS {
            if hi - lo <= root_tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(diag, off, mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        eigs.push(0.5 * (lo + hi));
    }
    eigs.sort_by(f64::total_cmp);
    RootList::from_sorted_unchecked(eigs)
}

/// Strict interlacing `outer_1 < inner_1 < outer_2 < ... < inner_k < outer_{k+1}`.
pub fn interlaces<S: Scalar>(inner: &[S], outer: &[S]) -> Result<bool> {
    if outer.len() != inner.len() + 1 {
        return Err(Error::SizeMismatch(format!(
            "interlacing needs {} outer values for {} inner values, got {}",
            inner.len() + 1,
            inner.len(),
            outer.len()
        )));
    }
    Ok(inner
        .iter()
        .enumerate()
        .all(|(i, x)| outer[i] < *x && *x < outer[i + 1]))
}

/// Signs `ε_1, ..., ε_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureSequence(Vec<i8>);

impl SignatureSequence {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::SizeMismatch(format!("{eps:?} contains entries other than ±1")));
        }
        Ok(SignatureSequence(eps))
    }

    /// All `+1`: total nonnegativity.
    pub fn positive(d: usize) -> Self {
        SignatureSequence(vec![1; d])
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Signature of the antidiagonal unit (and of every positive anti-bidiagonal
/// matrix): `ε_j = (-1)^⌊j/2⌋`, i.e. `1, -1, -1, 1, 1, -1, -1, ...`.
pub fn signature_sequence(n: usize) -> SignatureSequence {
    SignatureSequence((1..=n).map(|j| if (j / 2) % 2 == 0 { 1 } else { -1 }).collect())
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of square minors of orders `1..=d` of an `n x n` matrix.
pub fn minor_count(n: usize, d: usize) -> u128 {
    (1..=d).map(|j| binomial(n, j).pow(2)).sum()
}

fn guard_minor_count(count: u128) -> Result<()> {
    if count > MINOR_LIMIT {
        return Err(Error::TooLarge {
            count,
            limit: MINOR_LIMIT,
        });
    }
    Ok(())
}

/// All `k`-subsets of `1..=n`, colexicographic order.
pub fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // colex successor: bump the lowest position that can move up
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { cur[i + 1] } else { n + 1 };
            if cur[i] + 1 < limit {
                break;
            }
            i += 1;
        }
        if i == k {
            return out;
        }
        cur[i] += 1;
        for (j, slot) in cur.iter_mut().enumerate().take(i) {
            *slot = j + 1;
        }
    }
}

/// Product of the `j` largest row norms, a Hadamard-type scale for order-`j` minors.
pub fn minor_scale(row_norms: &[f64], j: usize) -> f64 {
    let mut sorted = row_norms.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted.iter().take(j).product::<f64>().max(f64::MIN_POSITIVE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    /// Stop enumerating an order at its first violation.
    FailFast,
    /// Enumerate every minor and keep the worst witness.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Value of the minor itself (not multiplied by the expected sign).
    pub value: f64,
    pub exact: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderVerdict {
    pub order: usize,
    pub expected_sign: i8,
    pub conforming: bool,
    pub strict: bool,
    pub principal_conforming: bool,
    pub principal_strict: bool,
    pub minors_checked: usize,
    /// Minor minimising `ε_j · minor`; when `conforming` fails it is a violation.
    pub worst: Option<MinorWitness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignRegularityReport {
    pub n: usize,
    pub orders: Vec<OrderVerdict>,
    /// Largest `d` such that orders `1..=d` all conform.
    pub achieved_class: usize,
    /// Every checked order conforms strictly.
    pub strict: bool,
    /// Largest `d` such that principal minors of orders `1..=d` conform.
    pub principal_class: usize,
    /// Smallest `m` with `(A²)^m` totally positive, when searched for.
    pub class_plus: Option<usize>,
}

impl SignRegularityReport {
    pub fn conforms(&self) -> bool {
        self.orders.iter().all(|o| o.conforming)
    }
}

/// Check every minor of orders `1..=d` against the signature `sig`.
///
/// A float minor conforms when `ε_j · minor >= -eq_abs · scale(j)` and is
/// strict when `ε_j · minor > eq_abs · scale(j)`, with `scale(j)` the product
/// of the `j` largest row norms. Exact scalars compare against zero.
pub fn classify_sign_regular<S: Scalar>(
    m: &StructuredMatrix<S>,
    d: usize,
    sig: &SignatureSequence,
    policy: &TolerancePolicy,
    mode: ReportMode,
) -> Result<SignRegularityReport> {
    let n = m.n();
    if d > n {
        return Err(Error::SizeMismatch(format!("class {d} exceeds dimension {n}")));
    }
    if sig.len() < d {
        return Err(Error::SizeMismatch(format!(
            "signature has {} entries, class {d} requested",
            sig.len()
        )));
    }
    guard_minor_count(minor_count(n, d))?;
    let norms = m.row_norms();
    let mut orders = Vec::with_capacity(d);
    for j in 1..=d {
        let eps = sig.as_slice()[j - 1];
        let tol = policy.eq_abs * minor_scale(&norms, j);
        let subsets = subsets_colex(n, j);
        let judge = |v: &S| -> (bool, bool) {
            let signed = if eps > 0 { v.clone() } else { -v.clone() };
            if S::is_exact() {
                (!signed.lt_zero(), signed.gt_zero())
            } else {
                let x = signed.to_float();
                (x >= -tol, x > tol)
            }
        };

        let mut conforming = true;
        let mut strict = true;
        let mut checked = 0;
        let mut worst: Option<(S, MinorWitness)> = None;
        'outer: for cols in &subsets {
            for rows in &subsets {
                let v = m.minor_unchecked(rows, cols);
                checked += 1;
                let (ok, ok_strict) = judge(&v);
                strict &= ok_strict;
                let signed = if eps > 0 { v.clone() } else { -v.clone() };
                if worst.as_ref().is_none_or(|(w, _)| signed < *w) {
                    worst = Some((
                        signed,
                        MinorWitness {
                            rows: rows.clone(),
                            cols: cols.clone(),
                            value: v.to_float(),
                            exact: v.to_string(),
                        },
                    ));
                }
                if !ok {
                    conforming = false;
                    if mode == ReportMode::FailFast {
                        break 'outer;
                    }
                }
            }
        }

        let mut principal_conforming = true;
        let mut principal_strict = true;
        for idx in &subsets {
            let (ok, ok_strict) = judge(&m.minor_unchecked(idx, idx));
            principal_conforming &= ok;
            principal_strict &= ok_strict;
        }

        orders.push(OrderVerdict {
            order: j,
            expected_sign: eps,
            conforming,
            strict: strict && conforming,
            principal_conforming,
            principal_strict: principal_strict && principal_conforming,
            minors_checked: checked,
            worst: worst.map(|(_, w)| w),
        });
    }
    let achieved_class = orders.iter().take_while(|o| o.conforming).count();
    let principal_class = orders.iter().take_while(|o| o.principal_conforming).count();
    let strict = orders.iter().all(|o| o.strict);
    Ok(SignRegularityReport {
        n,
        orders,
        achieved_class,
        strict,
        principal_class,
        class_plus: None,
    })
}

/// Every minor strictly positive (beyond the scaled tolerance for floats).
pub fn is_totally_positive<S: Scalar>(
    m: &StructuredMatrix<S>,
    policy: &TolerancePolicy,
) -> Result<bool> {
    let n = m.n();
    guard_minor_count(minor_count(n, n))?;
    let norms = m.row_norms();
    for j in 1..=n {
        let tol = policy.eq_abs * minor_scale(&norms, j);
        let subsets = subsets_colex(n, j);
        for cols in &subsets {
            for rows in &subsets {
                let v = m.minor_unchecked(rows, cols);
                let positive = if S::is_exact() {
                    v.gt_zero()
                } else {
                    v.to_float() > tol
                };
                if !positive {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Smallest `m <= max_power` such that `(A²)^m` is totally positive.
///
/// In the float backend an anti-bidiagonal `A` with nonnegative entries is
/// handled through `A² = CᵀC` with `C = JA` upper bidiagonal: every minor of
/// `(A²)^m` is then a subtraction-free sum of products of entries, so its sign
/// is exact. Other matrices go through explicit powers and scaled minors.
pub fn check_class_plus<S: Scalar>(
    a: &StructuredMatrix<S>,
    max_power: usize,
    policy: &TolerancePolicy,
) -> Result<Option<usize>> {
    guard_minor_count(minor_count(a.n(), a.n()))?;
    if !a.is_symmetric() {
        return Err(Error::SizeMismatch("matrix must be symmetric".into()));
    }
    if max_power == 0 {
        return Ok(None);
    }
    if !S::is_exact() {
        if let Some((diag, sup)) = bidiagonal_factor(a) {
            return Ok(class_plus_by_compounds(&diag, &sup, max_power));
        }
    }
    let square = a.matmul(a, policy)?;
    let mut power = square.clone();
    for m in 1..=max_power {
        if is_totally_positive(&power, policy)? {
            return Ok(Some(m));
        }
        if m < max_power {
            power = power.matmul(&square, policy)?;
        }
    }
    Ok(None)
}

/// Diagonal and superdiagonal of `C = JA` when `A` has the anti-bidiagonal
/// pattern and no negative entry.
fn bidiagonal_factor<S: Scalar>(a: &StructuredMatrix<S>) -> Option<(Vec<S>, Vec<S>)> {
    let n = a.n();
    for i in 1..=n {
        for j in 1..=n {
            let v = a.get(i, j);
            let on_pattern = i + j == n + 1 || i + j == n + 2;
            if v.lt_zero() || (!on_pattern && !v.is_zero()) {
                return None;
            }
        }
    }
    let diag = (1..=n).map(|i| a.get(n + 1 - i, i).clone()).collect();
    let sup = (1..n).map(|i| a.get(n + 1 - i, i + 1).clone()).collect();
    Some((diag, sup))
}

/// `k`-th compound of the upper bidiagonal matrix with the given diagonals.
/// A minor `C[α, β]` is `∏ C[α_r, β_r]` when every `β_r ∈ {α_r, α_r + 1}` and
/// zero otherwise.
fn bidiagonal_compound<S: Scalar>(diag: &[S], sup: &[S], subsets: &[Vec<usize>]) -> Vec<Vec<S>> {
    let entry = |i: usize, j: usize| -> S {
        if j == i {
            diag[i - 1].clone()
        } else if j == i + 1 {
            sup[i - 1].clone()
        } else {
            S::zero()
        }
    };
    subsets
        .iter()
        .map(|rows| {
            subsets
                .iter()
                .map(|cols| {
                    rows.iter()
                        .zip(cols)
                        .fold(S::one(), |acc, (&i, &j)| if acc.is_zero() { acc } else { acc * entry(i, j) })
                })
                .collect()
        })
        .collect()
}

fn dense_mul<S: Scalar>(x: &[Vec<S>], y: &[Vec<S>]) -> Vec<Vec<S>> {
    let n = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(y)
                        .filter(|(v, _)| !v.is_zero())
                        .fold(S::zero(), |acc, (v, yr)| acc + v.clone() * yr[j].clone())
                })
                .collect()
        })
        .collect()
}

/// Smallest `m` such that every compound of `(CᵀC)^m` is entrywise positive.
fn class_plus_by_compounds<S: Scalar>(diag: &[S], sup: &[S], max_power: usize) -> Option<usize> {
    let n = diag.len();
    let mut needed = 1;
    for k in 1..=n {
        let subsets = subsets_colex(n, k);
        let c = bidiagonal_compound(diag, sup, &subsets);
        let ct: Vec<Vec<S>> = (0..c.len())
            .map(|i| c.iter().map(|row| row[i].clone()).collect())
            .collect();
        let square = dense_mul(&ct, &c);
        let mut power = square.clone();
        let mut m = 1;
        while !power.iter().flatten().all(|v| v.gt_zero()) {
            if m == max_power {
                return None;
            }
            power = dense_mul(&power, &square);
            m += 1;
        }
        needed = needed.max(m);
    }
    Some(needed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyBinet<S> {
    pub lhs: S,
    pub rhs: S,
    pub equal: bool,
}

/// Compare `minor(XY, rows, cols)` with `Σ_β minor(X, rows, β) · minor(Y, β, cols)`.
pub fn cauchy_binet_check<S: Scalar>(
    x: &StructuredMatrix<S>,
    y: &StructuredMatrix<S>,
    rows: &IndexSet,
    cols: &IndexSet,
    policy: &TolerancePolicy,
) -> Result<CauchyBinet<S>> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch(format!(
            "factors are {0}x{0} and {1}x{1}",
            x.n(),
            y.n()
        )));
    }
    let n = x.n();
    let k = rows.len();
    guard_minor_count(binomial(n, k))?;
    let product = x.matmul(y, policy)?;
    let lhs = product.minor(rows, cols)?;
    let mut rhs = S::zero();
    let mut magnitude = 0.0_f64;
    for beta in subsets_colex(n, k) {
        let left = x.minor_unchecked(rows.as_slice(), &beta);
        if left.is_zero() {
            continue;
        }
        let right = y.minor_unchecked(&beta, cols.as_slice());
        let term = left * right;
        magnitude += term.to_float().abs();
        rhs = rhs + term;
    }
    let equal = if S::is_exact() {
        lhs == rhs
    } else {
        (lhs.clone() - rhs.clone()).to_float().abs()
            <= policy.eq_abs * (1.0 + magnitude) + policy.eq_rel * lhs.to_float().abs()
    };
    Ok(CauchyBinet { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_antibidiagonal, build_antidiagonal_unit, CoefficientVector};
    use crate::scalar::{ratio, Rational};

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn worked_a() -> StructuredMatrix<f64> {
        build_antibidiagonal(&CoefficientVector::new(vec![2.0, 2f64.sqrt(), 3f64.sqrt()]).unwrap())
    }

    #[test]
    fn eigensolve_worked_jacobi() {
        let (s2, s3) = (2f64.sqrt(), 3f64.sqrt());
        let b = StructuredMatrix::from_rows(vec![
            vec![2.0, s2, 0.0],
            vec![s2, 0.0, s3],
            vec![0.0, s3, 0.0],
        ])
        .unwrap();
        let eig = eigensolve_tridiagonal(&b, &tol()).unwrap();
        for (e, x) in eig.as_slice().iter().zip([-2.0, 1.0, 3.0]) {
            assert!((e - x).abs() < 1e-12, "{e} vs {x}");
        }
    }

    #[test]
    fn eigensolve_small_cases() {
        let one = StructuredMatrix::from_rows(vec![vec![4.5]]).unwrap();
        let e = eigensolve_tridiagonal(&one, &tol()).unwrap();
        assert!((e.as_slice()[0] - 4.5).abs() <= tol().root_tol);

        let s2 = 2f64.sqrt();
        let two = StructuredMatrix::from_rows(vec![vec![2.0, s2], vec![s2, 3.0]]).unwrap();
        let e = eigensolve_tridiagonal(&two, &tol()).unwrap();
        assert!((e.as_slice()[0] - 1.0).abs() < 1e-12);
        assert!((e.as_slice()[1] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn eigensolve_rejects_dense_and_rational() {
        assert_eq!(
            eigensolve_tridiagonal(&worked_a(), &tol()).unwrap_err(),
            Error::NotTridiagonal { row: 1, col: 3 }
        );
        let r: StructuredMatrix<Rational> = StructuredMatrix::identity(2);
        assert_eq!(
            eigensolve_tridiagonal(&r, &tol()).unwrap_err().name(),
            "BackendUnsupported"
        );
    }

    #[test]
    fn sturm_count_bounds() {
        let d = [1.0, 3.0];
        let e = [-1.0];
        let (lo, hi) = gershgorin_bounds(&d, &e);
        assert_eq!(sturm_count(&d, &e, lo), 0);
        assert_eq!(sturm_count(&d, &e, hi + 1e-9), 2);
        assert_eq!(sturm_count(&d, &e, 1.0), 1);
        // exact zero pivot at x = 0 for [[0,1],[1,0]]
        assert_eq!(sturm_count(&[0.0, 0.0], &[1.0], 0.0), 1);
    }

    #[test]
    fn interlacing_examples() {
        let s3 = 3f64.sqrt();
        assert!(interlaces(&[-s3, s3], &[-2.0, 1.0, 3.0]).unwrap());
        assert!(interlaces(&[0.0], &[-s3, s3]).unwrap());
        assert!(!interlaces(&[2.0], &[-1.0, 1.0]).unwrap());
        assert!(!interlaces(&[1.0], &[1.0, 2.0]).unwrap());
        assert_eq!(
            interlaces(&[1.0], &[0.0]).unwrap_err().name(),
            "SizeMismatch"
        );
    }

    #[test]
    fn signature_patterns() {
        assert_eq!(signature_sequence(5).as_slice(), &[1, -1, -1, 1, 1]);
        assert_eq!(signature_sequence(1).as_slice(), &[1]);
        assert_eq!(signature_sequence(4).as_slice(), &[1, -1, -1, 1]);
    }

    #[test]
    fn colex_order() {
        assert_eq!(
            subsets_colex(4, 2),
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 4],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(subsets_colex(3, 3), vec![vec![1, 2, 3]]);
        for n in 1..=7 {
            for k in 1..=n {
                assert_eq!(subsets_colex(n, k).len() as u128, binomial(n, k));
            }
        }
    }

    #[test]
    fn antidiagonal_unit_is_sign_regular() {
        let j: StructuredMatrix<Rational> = build_antidiagonal_unit(3);
        let rep =
            classify_sign_regular(&j, 3, &signature_sequence(3), &tol(), ReportMode::Full).unwrap();
        assert!(rep.conforms());
        assert_eq!(rep.achieved_class, 3);
        assert!(!rep.strict);
        let det = &rep.orders[2].worst.as_ref().unwrap().exact;
        assert_eq!(det, "-1");
    }

    #[test]
    fn worked_antibidiagonal_is_sign_regular() {
        let rep = classify_sign_regular(
            &worked_a(),
            3,
            &signature_sequence(3),
            &tol(),
            ReportMode::Full,
        )
        .unwrap();
        assert!(rep.conforms());
        assert_eq!(rep.principal_class, 3);
    }

    #[test]
    fn identity_is_totally_nonnegative_not_strict() {
        let id: StructuredMatrix<Rational> = StructuredMatrix::identity(3);
        let rep = classify_sign_regular(
            &id,
            3,
            &SignatureSequence::positive(3),
            &tol(),
            ReportMode::Full,
        )
        .unwrap();
        assert!(rep.conforms());
        assert!(!rep.strict);
    }

    #[test]
    fn violation_reports_witness() {
        // order-2 minor [[1,2],[3,4]] = -2 < 0 breaks total nonnegativity
        let m = StructuredMatrix::from_rows(vec![
            vec![ratio(1, 1), ratio(2, 1)],
            vec![ratio(3, 1), ratio(4, 1)],
        ])
        .unwrap();
        let rep = classify_sign_regular(
            &m,
            2,
            &SignatureSequence::positive(2),
            &tol(),
            ReportMode::FailFast,
        )
        .unwrap();
        assert_eq!(rep.achieved_class, 1);
        let w = rep.orders[1].worst.as_ref().unwrap();
        assert_eq!((w.rows.clone(), w.cols.clone()), (vec![1, 2], vec![1, 2]));
        assert_eq!(w.exact, "-2");
    }

    #[test]
    fn class_plus_worked_and_edge_cases() {
        let m = check_class_plus(&worked_a(), 4, &tol()).unwrap();
        assert!(matches!(m, Some(k) if k <= 2), "{m:?}");
        assert_eq!(m, Some(2));
        let one = build_antibidiagonal(&CoefficientVector::new(vec![0.7]).unwrap());
        assert_eq!(check_class_plus(&one, 3, &tol()).unwrap(), Some(1));
        assert_eq!(check_class_plus(&worked_a(), 0, &tol()).unwrap(), None);
    }

    #[test]
    fn too_large_guard() {
        let big: StructuredMatrix<f64> = StructuredMatrix::identity(30);
        assert_eq!(
            classify_sign_regular(
                &big,
                30,
                &signature_sequence(30),
                &tol(),
                ReportMode::FailFast
            )
            .unwrap_err()
            .name(),
            "TooLarge"
        );
    }

    #[test]
    fn cauchy_binet_small() {
        let j: StructuredMatrix<f64> = build_antidiagonal_unit(3);
        let b = j.matmul(&worked_a(), &tol()).unwrap();
        let r = IndexSet::new(vec![1, 2]).unwrap();
        let cb = cauchy_binet_check(&j, &b, &r, &r, &tol()).unwrap();
        assert!(cb.equal);
        // J·(J·A) = A, so the left side is A[{1,2}] = 0
        assert!(cb.lhs.abs() < 1e-12);

        let single = IndexSet::new(vec![2]).unwrap();
        let col = IndexSet::new(vec![3]).unwrap();
        let cb = cauchy_binet_check(&j, &b, &single, &col, &tol()).unwrap();
        assert!(cb.equal);
        assert!((cb.lhs - 2f64.sqrt()).abs() < 1e-15);
    }
}
