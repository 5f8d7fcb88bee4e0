//! Scalar backends and the tolerance policy.
//!
//! Two backends implement [`Scalar`]: `f64` and [`Rational`] (an
//! arbitrary-precision fraction kept in lowest terms with the sign on the
//! numerator). A pipeline picks one backend through its type parameter, so a
//! single solve can never mix the two.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Float64,
    Rational,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Float64 => f.write_str("float64"),
            Backend::Rational => f.write_str("rational"),
        }
    }
}

/// Comparison and root-finding tolerances for the float backend. The rational
/// backend ignores them and compares exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    pub eq_abs: f64,
    pub eq_rel: f64,
    /// Bisection stops once a bracket is at most this wide.
    pub root_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            eq_abs: 1e-10,
            eq_rel: 1e-10,
            root_tol: 1e-13,
        }
    }
}

impl TolerancePolicy {
    pub fn new(eq_abs: f64, eq_rel: f64, root_tol: f64) -> Result<Self> {
        let policy = TolerancePolicy {
            eq_abs,
            eq_rel,
            root_tol,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eq_abs", self.eq_abs),
            ("eq_rel", self.eq_rel),
            ("root_tol", self.root_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Minimum separation between two roots before they count as duplicates.
    pub fn root_separation(&self) -> f64 {
        10.0 * self.root_tol
    }
}

/// Field element used throughout the crate.
pub trait Scalar:
    Signed + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    /// Exact conversion for the rational backend; `None` for non-finite input.
    fn from_f64_exact(v: f64) -> Option<Self>;

    fn to_float(&self) -> f64;

    /// Square root. The rational backend defers square roots to reporting time
    /// and always returns `None`.
    fn sqrt(&self) -> Option<Self>;

    /// `|x - y| <= eq_abs + eq_rel * max(|x|, |y|)` for floats; exact equality
    /// for rationals.
    fn approx_eq(&self, other: &Self, policy: &TolerancePolicy) -> bool;

    /// Whether `self` is indistinguishable from zero relative to `scale`
    /// (`|x| <= eq_abs * scale` for floats, `x == 0` for rationals).
    fn is_negligible(&self, scale: f64, policy: &TolerancePolicy) -> bool;

    /// Determinant of a dense row-major `n x n` matrix.
    fn determinant(entries: Vec<Self>, n: usize) -> Self;

    /// Parse a decimal literal (`-1.25`, `3e-2`) or a fraction `p/q`.
    fn parse_literal(text: &str) -> Result<Self>;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Rational
    }

    /// Strictly greater than zero (`Signed::is_positive` accepts `+0.0`).
    fn gt_zero(&self) -> bool {
        *self > Self::zero()
    }

    /// Strictly less than zero.
    fn lt_zero(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float64;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64_exact(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_float(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn approx_eq(&self, other: &Self, policy: &TolerancePolicy) -> bool {
        let diff = (self - other).abs();
        diff <= policy.eq_abs + policy.eq_rel * self.abs().max(other.abs())
    }

    fn is_negligible(&self, scale: f64, policy: &TolerancePolicy) -> bool {
        self.abs() <= policy.eq_abs * scale
    }

    fn determinant(entries: Vec<Self>, n: usize) -> Self {
        det_partial_pivot(entries, n)
    }

    fn parse_literal(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| Error::Parse(t.to_string()))?;
            let q: f64 = q.trim().parse().map_err(|_| Error::Parse(t.to_string()))?;
            let v = p / q;
            return v.is_finite().then_some(v).ok_or(Error::Parse(t.to_string()));
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::Parse(t.to_string())),
        }
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_f64_exact(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }

    fn to_float(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt(&self) -> Option<Self> {
        None
    }

    fn approx_eq(&self, other: &Self, _policy: &TolerancePolicy) -> bool {
        self == other
    }

    fn is_negligible(&self, _scale: f64, _policy: &TolerancePolicy) -> bool {
        self.is_zero()
    }

    fn determinant(entries: Vec<Self>, n: usize) -> Self {
        det_bareiss_rational(entries, n)
    }

    fn parse_literal(text: &str) -> Result<Self> {
        parse_rational(text)
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det_partial_pivot(mut a: Vec<f64>, n: usize) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        let pivot = a[pivot_row * n + col];
        if pivot == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        det *= pivot;
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            if factor != 0.0 {
                for k in col + 1..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
            }
        }
    }
    det
}

/// Clears denominators row by row, runs fraction-free Bareiss elimination over
/// the integers, then divides the row scalings back out.
fn det_bareiss_rational(entries: Vec<Rational>, n: usize) -> Rational {
    debug_assert_eq!(entries.len(), n * n);
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<BigInt> = Vec::with_capacity(n * n);
    for row in entries.chunks(n) {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for x in row {
            m.push(x.numer() * (&lcm / x.denom()));
        }
        scale *= lcm;
    }
    let det = bareiss_integer(m, n);
    Rational::new(det, scale)
}

/// Fraction-free Bareiss determinant of an integer matrix.
pub(crate) fn bareiss_integer(mut m: Vec<BigInt>, n: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k * n + k] * &m[i * n + j] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    sign * &m[n * n - 1]
}

/// Parse `p/q`, an integer, or a decimal literal with optional exponent into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(t.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    let shift = exponent as i64 - frac_part.len() as i64;
    if shift.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10);
    let mut value = if shift >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-shift) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Shorthand for building an exact rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Sign of a scalar as -1, 0 or +1.
pub fn sign_of<S: Scalar>(x: &S) -> i8 {
    if x.gt_zero() {
        1
    } else if x.lt_zero() {
        -1
    } else {
        0
    }
}
