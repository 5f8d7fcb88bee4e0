//! Monic polynomials, elementary symmetric functions and bracketed root
//! extraction.

use std::fmt;


use crate::error::{Error, Result};
use crate::scalar::{Scalar, TolerancePolicy};

/// Hard cap on bisection steps per root.
pub const MAX_BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    /// Parity of the monomial `λ^degree`.
    pub fn of_degree(degree: usize) -> Parity {
        if degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn forbids(self, k: usize) -> bool {
        match self {
            Parity::Even => k % 2 == 1,
            Parity::Odd => k.is_multiple_of(2),
            Parity::None => false,
        }
    }
}

/// Dense monic polynomial, coefficients stored from the constant term up to
/// the leading 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly<S> {
    coeffs: Vec<S>,
    parity: Parity,
}

impl<S: Scalar> MonicPoly<S> {
    /// The constant polynomial 1.
    pub fn one() -> Self {
        MonicPoly {
            coeffs: vec![S::one()],
            parity: Parity::Even,
        }
    }

    /// The polynomial `λ`.
    pub fn lambda() -> Self {
        MonicPoly {
            coeffs: vec![S::zero(), S::one()],
            parity: Parity::Odd,
        }
    }

    /// Build from low-to-high coefficients. The last one must be exactly 1;
    /// parity is detected from exact zeros.
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self> {
        match coeffs.last() {
            Some(lead) if lead.is_one() => {}
            Some(lead) => {
                return Err(Error::SizeMismatch(format!(
                    "leading coefficient must be 1, got {lead}"
                )))
            }
            None => return Err(Error::SizeMismatch("empty coefficient list".into())),
        }
        let mut p = MonicPoly {
            coeffs,
            parity: Parity::None,
        };
        p.parity = p.detect_parity();
        Ok(p)
    }

    /// Monic polynomial with the given roots. Coefficient `k` is
    /// `(-1)^(n-k) σ_{n-k}(roots)`.
    pub fn from_roots(roots: &[S], policy: &TolerancePolicy) -> Result<Self> {
        check_distinct(roots, policy)?;
        let mut coeffs = vec![S::one()];
        for r in roots {
            // multiply by (λ - r)
            let mut next = vec![S::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - r.clone() * c.clone();
            }
            coeffs = next;
        }
        let mut p = MonicPoly {
            coeffs,
            parity: Parity::None,
        };
        p.parity = p.detect_parity();
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `λ^k`; zero above the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    fn detect_parity(&self) -> Parity {
        let d = self.degree();
        let target = Parity::of_degree(d);
        let clean = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| !target.forbids(k) || c.is_zero());
        if clean {
            target
        } else {
            Parity::None
        }
    }

    /// Zero the coefficients that the parity of `λ^degree` forbids and tag the
    /// polynomial accordingly. Returns the largest magnitude that was removed.
    pub fn enforce_parity(&mut self) -> f64 {
        let target = Parity::of_degree(self.degree());
        let mut removed = 0.0_f64;
        for (k, c) in self.coeffs.iter_mut().enumerate() {
            if target.forbids(k) {
                removed = removed.max(c.to_float().abs());
                *c = S::zero();
            }
        }
        self.parity = target;
        removed
    }

    /// `(-1)^deg p(-λ)`: the monic polynomial whose roots are negated.
    pub fn reflect_negate(&self) -> Self {
        let d = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (d - k) % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        MonicPoly {
            coeffs,
            parity: self.parity,
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Sum of `|c_k| |x|^k`, the natural scale of rounding error in [`eval`](Self::eval).
    pub fn eval_magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * ax + c.to_float().abs())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_float().abs())
            .fold(0.0, f64::max)
    }

    /// Product `λ · self`.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        MonicPoly {
            coeffs,
            parity: match self.parity {
                Parity::Even => Parity::Odd,
                Parity::Odd => Parity::Even,
                Parity::None => Parity::None,
            },
        }
    }

    pub(crate) fn from_raw(coeffs: Vec<S>, parity: Parity) -> Self {
        MonicPoly { coeffs, parity }
    }
}

impl MonicPoly<f64> {
    /// Locate one root inside each bracket by bisection. Each bracket must
    /// straddle a sign change; the result is sorted ascending.
    pub fn roots_bracketed(
        &self,
        brackets: &[(f64, f64)],
        policy: &TolerancePolicy,
    ) -> Result<RootList<f64>> {
        if brackets.len() != self.degree() {
            return Err(Error::SizeMismatch(format!(
                "{} brackets for a degree-{} polynomial",
                brackets.len(),
                self.degree()
            )));
        }
        let mut sorted: Vec<(f64, f64)> = brackets
            .iter()
            .map(|&(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        sorted.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in sorted.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::SizeMismatch(format!(
                    "brackets ({}, {}) and ({}, {}) overlap",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        let roots = sorted
            .iter()
            .map(|&(lo, hi)| bisect(|x| self.eval(&x), lo, hi, policy.root_tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(RootList::from_sorted_unchecked(roots))
    }
}

/// Bracketed root finding is defined for the float backend only; this entry
/// point reports `BackendUnsupported` for exact scalars.
pub fn roots_bracketed<S: Scalar>(
    p: &MonicPoly<S>,
    brackets: &[(f64, f64)],
    policy: &TolerancePolicy,
) -> Result<RootList<f64>> {
    if S::is_exact() {
        return Err(Error::BackendUnsupported {
            operation: "roots_bracketed",
        });
    }
    let as_float = MonicPoly {
        coeffs: p.coeffs.iter().map(Scalar::to_float).collect(),
        parity: p.parity,
    };
    as_float.roots_bracketed(brackets, policy)
}

/// Bisection on `[lo, hi]` until the bracket is at most `width` wide.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, width: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

impl<S: Scalar> fmt::Display for MonicPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.lt_zero();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Strictly increasing list of simple real roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootList<S> {
    roots: Vec<S>,
}

impl<S: Scalar> RootList<S> {
    pub fn new(roots: Vec<S>) -> Result<Self> {
        for (i, w) in roots.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::NotDecreasing { index: i + 1, next: i + 2 });
            }
        }
        Ok(RootList { roots })
    }

    /// Sort the values ascending, then validate.
    pub fn sorted(mut roots: Vec<S>) -> Result<Self> {
        roots.sort_by(|a, b| a.partial_cmp(b).expect("roots must be comparable"));
        Self::new(roots)
    }

    pub(crate) fn from_sorted_unchecked(roots: Vec<S>) -> Self {
        RootList { roots }
    }

    pub fn as_slice(&self) -> &[S] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn into_vec(self) -> Vec<S> {
        self.roots
    }
}

/// `σ_j` of the tuple, with `σ_0 = 1`.
pub fn elementary_symmetric<S: Scalar>(values: &[S], j: usize) -> Result<S> {
    if j > values.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: values.len(),
        });
    }
    // e[k] holds σ_k of the prefix processed so far
    let mut e = vec![S::zero(); j + 1];
    e[0] = S::one();
    for v in values {
        for k in (1..=j).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * v.clone();
        }
    }
    Ok(e.swap_remove(j))
}

fn check_distinct<S: Scalar>(roots: &[S], policy: &TolerancePolicy) -> Result<()> {
    let sep = policy.root_separation();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let gap = (roots[i].clone() - roots[j].clone()).abs();
            let dup = if S::is_exact() {
                gap.is_zero()
            } else {
                gap.to_float() <= sep
            };
            if dup {
                return Err(Error::DuplicateRoots {
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }
    Ok(())
}
