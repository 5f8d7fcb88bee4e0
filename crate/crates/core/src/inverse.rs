//! Spectrum-to-coefficients reconstruction.
//!
//! Given `λ_1 > -λ_2 > λ_3 > ... > (-1)^(n-1) λ_n > 0`, the solver peels the
//! characteristic polynomial `q_n = ∏(λ - λ_j)` back down the first-row
//! recurrence of the special Jacobi matrix:
//!
//! 1. `a_1 = σ_1(Λ)` and `q_{n-1}` is the part of `q_n` of parity `n-1`,
//!    divided by `-a_1`;
//! 2. `a_2^2` is the leading coefficient of `(λ - a_1) q_{n-1} - q_n`, and
//!    dividing that residual by `a_2^2` gives `q_{n-2}`;
//! 3. for `k = n-1, ..., 2`, `a_{n-k+2}^2` is the leading coefficient of
//!    `λ q_{k-1} - q_k` and the residual divided by it is `q_{k-2}`.
//!
//! Every residual's top two coefficients cancel, so no root-finding is needed
//! and the rational backend stays exact.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matrix::{build_antibidiagonal, build_jacobi_special, CoefficientVector, StructuredMatrix};
use crate::poly::{elementary_symmetric, MonicPoly, Parity};
use crate::recurrence::{forward_p, forward_q, CharPolySequence, RecurrenceSystem, SquaredCoefficients};
use crate::scalar::{Scalar, TolerancePolicy};
use crate::spectral::{eigensolve_tridiagonal, interlaces};

/// Below this minimum modulus gap the float reconstruction is flagged as
/// ill-conditioned.
pub const CONDITIONING_GAP: f64 = 1e-6;

/// A tuple with alternating signs, positive lead and strictly decreasing
/// moduli.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<S> {
    lambdas: Vec<S>,
}

impl<S: Scalar> Spectrum<S> {
    pub fn as_slice(&self) -> &[S] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Smallest `|λ_k| - |λ_{k+1}|`, including the final gap `|λ_n| - 0`.
    pub fn min_modulus_gap(&self) -> f64 {
        let moduli: Vec<f64> = self.lambdas.iter().map(|l| l.abs().to_float()).collect();
        moduli
            .windows(2)
            .map(|w| w[0] - w[1])
            .chain(moduli.last().copied())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Check the alternating, strictly-decreasing-modulus condition and report the
/// first violation.
pub fn validate_spectrum<S: Scalar>(lambdas: Vec<S>) -> Result<Spectrum<S>> {
    let first = lambdas.first().ok_or(Error::EmptyInput)?;
    if !first.gt_zero() {
        return Err(Error::NonPositiveLead {
            value: first.to_string(),
        });
    }
    for k in 1..lambdas.len() {
        let expected: i8 = if k % 2 == 0 { 1 } else { -1 };
        let v = &lambdas[k];
        let ok = if expected > 0 { v.gt_zero() } else { v.lt_zero() };
        if !ok {
            return Err(Error::NotAlternating {
                index: k + 1,
                expected,
                value: v.to_string(),
            });
        }
        if lambdas[k - 1].abs() <= v.abs() {
            return Err(Error::NotStrictlyDecreasingModulus {
                index: k,
                next: k + 1,
                left: lambdas[k - 1].to_string(),
                right: v.to_string(),
            });
        }
    }
    Ok(Spectrum { lambdas })
}

/// Strictly decreasing positive tuple `μ_1 > ... > μ_n > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveTuple<S> {
    mus: Vec<S>,
}

impl<S: Scalar> PositiveTuple<S> {
    pub fn new(mus: Vec<S>) -> Result<Self> {
        if mus.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some((i, v)) = mus.iter().enumerate().find(|(_, v)| !v.gt_zero()) {
            return Err(Error::NonPositive {
                index: i + 1,
                value: v.to_string(),
            });
        }
        if let Some(i) = mus.windows(2).position(|w| w[0] <= w[1]) {
            return Err(Error::NotDecreasing {
                index: i + 1,
                next: i + 2,
            });
        }
        Ok(PositiveTuple { mus })
    }

    pub fn as_slice(&self) -> &[S] {
        &self.mus
    }

    pub fn len(&self) -> usize {
        self.mus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mus.is_empty()
    }
}

/// Outcome of the `σ_3 > σ_1 σ_2` test.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaInequality<S> {
    pub sigma1: S,
    pub sigma2: S,
    pub sigma3: S,
    pub holds: bool,
}

/// Evaluate `σ_3 > σ_1 σ_2` on any tuple of length at least 3 (validation is
/// left to the caller so boundary cases can be probed).
pub fn check_sigma_inequality<S: Scalar>(lambdas: &[S]) -> Result<SigmaInequality<S>> {
    if lambdas.len() < 3 {
        return Err(Error::TooSmall {
            required: 3,
            got: lambdas.len(),
        });
    }
    let sigma1 = elementary_symmetric(lambdas, 1)?;
    let sigma2 = elementary_symmetric(lambdas, 2)?;
    let sigma3 = elementary_symmetric(lambdas, 3)?;
    let holds = sigma3 > sigma1.clone() * sigma2.clone();
    Ok(SigmaInequality {
        sigma1,
        sigma2,
        sigma3,
        holds,
    })
}

/// `(Σ 1/λ_j)(Σ λ_j)` for a triple; exceeds 1 exactly when `σ_3 > σ_1 σ_2`
/// (given `σ_3 < 0`).
pub fn reciprocal_sum_product<S: Scalar>(triple: &[S]) -> Result<S> {
    if triple.len() != 3 {
        return Err(Error::SizeMismatch(format!(
            "expected three values, got {}",
            triple.len()
        )));
    }
    if triple.iter().any(|x| x.is_zero()) {
        return Err(Error::NonPositive {
            index: triple.iter().position(|x| x.is_zero()).unwrap() + 1,
            value: "0".into(),
        });
    }
    let recip = triple
        .iter()
        .fold(S::zero(), |acc, x| acc + S::one() / x.clone());
    let sum = triple.iter().fold(S::zero(), |acc, x| acc + x.clone());
    Ok(recip * sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CertificateMode {
    /// Skip root extraction.
    Off,
    /// Extract interlacing certificates and turn failures into warnings.
    #[default]
    Advisory,
    /// Fail with `InterlaceViolation` on the first broken level.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolveOptions {
    pub policy: TolerancePolicy,
    pub certificates: CertificateMode,
}

/// Root lists of `q_k` (outer) and `q_{k-1}` (inner).
#[derive(Debug, Clone, PartialEq)]
pub struct InterlaceCertificate {
    pub outer_degree: usize,
    pub outer: Vec<f64>,
    pub inner: Vec<f64>,
    pub strict: bool,
}

/// Two routes to the same `a_k^2`: the residual's leading coefficient, and
/// the root-based formula.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareCrossCheck {
    pub index: usize,
    pub extracted: f64,
    pub via_roots: f64,
}

/// Every intermediate object of one reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionTrace<S> {
    pub spectrum: Spectrum<S>,
    /// `q_polys.polys[k]` is `q_k`, the characteristic polynomial of the
    /// trailing `k x k` block of the special Jacobi matrix.
    pub q_polys: CharPolySequence<S>,
    pub squared: SquaredCoefficients<S>,
    /// Square roots of `squared`; absent in the rational backend.
    pub a: Option<CoefficientVector<S>>,
    pub certificates: Vec<InterlaceCertificate>,
    pub cross_checks: Vec<SquareCrossCheck>,
    /// Largest coefficient removed when enforcing parity (always 0 when exact).
    pub parity_defect: f64,
    pub warnings: Vec<String>,
}

impl<S: Scalar> ReconstructionTrace<S> {
    pub fn n(&self) -> usize {
        self.spectrum.len()
    }

    /// Whether every extracted certificate interlaces strictly.
    pub fn interlacing_ok(&self) -> bool {
        self.certificates.iter().all(|c| c.strict)
    }

    /// `max_j |p_n(λ_j)|` with `p_n` rebuilt from the solved coefficients.
    pub fn max_residual(&self) -> f64 {
        let rebuilt = forward_p(&self.squared);
        let top = rebuilt.top();
        self.spectrum
            .as_slice()
            .iter()
            .map(|l| top.eval(l).to_float().abs())
            .fold(0.0, f64::max)
    }
}

fn divide_monic<S: Scalar>(residual: &[S], degree: usize, by: &S) -> (MonicPoly<S>, f64) {
    let mut coeffs: Vec<S> = residual[..=degree]
        .iter()
        .map(|c| c.clone() / by.clone())
        .collect();
    coeffs[degree] = S::one();
    let mut p = MonicPoly::from_raw(coeffs, Parity::None);
    let defect = p.enforce_parity();
    (p, defect)
}

/// Check the coefficients of `residual` above `degree` vanish.
fn check_cancelled<S: Scalar>(
    residual: &[S],
    degree: usize,
    scale: f64,
    policy: &TolerancePolicy,
) -> Result<()> {
    for (k, c) in residual.iter().enumerate().skip(degree + 1) {
        if !c.is_negligible(scale.max(1.0), policy) {
            return Err(Error::TerminalMismatch(format!(
                "coefficient of λ^{k} in a residual should cancel, got {c}"
            )));
        }
    }
    Ok(())
}

fn positive_square<S: Scalar>(value: S, index: usize) -> Result<S> {
    if value.gt_zero() {
        Ok(value)
    } else {
        Err(Error::NonPositiveA {
            index,
            value: value.to_string(),
        })
    }
}

/// Reconstruct the unique positive coefficients realising `spectrum`.
pub fn solve<S: Scalar>(
    spectrum: &Spectrum<S>,
    options: &SolveOptions,
) -> Result<ReconstructionTrace<S>> {
    let policy = &options.policy;
    let n = spectrum.len();
    let qn = MonicPoly::from_roots(spectrum.as_slice(), policy)?;
    let a1 = positive_square(-qn.coeff(n - 1), 1)?;

    // polys indexed by degree, filled from the top down
    let mut polys: Vec<Option<MonicPoly<S>>> = vec![None; n + 1];
    let mut squares: Vec<S> = vec![S::zero(); n.saturating_sub(1)];
    let mut parity_defect = 0.0_f64;
    let mut warnings = Vec::new();

    if n >= 2 {
        // parity (n-1) part of q_n divided by -a_1
        let coeffs: Vec<S> = (0..n)
            .map(|k| {
                if (n - 1 - k).is_multiple_of(2) {
                    -qn.coeff(k) / a1.clone()
                } else {
                    S::zero()
                }
            })
            .collect();
        let mut q_nm1 = MonicPoly::from_raw(coeffs, Parity::of_degree(n - 1));
        parity_defect = parity_defect.max((q_nm1.coeff(n - 1).to_float() - 1.0).abs());
        let mut fixed = q_nm1.coeffs().to_vec();
        fixed[n - 1] = S::one();
        q_nm1 = MonicPoly::from_raw(fixed, Parity::of_degree(n - 1));

        // (λ - a_1) q_{n-1} - q_n = a_2^2 q_{n-2}
        let shifted = q_nm1.shift_up();
        let residual: Vec<S> = (0..=n)
            .map(|k| shifted.coeff(k) - a1.clone() * q_nm1.coeff(k) - qn.coeff(k))
            .collect();
        check_cancelled(&residual, n - 2, qn.max_abs_coeff(), policy)?;
        let a2_sq = positive_square(residual[n - 2].clone(), 2)?;
        let (q_nm2, defect) = divide_monic(&residual, n - 2, &a2_sq);
        parity_defect = parity_defect.max(defect);
        squares[0] = a2_sq;
        polys[n] = Some(qn.clone());
        polys[n - 1] = Some(q_nm1);
        polys[n - 2] = Some(q_nm2);

        for k in (2..n).rev() {
            let upper = polys[k].as_ref().unwrap();
            let lower = polys[k - 1].as_ref().unwrap();
            let shifted = lower.shift_up();
            let residual: Vec<S> = (0..=k).map(|i| shifted.coeff(i) - upper.coeff(i)).collect();
            check_cancelled(&residual, k - 2, upper.max_abs_coeff(), policy)?;
            let index = n - k + 2;
            let sq = positive_square(residual[k - 2].clone(), index)?;
            let (next, defect) = divide_monic(&residual, k - 2, &sq);
            parity_defect = parity_defect.max(defect);
            squares[index - 2] = sq;
            polys[k - 2] = Some(next);
        }
    } else {
        polys[1] = Some(qn.clone());
    }
    polys[0] = Some(MonicPoly::one());

    let polys: Vec<MonicPoly<S>> = polys.into_iter().map(Option::unwrap).collect();
    if n >= 2 {
        let lambda = MonicPoly::<S>::lambda();
        if polys[1] != lambda {
            return Err(Error::TerminalMismatch(format!("q_1 = {} instead of λ", polys[1])));
        }
    }
    if !polys[0].coeffs()[0].is_one() {
        return Err(Error::TerminalMismatch(format!("q_0 = {} instead of 1", polys[0])));
    }

    let squared = SquaredCoefficients::new(a1, squares)?;
    verify_forward(&squared, &qn, policy)?;
    if parity_defect > 0.0 && !S::is_exact() {
        let scale = qn.max_abs_coeff().max(1.0);
        if parity_defect > policy.eq_abs * scale {
            warnings.push(format!(
                "parity enforcement removed a coefficient of size {parity_defect:.3e}"
            ));
        }
    }
    let gap = spectrum.min_modulus_gap();
    if !S::is_exact() && gap < CONDITIONING_GAP {
        warnings.push(format!(
            "minimum modulus gap {gap:.3e} is below {CONDITIONING_GAP:e}; \
             the float reconstruction may be inaccurate, consider the rational backend"
        ));
    }

    let a = squared.to_coefficients();
    let q_polys = CharPolySequence {
        polys,
        source: RecurrenceSystem::Q,
    };
    let mut trace = ReconstructionTrace {
        spectrum: spectrum.clone(),
        q_polys,
        squared,
        a,
        certificates: Vec::new(),
        cross_checks: Vec::new(),
        parity_defect,
        warnings,
    };
    if !S::is_exact() && options.certificates != CertificateMode::Off {
        attach_certificates(&mut trace, options)?;
    }
    Ok(trace)
}

/// Rebuild `q_n` from the extracted coefficients and compare.
fn verify_forward<S: Scalar>(
    squared: &SquaredCoefficients<S>,
    qn: &MonicPoly<S>,
    policy: &TolerancePolicy,
) -> Result<()> {
    let rebuilt = forward_q(squared);
    let top = rebuilt.top();
    if S::is_exact() {
        if top.coeffs() != qn.coeffs() {
            return Err(Error::TerminalMismatch(
                "forward recurrence does not reproduce q_n".into(),
            ));
        }
        return Ok(());
    }
    // magnitude bound: run the same recurrence with every sign made positive
    let magnitude = recurrence_magnitude(squared);
    for k in 0..=qn.degree() {
        let diff = (top.coeff(k) - qn.coeff(k)).to_float().abs();
        let allowed = policy.eq_abs + policy.eq_rel * magnitude[k].max(qn.coeff(k).to_float().abs());
        if diff > allowed {
            return Err(Error::TerminalMismatch(format!(
                "forward recurrence misses coefficient of λ^{k} by {diff:.3e}"
            )));
        }
    }
    Ok(())
}

fn recurrence_magnitude<S: Scalar>(squared: &SquaredCoefficients<S>) -> Vec<f64> {
    let n = squared.len();
    let a1 = squared.a1().to_float().abs();
    if n == 1 {
        return vec![a1, 1.0];
    }
    let mut prev2 = vec![1.0];
    let mut prev1 = vec![0.0, 1.0];
    for k in 2..n {
        let c = squared.square(n - k + 2).to_float();
        let mut next = vec![0.0; k + 1];
        for (i, v) in prev1.iter().enumerate() {
            next[i + 1] += v;
        }
        for (i, v) in prev2.iter().enumerate() {
            next[i] += c * v;
        }
        prev2 = std::mem::replace(&mut prev1, next);
    }
    let c = squared.square(2).to_float();
    let mut top = vec![0.0; n + 1];
    for (i, v) in prev1.iter().enumerate() {
        top[i + 1] += v;
        top[i] += a1 * v;
    }
    for (i, v) in prev2.iter().enumerate() {
        top[i] += c * v;
    }
    top
}

/// Locate the roots of each `q_{k-1}` between consecutive roots of `q_k`,
/// starting from the prescribed spectrum.
fn attach_certificates<S: Scalar>(
    trace: &mut ReconstructionTrace<S>,
    options: &SolveOptions,
) -> Result<()> {
    let policy = &options.policy;
    let n = trace.n();
    let mut outer: Vec<f64> = trace.spectrum.as_slice().iter().map(Scalar::to_float).collect();
    outer.sort_by(f64::total_cmp);
    let mut roots_by_degree: Vec<Option<Vec<f64>>> = vec![None; n + 1];
    roots_by_degree[n] = Some(outer.clone());
    for k in (1..n).rev() {
        let inner_poly = &trace.q_polys.polys[k];
        let as_float = MonicPoly::from_raw(
            inner_poly.coeffs().iter().map(Scalar::to_float).collect(),
            inner_poly.parity(),
        );
        let brackets: Vec<(f64, f64)> = outer.windows(2).map(|w| (w[0], w[1])).collect();
        let found = as_float.roots_bracketed(&brackets, policy);
        let inner = match found {
            Ok(r) => r.into_vec(),
            Err(e) => {
                let detail = e.to_string();
                if options.certificates == CertificateMode::Strict {
                    return Err(Error::InterlaceViolation {
                        outer: k + 1,
                        inner: k,
                        detail,
                    });
                }
                trace.warnings.push(format!(
                    "interlacing certificate for q_{k} inside q_{} failed: {detail}",
                    k + 1
                ));
                trace.certificates.push(InterlaceCertificate {
                    outer_degree: k + 1,
                    outer: outer.clone(),
                    inner: Vec::new(),
                    strict: false,
                });
                return Ok(());
            }
        };
        let strict = interlaces(&inner, &outer)?;
        if !strict {
            if options.certificates == CertificateMode::Strict {
                return Err(Error::InterlaceViolation {
                    outer: k + 1,
                    inner: k,
                    detail: "located roots are not strictly interior".into(),
                });
            }
            trace
                .warnings
                .push(format!("roots of q_{k} do not strictly interlace those of q_{}", k + 1));
        }
        trace.certificates.push(InterlaceCertificate {
            outer_degree: k + 1,
            outer: outer.clone(),
            inner: inner.clone(),
            strict,
        });
        roots_by_degree[k] = Some(inner.clone());
        outer = inner;
    }

    // a_k^2 = σ_2(q_{m-1}) - σ_2(q_m) with m = n - k + 2, for 3 <= k <= n
    let sigma2 = |roots: &[f64]| -> f64 {
        if roots.len() < 2 {
            0.0
        } else {
            elementary_symmetric(roots, 2).unwrap_or(f64::NAN)
        }
    };
    for index in 3..=n {
        let m = n - index + 2;
        if let (Some(upper), Some(lower)) = (&roots_by_degree[m], &roots_by_degree[m - 1]) {
            trace.cross_checks.push(SquareCrossCheck {
                index,
                extracted: trace.squared.square(index).to_float(),
                via_roots: sigma2(lower) - sigma2(upper),
            });
        }
    }
    if n >= 3 {
        let lambdas: Vec<f64> = trace.spectrum.as_slice().iter().map(Scalar::to_float).collect();
        if let Ok(s) = check_sigma_inequality(&lambdas) {
            trace.cross_checks.insert(
                0,
                SquareCrossCheck {
                    index: 2,
                    extracted: trace.squared.square(2).to_float(),
                    via_roots: s.sigma3 / s.sigma1 - s.sigma2,
                },
            );
        }
    }
    Ok(())
}

/// Result of [`solve_roundtrip`].
#[derive(Debug, Clone, PartialEq)]
pub struct Roundtrip {
    pub trace: ReconstructionTrace<f64>,
    /// Eigenvalues of the rebuilt Jacobi matrix, ordered by decreasing modulus.
    pub recovered: Vec<f64>,
    /// Largest `|recovered - prescribed| / |prescribed|`.
    pub max_error: f64,
}

/// Solve, rebuild the special Jacobi matrix, eigensolve it and compare.
pub fn solve_roundtrip<S: Scalar>(spectrum: &Spectrum<S>, options: &SolveOptions) -> Result<Roundtrip> {
    if S::is_exact() {
        return Err(Error::BackendUnsupported {
            operation: "roundtrip",
        });
    }
    let lambdas: Vec<f64> = spectrum.as_slice().iter().map(Scalar::to_float).collect();
    let spectrum = validate_spectrum(lambdas)?;
    let trace = solve(&spectrum, options)?;
    let a = trace
        .a
        .clone()
        .expect("float backend always yields coefficients");
    let b = build_jacobi_special(&a);
    let eig = eigensolve_tridiagonal(&b, &options.policy)?.into_vec();
    let mut expected = spectrum.as_slice().to_vec();
    expected.sort_by(f64::total_cmp);
    let max_error = eig
        .iter()
        .zip(&expected)
        .map(|(got, want)| (got - want).abs() / want.abs())
        .fold(0.0, f64::max);
    let mut recovered = eig;
    recovered.sort_by(|x, y| y.abs().total_cmp(&x.abs()));
    Ok(Roundtrip {
        trace,
        recovered,
        max_error,
    })
}

/// Anti-bidiagonal square root of a special Jacobi matrix with prescribed
/// positive spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiSqrt {
    pub spectrum: Spectrum<f64>,
    pub a: CoefficientVector<f64>,
    pub root: StructuredMatrix<f64>,
    pub square: StructuredMatrix<f64>,
}

/// `λ_j = (-1)^(j-1) √μ_j`, reconstruct `A` from `Λ`, and return `B = A²`.
pub fn jacobi_sqrt<S: Scalar>(mus: &PositiveTuple<S>, options: &SolveOptions) -> Result<JacobiSqrt> {
    if S::is_exact() {
        return Err(Error::BackendUnsupported { operation: "sqrt" });
    }
    let lambdas: Vec<f64> = mus
        .as_slice()
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let r = m.to_float().sqrt();
            if j % 2 == 0 {
                r
            } else {
                -r
            }
        })
        .collect();
    let spectrum = validate_spectrum(lambdas)?;
    let trace = solve(&spectrum, options)?;
    let a = trace
        .a
        .expect("float backend always yields coefficients");
    let root = build_antibidiagonal(&a);
    let square = root.matmul(&root, &options.policy)?;
    Ok(JacobiSqrt {
        spectrum,
        a,
        root,
        square,
    })
}
