//! Seeded randomized property suite.

use std::thread;

use antibidiag::inverse::JacobiSqrt;
use antibidiag::sampling::{
    random_positive_tuple, random_rational_coefficients, random_rational_spectrum, random_spectrum,
};
use antibidiag::{
    build_antibidiagonal, build_antidiagonal_unit, build_jacobi_special, cauchy_binet_check,
    check_class_plus, check_sigma_inequality, classify_sign_regular, eigensolve_tridiagonal,
    forward_p, forward_q, jacobi_sqrt, signature_sequence, solve, solve_roundtrip,
    validate_spectrum, CertificateMode, CoefficientVector, IndexSet, MonicPoly, PositiveTuple,
    Rational, ReportMode, Scalar, SolveOptions, SquaredCoefficients, StructuredMatrix,
    TolerancePolicy,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::report::{PropertyResult, SqrtDiagnostics, VerifyReport};

pub const DEFAULT_SIZES: std::ops::RangeInclusive<usize> = 1..=12;

type Check = fn(&mut ChaCha8Rng, usize, &TolerancePolicy) -> Result<(), String>;

struct Property {
    name: &'static str,
    applies: fn(usize) -> bool,
    check: Check,
}

const PROPERTIES: &[Property] = &[
    Property { name: "roundtrip", applies: |_| true, check: roundtrip },
    Property { name: "interlacing", applies: |_| true, check: interlacing },
    Property { name: "exact_coefficients", applies: |n| n <= 16, check: exact_coefficients },
    Property { name: "recurrence_equivalence", applies: |_| true, check: recurrence_equivalence },
    Property { name: "sigma_inequality", applies: |n| n >= 3, check: sigma_inequality },
    Property { name: "sign_regularity", applies: |n| (2..=5).contains(&n), check: sign_regularity },
    Property { name: "class_plus", applies: |n| (2..=4).contains(&n), check: class_plus },
    Property { name: "jacobi_sqrt", applies: |n| n <= 10, check: jacobi_sqrt_case },
    Property { name: "cauchy_binet", applies: |n| n <= 5, check: cauchy_binet },
];

/// Generator for one case: a fixed key with the property and case index
/// selecting an independent stream.
pub fn case_rng(seed: u64, property: usize, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((property as u64) << 32) | case as u64);
    rng
}

/// `1-12`, `2,3,5` or a mix such as `1-4,8`.
pub fn parse_sizes(text: Option<&str>) -> Result<Vec<usize>, CliError> {
    let Some(text) = text else {
        return Ok(DEFAULT_SIZES.collect());
    };
    let bad = || CliError::Usage(format!("cannot parse sizes `{text}`"));
    let mut sizes = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad())?;
                let hi: usize = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                sizes.extend(lo..=hi);
            }
            None => sizes.push(part.parse().map_err(|_| bad())?),
        }
    }
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() || sizes[0] == 0 {
        return Err(CliError::Usage("sizes must be positive".into()));
    }
    Ok(sizes)
}

pub fn run_all(seed: u64, sizes: &[usize], cases: usize, policy: &TolerancePolicy) -> VerifyReport {
    let properties: Vec<PropertyResult> = thread::scope(|scope| {
        let handles: Vec<_> = PROPERTIES
            .iter()
            .enumerate()
            .map(|(pid, prop)| scope.spawn(move || run_property(seed, pid, prop, sizes, cases, policy)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("property worker panicked"))
            .collect()
    });
    let passed = properties.iter().all(|p| p.failures == 0);
    VerifyReport {
        seed,
        sizes: sizes.to_vec(),
        cases_per_size: cases,
        properties,
        passed,
    }
}

fn run_property(
    seed: u64,
    pid: usize,
    prop: &Property,
    sizes: &[usize],
    cases: usize,
    policy: &TolerancePolicy,
) -> PropertyResult {
    let mut result = PropertyResult {
        name: prop.name.into(),
        cases: 0,
        failures: 0,
        first_failure: None,
    };
    let mut index = 0;
    for &n in sizes.iter().filter(|&&n| (prop.applies)(n)) {
        for _ in 0..cases {
            let mut rng = case_rng(seed, pid, index);
            index += 1;
            result.cases += 1;
            if let Err(msg) = (prop.check)(&mut rng, n, policy) {
                result.failures += 1;
                result.first_failure.get_or_insert(format!("n={n}: {msg}"));
            }
        }
    }
    result
}

fn options(policy: &TolerancePolicy, certificates: CertificateMode) -> SolveOptions {
    SolveOptions {
        policy: *policy,
        certificates,
    }
}

fn roundtrip(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<(), String> {
    let spectrum = validate_spectrum(random_spectrum(rng, n, 0.1, 10.0, 0.1)).map_err(|e| e.to_string())?;
    let rt = solve_roundtrip(&spectrum, &options(policy, CertificateMode::Off)).map_err(|e| e.to_string())?;
    if rt.max_error > 1e-8 {
        return Err(format!("relative eigenvalue error {:.3e}", rt.max_error));
    }
    Ok(())
}

fn interlacing(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<(), String> {
    let spectrum = validate_spectrum(random_spectrum(rng, n, 0.1, 10.0, 0.1)).map_err(|e| e.to_string())?;
    let trace = solve(&spectrum, &options(policy, CertificateMode::Strict)).map_err(|e| e.to_string())?;
    if trace.certificates.len() != n - 1 || !trace.interlacing_ok() {
        return Err(format!("{} of {} levels certified", trace.certificates.len(), n - 1));
    }
    Ok(())
}

fn exact_coefficients(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<(), String> {
    let lambdas = random_rational_spectrum(rng, n);
    let target = MonicPoly::from_roots(&lambdas, policy).map_err(|e| e.to_string())?;
    let spectrum = validate_spectrum(lambdas).map_err(|e| e.to_string())?;
    let trace = solve(&spectrum, &SolveOptions::default()).map_err(|e| e.to_string())?;
    if forward_q(&trace.squared).top() != &target {
        return Err("forward recurrence does not reproduce the characteristic polynomial".into());
    }
    if !trace.squared.all_squares().iter().all(|s| s.gt_zero()) {
        return Err("non-positive a_j^2".into());
    }
    Ok(())
}

fn recurrence_equivalence(rng: &mut ChaCha8Rng, n: usize, _: &TolerancePolicy) -> Result<(), String> {
    let a = CoefficientVector::new(random_rational_coefficients(rng, n)).map_err(|e| e.to_string())?;
    let sq = SquaredCoefficients::from(&a);
    if forward_p(&sq).top() != forward_q(&sq).top() {
        return Err("p and q systems disagree".into());
    }
    Ok(())
}

fn sigma_inequality(rng: &mut ChaCha8Rng, n: usize, _: &TolerancePolicy) -> Result<(), String> {
    let lambdas = random_spectrum(rng, n, 0.1, 10.0, 0.1);
    let s = check_sigma_inequality(&lambdas).map_err(|e| e.to_string())?;
    if !s.holds {
        return Err(format!("σ3 = {} vs σ1σ2 = {}", s.sigma3, s.sigma1 * s.sigma2));
    }
    Ok(())
}

fn reconstructed(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<StructuredMatrix<f64>, String> {
    let spectrum = validate_spectrum(random_spectrum(rng, n, 0.1, 10.0, 0.1)).map_err(|e| e.to_string())?;
    let trace = solve(&spectrum, &options(policy, CertificateMode::Off)).map_err(|e| e.to_string())?;
    Ok(build_antibidiagonal(trace.a.as_ref().expect("float coefficients")))
}

fn sign_regularity(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<(), String> {
    let m = reconstructed(rng, n, policy)?;
    let report = classify_sign_regular(&m, n, &signature_sequence(n), policy, ReportMode::FailFast)
        .map_err(|e| e.to_string())?;
    if !report.conforms() {
        return Err(format!("class {} of {n}", report.achieved_class));
    }
    Ok(())
}

fn class_plus(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<(), String> {
    let m = reconstructed(rng, n, policy)?;
    match check_class_plus(&m, n - 1, policy).map_err(|e| e.to_string())? {
        Some(_) => Ok(()),
        None => Err(format!("no totally positive (A²)^m with m <= {}", n - 1)),
    }
}

/// Off-tridiagonal mass of `B` and the relative spectrum error against `mus`.
pub fn sqrt_diagnostics<S: Scalar>(
    out: &JacobiSqrt,
    mus: &PositiveTuple<S>,
    policy: &TolerancePolicy,
) -> Result<SqrtDiagnostics, antibidiag::Error> {
    let b = &out.square;
    let n = b.n();
    let mut mass = 0.0;
    for i in 1..=n {
        for j in 1..=n {
            if i.abs_diff(j) > 1 {
                mass += b.get(i, j).abs();
            }
        }
    }
    let eig = eigensolve_tridiagonal(b, policy)?;
    let mut want: Vec<f64> = mus.as_slice().iter().map(Scalar::to_float).collect();
    want.sort_by(f64::total_cmp);
    let spectrum_error = eig
        .as_slice()
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).abs() / w.abs())
        .fold(0.0, f64::max);
    Ok(SqrtDiagnostics {
        off_tridiagonal_mass: mass,
        spectrum_error,
    })
}

fn jacobi_sqrt_case(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<(), String> {
    let mus = PositiveTuple::new(random_positive_tuple(rng, n, 0.1, 10.0, 0.1)).map_err(|e| e.to_string())?;
    let out = jacobi_sqrt(&mus, &options(policy, CertificateMode::Off)).map_err(|e| e.to_string())?;
    let d = sqrt_diagnostics(&out, &mus, policy).map_err(|e| e.to_string())?;
    let b = &out.square;
    if d.off_tridiagonal_mass > 1e-10 * b.max_norm() {
        return Err(format!("off-tridiagonal mass {:.3e}", d.off_tridiagonal_mass));
    }
    if (1..n).any(|i| *b.get(i, i + 1) <= 0.0) {
        return Err("non-positive codiagonal".into());
    }
    if d.spectrum_error > 1e-8 {
        return Err(format!("spectrum error {:.3e}", d.spectrum_error));
    }
    Ok(())
}

/// A random pair of structured rational factors of size `n`, with a label.
pub fn random_structured_pair(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> (StructuredMatrix<Rational>, StructuredMatrix<Rational>, &'static str) {
    let policy = TolerancePolicy::default();
    let coeffs = |rng: &mut ChaCha8Rng| {
        CoefficientVector::new(random_rational_coefficients(rng, n)).expect("positive coefficients")
    };
    let a = build_antibidiagonal(&coeffs(rng));
    let j = build_antidiagonal_unit::<Rational>(n);
    match rng.random_range(0..5) {
        0 => {
            let ja = j.matmul(&a, &policy).expect("same size");
            (j, ja, "J·(JA)")
        }
        1 => (a.clone(), a, "A·A"),
        2 => (a, build_jacobi_special(&coeffs(rng)), "A·B"),
        3 => (build_jacobi_special(&coeffs(rng)), a, "B·A"),
        _ => {
            let ja = j.matmul(&a, &policy).expect("same size");
            (ja, build_antibidiagonal(&coeffs(rng)), "(JA)·A'")
        }
    }
}

/// Random nonempty index set of size `k` in `1..=n`.
pub fn random_index_set(rng: &mut ChaCha8Rng, n: usize, k: usize) -> IndexSet {
    let mut v: Vec<usize> = sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    v.sort_unstable();
    IndexSet::new(v).expect("distinct sorted indices")
}

fn cauchy_binet(rng: &mut ChaCha8Rng, n: usize, policy: &TolerancePolicy) -> Result<(), String> {
    let (x, y, label) = random_structured_pair(rng, n);
    for _ in 0..4 {
        let k = rng.random_range(1..=n);
        let rows = random_index_set(rng, n, k);
        let cols = random_index_set(rng, n, k);
        let cb = cauchy_binet_check(&x, &y, &rows, &cols, policy).map_err(|e| e.to_string())?;
        if !cb.equal {
            return Err(format!("{label}: {} != {}", cb.lhs, cb.rhs));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_lists() {
        assert_eq!(parse_sizes(Some("1-3,5")).unwrap(), vec![1, 2, 3, 5]);
        assert_eq!(parse_sizes(None).unwrap().len(), 12);
        assert!(parse_sizes(Some("0")).is_err());
        assert!(parse_sizes(Some("3-1")).is_err());
    }

    #[test]
    fn streams_are_reproducible() {
        let a: u64 = case_rng(5, 2, 7).random();
        let b: u64 = case_rng(5, 2, 7).random();
        let c: u64 = case_rng(5, 2, 8).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
