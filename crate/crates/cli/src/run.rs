//! Command dispatch.

use antibidiag::{
    build_antibidiagonal, build_jacobi_special, check_class_plus, classify_sign_regular,
    eigensolve_tridiagonal, forward_p, forward_q, jacobi_sqrt, signature_sequence, solve,
    solve_roundtrip, validate_spectrum, CertificateMode, CoefficientVector, Error, PositiveTuple,
    Rational, ReconstructionTrace, ReportMode, Scalar, SolveOptions, SquaredCoefficients,
    StructuredMatrix, TolerancePolicy,
};

use crate::args::{BackendArg, Cli, Command, Options};
use crate::error::CliError;
use crate::input::{load_file, parse_inline, Field};
use crate::report::{
    antibidiagonal_rows, jacobi_rows, matrix_rows, Diagnostics, ForwardReport, InterlacingSummary,
    Num, OrderReport, Report, ReportScalar, SignregReport, SolveReport, SqrtReport, WitnessReport,
};
use crate::verify;

pub fn policy_from(opts: &Options) -> Result<TolerancePolicy, CliError> {
    let d = TolerancePolicy::default();
    Ok(TolerancePolicy::new(
        opts.tol_abs.unwrap_or(d.eq_abs),
        opts.tol_rel.unwrap_or(d.eq_rel),
        opts.root_tol.unwrap_or(d.root_tol),
    )?)
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let policy = policy_from(&cli.options)?;
    if cli.command == Command::VerifyAll {
        let sizes = verify::parse_sizes(cli.options.sizes.as_deref())?;
        let report = verify::run_all(cli.options.seed, &sizes, cli.options.cases, &policy);
        return Ok(Report::Verify(report));
    }
    match cli.options.backend {
        BackendArg::Float64 => dispatch::<f64>(cli.command, &cli.options, &policy),
        BackendArg::Rational => dispatch::<Rational>(cli.command, &cli.options, &policy),
    }
}

fn dispatch<S: ReportScalar>(
    command: Command,
    opts: &Options,
    policy: &TolerancePolicy,
) -> Result<Report, CliError> {
    let options = SolveOptions {
        policy: *policy,
        certificates: CertificateMode::Advisory,
    };
    match command {
        Command::Solve => {
            let spectrum = validate_spectrum(read_values::<S>(opts, Field::Spectrum, "solve")?)?;
            let trace = solve(&spectrum, &options)?;
            Ok(Report::Solve(solve_report(&trace, None)))
        }
        Command::Roundtrip => {
            require_float::<S>("roundtrip")?;
            let spectrum = validate_spectrum(read_values::<S>(opts, Field::Spectrum, "roundtrip")?)?;
            let rt = solve_roundtrip(&spectrum, &options)?;
            Ok(Report::Solve(solve_report(&rt.trace, Some(rt.max_error))))
        }
        Command::Forward => {
            let a = CoefficientVector::new(read_values::<S>(opts, Field::A, "forward")?)?;
            Ok(Report::Forward(forward_report(&a, policy)?))
        }
        Command::Sqrt => {
            require_float::<S>("sqrt")?;
            let mus = PositiveTuple::new(read_values::<S>(opts, Field::Mus, "sqrt")?)?;
            Ok(Report::Sqrt(sqrt_report(&mus, &options)?))
        }
        Command::Signreg => {
            let (matrix, mut warnings) = signreg_matrix::<S>(opts, &options)?;
            Ok(Report::Signreg(signreg_report(&matrix, opts.max_power, policy, &mut warnings)?))
        }
        Command::VerifyAll => unreachable!("handled before backend dispatch"),
    }
}

fn require_float<S: Scalar>(operation: &'static str) -> Result<(), CliError> {
    if S::is_exact() {
        return Err(Error::BackendUnsupported { operation }.into());
    }
    Ok(())
}

fn inline_for(opts: &Options, field: Field) -> Option<&str> {
    match field {
        Field::Spectrum => opts.spectrum.as_deref(),
        Field::A => opts.a.as_deref(),
        Field::Mus => opts.mus.as_deref(),
    }
}

/// Values for `field`, from the matching inline flag or from `--input`.
pub fn read_values<S: Scalar>(opts: &Options, field: Field, command: &str) -> Result<Vec<S>, CliError> {
    for other in [Field::Spectrum, Field::A, Field::Mus] {
        if other != field && inline_for(opts, other).is_some() {
            return Err(CliError::Usage(format!(
                "`{command}` does not take {}; use {} or --input",
                other.flag(),
                field.flag()
            )));
        }
    }
    match (inline_for(opts, field), &opts.input) {
        (Some(_), Some(_)) => Err(CliError::Usage(format!(
            "give either {} or --input, not both",
            field.flag()
        ))),
        (Some(text), None) => parse_inline(text),
        (None, Some(path)) => load_file(path, field),
        (None, None) => Err(CliError::Usage(format!(
            "`{command}` needs {} or --input",
            field.flag()
        ))),
    }
}

pub fn solve_report<S: ReportScalar>(trace: &ReconstructionTrace<S>, roundtrip_error: Option<f64>) -> SolveReport {
    let sq = &trace.squared;
    let a: Vec<Num> = std::iter::once(sq.a1().num())
        .chain(sq.squares().iter().map(ReportScalar::root_num))
        .collect();
    let interlacing = (!S::is_exact()).then(|| InterlacingSummary {
        levels_checked: trace.certificates.len(),
        strict: trace.interlacing_ok(),
        violations: trace.certificates.iter().filter(|c| !c.strict).count(),
    });
    SolveReport {
        backend: S::BACKEND.to_string(),
        input: trace.spectrum.as_slice().iter().map(ReportScalar::num).collect(),
        a_squared: sq.all_squares().iter().map(ReportScalar::num).collect(),
        antibidiagonal: antibidiagonal_rows(&a),
        jacobi: jacobi_rows(&a),
        a,
        q_polys: trace
            .q_polys
            .polys
            .iter()
            .map(|p| p.coeffs().iter().map(ReportScalar::num).collect())
            .collect(),
        diagnostics: Diagnostics {
            max_residual: trace.max_residual(),
            roundtrip_error,
            min_modulus_gap: trace.spectrum.min_modulus_gap(),
            interlacing,
        },
        warnings: trace.warnings.clone(),
    }
}

pub fn forward_report<S: ReportScalar>(
    a: &CoefficientVector<S>,
    policy: &TolerancePolicy,
) -> Result<ForwardReport, CliError> {
    let sq = SquaredCoefficients::from(a);
    let p = forward_p(&sq);
    let q = forward_q(&sq);
    let systems_agree = if S::is_exact() {
        p.top().coeffs() == q.top().coeffs()
    } else {
        let scale = p.top().max_abs_coeff().max(q.top().max_abs_coeff()).max(1.0);
        p.top()
            .coeffs()
            .iter()
            .zip(q.top().coeffs())
            .all(|(x, y)| (x.clone() - y.clone()).is_negligible(scale, policy))
    };
    let jacobi = build_jacobi_special(a);
    let mut warnings = Vec::new();
    let eigenvalues = if S::is_exact() {
        warnings.push("eigenvalues need root extraction; rerun with --backend float64".into());
        None
    } else {
        Some(eigensolve_tridiagonal(&jacobi, policy)?.into_vec())
    };
    Ok(ForwardReport {
        backend: S::BACKEND.to_string(),
        a: a.as_slice().iter().map(ReportScalar::num).collect(),
        a_squared: sq.all_squares().iter().map(ReportScalar::num).collect(),
        char_poly: p.top().coeffs().iter().map(ReportScalar::num).collect(),
        systems_agree,
        antibidiagonal: matrix_rows(&build_antibidiagonal(a)),
        jacobi: matrix_rows(&jacobi),
        eigenvalues,
        warnings,
    })
}

pub fn sqrt_report<S: Scalar>(mus: &PositiveTuple<S>, options: &SolveOptions) -> Result<SqrtReport, CliError> {
    let out = jacobi_sqrt(mus, options)?;
    let diagnostics = verify::sqrt_diagnostics(&out, mus, &options.policy)?;
    let mut warnings = Vec::new();
    let b = &out.square;
    if (1..b.n()).any(|i| *b.get(i, i + 1) <= 0.0) {
        warnings.push("codiagonal of B is not strictly positive".into());
    }
    Ok(SqrtReport {
        backend: S::BACKEND.to_string(),
        input: mus.as_slice().iter().map(|m| Num::Float(m.to_float())).collect(),
        spectrum: out.spectrum.as_slice().iter().map(|l| Num::Float(*l)).collect(),
        a: out.a.as_slice().iter().map(|v| Num::Float(*v)).collect(),
        antibidiagonal: matrix_rows(&out.root),
        jacobi: matrix_rows(&out.square),
        diagnostics,
        warnings,
    })
}

fn signreg_matrix<S: ReportScalar>(
    opts: &Options,
    options: &SolveOptions,
) -> Result<(StructuredMatrix<S>, Vec<String>), CliError> {
    let from_a = opts.a.is_some()
        || (opts.spectrum.is_none()
            && opts
                .input
                .as_ref()
                .is_some_and(|p| document_has_key(p, "a")));
    if from_a {
        let a = CoefficientVector::new(read_values::<S>(opts, Field::A, "signreg")?)?;
        return Ok((build_antibidiagonal(&a), Vec::new()));
    }
    let values = read_values::<S>(opts, Field::Spectrum, "signreg")?;
    require_float::<S>("signreg from a spectrum")?;
    let spectrum = validate_spectrum(values)?;
    let trace = solve(&spectrum, options)?;
    let a = trace.a.clone().expect("float backend yields coefficients");
    Ok((build_antibidiagonal(&a), trace.warnings))
}

fn document_has_key(path: &std::path::Path, key: &str) -> bool {
    std::fs::read_to_string(path)
        .ok()
        .and_then(|t| serde_json::from_str::<serde_json::Value>(&t).ok())
        .is_some_and(|v| v.get(key).is_some())
}

pub fn signreg_report<S: ReportScalar>(
    m: &StructuredMatrix<S>,
    max_power: Option<usize>,
    policy: &TolerancePolicy,
    warnings: &mut Vec<String>,
) -> Result<SignregReport, CliError> {
    let n = m.n();
    let sig = signature_sequence(n);
    let report = classify_sign_regular(m, n, &sig, policy, ReportMode::Full)?;
    let max_power = max_power.unwrap_or(2 * n);
    let class_plus = check_class_plus(m, max_power, policy)?;
    let orders = report
        .orders
        .iter()
        .map(|o| OrderReport {
            order: o.order,
            expected_sign: o.expected_sign,
            conforming: o.conforming,
            strict: o.strict,
            principal_conforming: o.principal_conforming,
            principal_strict: o.principal_strict,
            minors_checked: o.minors_checked,
            worst: o.worst.as_ref().map(|w| WitnessReport {
                rows: w.rows.clone(),
                cols: w.cols.clone(),
                value: if S::is_exact() {
                    Num::Exact(w.exact.clone())
                } else {
                    Num::Float(w.value)
                },
            }),
        })
        .collect();
    Ok(SignregReport {
        backend: S::BACKEND.to_string(),
        matrix: matrix_rows(m),
        signature: sig.as_slice().to_vec(),
        orders,
        achieved_class: report.achieved_class,
        strict: report.strict,
        principal_class: report.principal_class,
        conforms: report.conforms(),
        max_power,
        class_plus,
        warnings: std::mem::take(warnings),
    })
}

/// The inequality a rejected spectrum violates, in words.
pub fn violated_inequality(e: &CliError) -> Option<String> {
    match e {
        CliError::Core(Error::NonPositiveLead { value }) => Some(format!("λ_1 > 0 (λ_1 = {value})")),
        CliError::Core(Error::NotAlternating { index, value, .. }) => {
            let rel = if index % 2 == 1 { ">" } else { "<" };
            Some(format!("λ_{index} {rel} 0 (λ_{index} = {value})"))
        }
        CliError::Core(Error::NotStrictlyDecreasingModulus { index, next, left, right }) => Some(format!(
            "|λ_{index}| > |λ_{next}| (|{left}| vs |{right}|)"
        )),
        _ => None,
    }
}
