//! Report types and their JSON, CSV and pretty renderings.

use antibidiag::matrix::coefficient_position;
use antibidiag::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// A reported value: a float, or an exact literal such as `7/3` or `sqrt(2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Exact(String),
}

impl Num {
    /// Numeric value, evaluating `sqrt(...)` literals.
    pub fn approx(&self) -> f64 {
        match self {
            Num::Float(v) => *v,
            Num::Exact(s) => match s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
                Some(inner) => antibidiag::scalar::parse_rational(inner)
                    .map(|r| r.to_float().sqrt())
                    .unwrap_or(f64::NAN),
                None => antibidiag::scalar::parse_rational(s)
                    .map(|r| r.to_float())
                    .unwrap_or(f64::NAN),
            },
        }
    }

    fn short(&self) -> String {
        match self {
            Num::Float(v) => short_float(*v),
            Num::Exact(s) => s.clone(),
        }
    }

    fn full(&self) -> String {
        match self {
            Num::Float(v) => format!("{v}"),
            Num::Exact(s) => s.clone(),
        }
    }
}

/// Ten significant decimals with trailing zeros removed.
pub fn short_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.abs() < 1e-4 || v.abs() >= 1e10 {
        return format!("{v:.6e}");
    }
    let s = format!("{v:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Scalars that know how to report themselves and their square roots.
pub trait ReportScalar: Scalar {
    fn num(&self) -> Num;
    /// `√self`, exact where possible.
    fn root_num(&self) -> Num;
}

impl ReportScalar for f64 {
    fn num(&self) -> Num {
        Num::Float(*self)
    }

    fn root_num(&self) -> Num {
        Num::Float(f64::sqrt(*self))
    }
}

fn integer_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

impl ReportScalar for Rational {
    fn num(&self) -> Num {
        Num::Exact(self.to_string())
    }

    fn root_num(&self) -> Num {
        match (integer_sqrt(self.numer()), integer_sqrt(self.denom())) {
            (Some(p), Some(q)) => Num::Exact(Rational::new(p, q).to_string()),
            _ => Num::Exact(format!("sqrt({self})")),
        }
    }
}

fn zero_like(entries: &[Num]) -> Num {
    match entries.first() {
        Some(Num::Exact(_)) => Num::Exact("0".into()),
        _ => Num::Float(0.0),
    }
}

/// Anti-bidiagonal layout of `a`, row-major.
pub fn antibidiagonal_rows(a: &[Num]) -> Vec<Vec<Num>> {
    let n = a.len();
    let mut rows = vec![vec![zero_like(a); n]; n];
    for (k, v) in a.iter().enumerate() {
        let (i, j) = coefficient_position(n, k + 1);
        rows[i - 1][j - 1] = v.clone();
        rows[j - 1][i - 1] = v.clone();
    }
    rows
}

/// Tridiagonal layout with diagonal `(a_1, 0, ..., 0)` and codiagonal `a_2..a_n`.
pub fn jacobi_rows(a: &[Num]) -> Vec<Vec<Num>> {
    let n = a.len();
    let mut rows = vec![vec![zero_like(a); n]; n];
    if n > 0 {
        rows[0][0] = a[0].clone();
    }
    for k in 1..n {
        rows[k - 1][k] = a[k].clone();
        rows[k][k - 1] = a[k].clone();
    }
    rows
}

pub fn matrix_rows<S: ReportScalar>(m: &antibidiag::StructuredMatrix<S>) -> Vec<Vec<Num>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(ReportScalar::num).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingSummary {
    pub levels_checked: usize,
    pub strict: bool,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `max_j |p_n(λ_j)|` for the rebuilt characteristic polynomial.
    pub max_residual: f64,
    pub roundtrip_error: Option<f64>,
    pub min_modulus_gap: f64,
    pub interlacing: Option<InterlacingSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub backend: String,
    pub input: Vec<Num>,
    pub a: Vec<Num>,
    pub a_squared: Vec<Num>,
    pub antibidiagonal: Vec<Vec<Num>>,
    pub jacobi: Vec<Vec<Num>>,
    /// Coefficients of `q_0, ..., q_n`, constant term first.
    pub q_polys: Vec<Vec<Num>>,
    pub diagnostics: Diagnostics,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardReport {
    pub backend: String,
    pub a: Vec<Num>,
    pub a_squared: Vec<Num>,
    /// Characteristic polynomial, constant term first.
    pub char_poly: Vec<Num>,
    pub systems_agree: bool,
    pub antibidiagonal: Vec<Vec<Num>>,
    pub jacobi: Vec<Vec<Num>>,
    /// Ascending; absent in the rational backend.
    pub eigenvalues: Option<Vec<f64>>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqrtDiagnostics {
    pub off_tridiagonal_mass: f64,
    pub spectrum_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqrtReport {
    pub backend: String,
    pub input: Vec<Num>,
    pub spectrum: Vec<Num>,
    pub a: Vec<Num>,
    pub antibidiagonal: Vec<Vec<Num>>,
    pub jacobi: Vec<Vec<Num>>,
    pub diagnostics: SqrtDiagnostics,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub order: usize,
    pub expected_sign: i8,
    pub conforming: bool,
    pub strict: bool,
    pub principal_conforming: bool,
    pub principal_strict: bool,
    pub minors_checked: usize,
    pub worst: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignregReport {
    pub backend: String,
    pub matrix: Vec<Vec<Num>>,
    pub signature: Vec<i8>,
    pub orders: Vec<OrderReport>,
    pub achieved_class: usize,
    pub strict: bool,
    pub principal_class: usize,
    pub conforms: bool,
    pub max_power: usize,
    /// Smallest `m` with `(A²)^m` totally positive, if found.
    pub class_plus: Option<usize>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub sizes: Vec<usize>,
    pub cases_per_size: usize,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

/// Any command's output.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Solve(SolveReport),
    Forward(ForwardReport),
    Sqrt(SqrtReport),
    Signreg(SignregReport),
    Verify(VerifyReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        let out = match self {
            Report::Solve(r) => serde_json::to_string_pretty(r),
            Report::Forward(r) => serde_json::to_string_pretty(r),
            Report::Sqrt(r) => serde_json::to_string_pretty(r),
            Report::Signreg(r) => serde_json::to_string_pretty(r),
            Report::Verify(r) => serde_json::to_string_pretty(r),
        };
        out.expect("reports contain only finite numbers and strings")
    }

    /// Long-format records `section,i,j,value`.
    pub fn to_csv(&self) -> String {
        let mut rec: Vec<[String; 4]> = Vec::new();
        let list = |rec: &mut Vec<[String; 4]>, name: &str, v: &[Num]| {
            for (i, x) in v.iter().enumerate() {
                rec.push([name.into(), (i + 1).to_string(), String::new(), x.full()]);
            }
        };
        let matrix = |rec: &mut Vec<[String; 4]>, name: &str, m: &[Vec<Num>]| {
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    rec.push([name.into(), (i + 1).to_string(), (j + 1).to_string(), x.full()]);
                }
            }
        };
        let scalar = |rec: &mut Vec<[String; 4]>, name: &str, v: String| {
            rec.push([name.into(), String::new(), String::new(), v]);
        };
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        match self {
            Report::Solve(r) => {
                scalar(&mut rec, "backend", r.backend.clone());
                list(&mut rec, "input", &r.input);
                list(&mut rec, "a", &r.a);
                list(&mut rec, "a_squared", &r.a_squared);
                matrix(&mut rec, "antibidiagonal", &r.antibidiagonal);
                matrix(&mut rec, "jacobi", &r.jacobi);
                let d = &r.diagnostics;
                scalar(&mut rec, "max_residual", d.max_residual.to_string());
                scalar(&mut rec, "roundtrip_error", opt(d.roundtrip_error));
                scalar(&mut rec, "min_modulus_gap", d.min_modulus_gap.to_string());
                if let Some(s) = &d.interlacing {
                    scalar(&mut rec, "interlacing_levels", s.levels_checked.to_string());
                    scalar(&mut rec, "interlacing_strict", s.strict.to_string());
                }
                for w in &r.warnings {
                    scalar(&mut rec, "warning", w.clone());
                }
            }
            Report::Forward(r) => {
                scalar(&mut rec, "backend", r.backend.clone());
                list(&mut rec, "a", &r.a);
                list(&mut rec, "a_squared", &r.a_squared);
                for (k, c) in r.char_poly.iter().enumerate() {
                    rec.push(["char_poly".into(), k.to_string(), String::new(), c.full()]);
                }
                scalar(&mut rec, "systems_agree", r.systems_agree.to_string());
                matrix(&mut rec, "antibidiagonal", &r.antibidiagonal);
                matrix(&mut rec, "jacobi", &r.jacobi);
                if let Some(e) = &r.eigenvalues {
                    let e: Vec<Num> = e.iter().map(|x| Num::Float(*x)).collect();
                    list(&mut rec, "eigenvalues", &e);
                }
                for w in &r.warnings {
                    scalar(&mut rec, "warning", w.clone());
                }
            }
            Report::Sqrt(r) => {
                scalar(&mut rec, "backend", r.backend.clone());
                list(&mut rec, "input", &r.input);
                list(&mut rec, "spectrum", &r.spectrum);
                list(&mut rec, "a", &r.a);
                matrix(&mut rec, "antibidiagonal", &r.antibidiagonal);
                matrix(&mut rec, "jacobi", &r.jacobi);
                scalar(&mut rec, "off_tridiagonal_mass", r.diagnostics.off_tridiagonal_mass.to_string());
                scalar(&mut rec, "spectrum_error", r.diagnostics.spectrum_error.to_string());
                for w in &r.warnings {
                    scalar(&mut rec, "warning", w.clone());
                }
            }
            Report::Signreg(r) => {
                scalar(&mut rec, "backend", r.backend.clone());
                matrix(&mut rec, "matrix", &r.matrix);
                for o in &r.orders {
                    let i = o.order.to_string();
                    rec.push(["expected_sign".into(), i.clone(), String::new(), o.expected_sign.to_string()]);
                    rec.push(["conforming".into(), i.clone(), String::new(), o.conforming.to_string()]);
                    rec.push(["strict".into(), i.clone(), String::new(), o.strict.to_string()]);
                    rec.push(["minors_checked".into(), i, String::new(), o.minors_checked.to_string()]);
                }
                scalar(&mut rec, "achieved_class", r.achieved_class.to_string());
                scalar(&mut rec, "principal_class", r.principal_class.to_string());
                scalar(&mut rec, "conforms", r.conforms.to_string());
                scalar(
                    &mut rec,
                    "class_plus",
                    r.class_plus.map(|m| m.to_string()).unwrap_or_default(),
                );
                for w in &r.warnings {
                    scalar(&mut rec, "warning", w.clone());
                }
            }
            Report::Verify(r) => {
                scalar(&mut rec, "seed", r.seed.to_string());
                for p in &r.properties {
                    rec.push([p.name.clone(), "cases".into(), String::new(), p.cases.to_string()]);
                    rec.push([p.name.clone(), "failures".into(), String::new(), p.failures.to_string()]);
                }
                scalar(&mut rec, "passed", r.passed.to_string());
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "i", "j", "value"]).expect("in-memory write");
        for r in &rec {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 records")
    }

    pub fn to_pretty(&self, verbose: bool) -> String {
        let mut out = String::new();
        match self {
            Report::Solve(r) => {
                line(&mut out, "backend", &r.backend);
                line(&mut out, "spectrum", &join(&r.input));
                out.push('\n');
                coefficient_table(&mut out, &r.a, &r.a_squared);
                out.push_str("\nanti-bidiagonal matrix\n");
                matrix_block(&mut out, &r.antibidiagonal);
                out.push_str("\nJacobi matrix\n");
                matrix_block(&mut out, &r.jacobi);
                if verbose {
                    out.push_str("\ncharacteristic polynomials of trailing blocks\n");
                    for (k, p) in r.q_polys.iter().enumerate() {
                        out.push_str(&format!("  q_{k:<3} {}\n", poly_string(p)));
                    }
                }
                let d = &r.diagnostics;
                out.push_str("\ndiagnostics\n");
                line(&mut out, "  max residual", &format!("{:.3e}", d.max_residual));
                if let Some(e) = d.roundtrip_error {
                    line(&mut out, "  roundtrip error", &format!("{e:.3e}"));
                }
                line(&mut out, "  min modulus gap", &short_float(d.min_modulus_gap));
                if let Some(s) = &d.interlacing {
                    let verdict = if s.strict { "strict" } else { "VIOLATED" };
                    line(
                        &mut out,
                        "  interlacing",
                        &format!("{verdict} ({} levels, {} violations)", s.levels_checked, s.violations),
                    );
                }
                warnings_block(&mut out, &r.warnings);
            }
            Report::Forward(r) => {
                line(&mut out, "backend", &r.backend);
                out.push('\n');
                coefficient_table(&mut out, &r.a, &r.a_squared);
                out.push('\n');
                line(&mut out, "characteristic polynomial", &poly_string(&r.char_poly));
                line(&mut out, "recurrences agree", if r.systems_agree { "yes" } else { "NO" });
                if let Some(e) = &r.eigenvalues {
                    let e: Vec<Num> = e.iter().map(|x| Num::Float(*x)).collect();
                    line(&mut out, "eigenvalues", &join(&e));
                }
                out.push_str("\nanti-bidiagonal matrix\n");
                matrix_block(&mut out, &r.antibidiagonal);
                out.push_str("\nJacobi matrix\n");
                matrix_block(&mut out, &r.jacobi);
                warnings_block(&mut out, &r.warnings);
            }
            Report::Sqrt(r) => {
                line(&mut out, "backend", &r.backend);
                line(&mut out, "mus", &join(&r.input));
                line(&mut out, "spectrum of A", &join(&r.spectrum));
                line(&mut out, "a", &join(&r.a));
                out.push_str("\nanti-bidiagonal square root A\n");
                matrix_block(&mut out, &r.antibidiagonal);
                out.push_str("\nJacobi matrix B = A²\n");
                matrix_block(&mut out, &r.jacobi);
                out.push_str("\ndiagnostics\n");
                line(
                    &mut out,
                    "  off-tridiagonal mass",
                    &format!("{:.3e}", r.diagnostics.off_tridiagonal_mass),
                );
                line(&mut out, "  spectrum error", &format!("{:.3e}", r.diagnostics.spectrum_error));
                warnings_block(&mut out, &r.warnings);
            }
            Report::Signreg(r) => {
                line(&mut out, "backend", &r.backend);
                out.push_str("matrix\n");
                matrix_block(&mut out, &r.matrix);
                out.push_str("\n order  sign  conforming  strict  principal  minors\n");
                for o in &r.orders {
                    out.push_str(&format!(
                        " {:>5}  {:>4}  {:>10}  {:>6}  {:>9}  {:>6}\n",
                        o.order,
                        if o.expected_sign > 0 { "+" } else { "-" },
                        yes_no(o.conforming),
                        yes_no(o.strict),
                        yes_no(o.principal_conforming),
                        o.minors_checked
                    ));
                    if verbose || !o.conforming {
                        if let Some(w) = &o.worst {
                            out.push_str(&format!(
                                "        worst minor rows {:?} cols {:?} = {}\n",
                                w.rows,
                                w.cols,
                                w.value.short()
                            ));
                        }
                    }
                }
                out.push('\n');
                line(&mut out, "achieved class", &r.achieved_class.to_string());
                line(&mut out, "principal class", &r.principal_class.to_string());
                line(&mut out, "strictly sign-regular", yes_no(r.strict));
                let plus = match r.class_plus {
                    Some(m) => format!("(A²)^{m} totally positive"),
                    None => format!("no totally positive (A²)^m for m <= {}", r.max_power),
                };
                line(&mut out, "class plus", &plus);
                warnings_block(&mut out, &r.warnings);
            }
            Report::Verify(r) => {
                line(&mut out, "seed", &r.seed.to_string());
                line(
                    &mut out,
                    "sizes",
                    &r.sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
                );
                out.push('\n');
                let width = r.properties.iter().map(|p| p.name.len()).max().unwrap_or(0);
                for p in &r.properties {
                    let status = if p.failures == 0 { "PASS" } else { "FAIL" };
                    out.push_str(&format!(
                        "{status}  {:<width$}  {} cases, {} failures\n",
                        p.name, p.cases, p.failures
                    ));
                    if let Some(f) = &p.first_failure {
                        out.push_str(&format!("      first failure: {f}\n"));
                    }
                }
                out.push('\n');
                line(&mut out, "result", if r.passed { "all properties hold" } else { "FAILURES" });
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn line(out: &mut String, key: &str, value: &str) {
    out.push_str(&format!("{key:<22} {value}\n"));
}

fn join(v: &[Num]) -> String {
    v.iter().map(Num::short).collect::<Vec<_>>().join(", ")
}

fn coefficient_table(out: &mut String, a: &[Num], sq: &[Num]) {
    let symbolic = a.iter().any(|x| matches!(x, Num::Exact(s) if s.starts_with("sqrt")));
    let col_a: Vec<String> = a
        .iter()
        .map(|x| match x {
            Num::Exact(s) if s.starts_with("sqrt") => format!("{s} ≈ {}", short_float(x.approx())),
            other => other.short(),
        })
        .collect();
    let col_sq: Vec<String> = sq.iter().map(Num::short).collect();
    let wa = col_a.iter().map(|s| s.chars().count()).max().unwrap_or(0).max(3);
    let wj = a.len().to_string().len().max(1);
    out.push_str(&format!(" {:>wj$}  {:<wa$}  a_j²\n", "j", "a_j"));
    for (j, (x, y)) in col_a.iter().zip(&col_sq).enumerate() {
        let pad = wa - x.chars().count();
        out.push_str(&format!(" {:>wj$}  {x}{}  {y}\n", j + 1, " ".repeat(pad)));
    }
    if symbolic {
        out.push_str(" (exact; irrational square roots shown symbolically)\n");
    }
}

fn matrix_block(out: &mut String, m: &[Vec<Num>]) {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(Num::short).collect()).collect();
    let w = cells
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    for row in &cells {
        out.push(' ');
        for c in row {
            let pad = w - c.chars().count();
            out.push_str(&format!(" {}{c}", " ".repeat(pad)));
        }
        out.push('\n');
    }
}

fn warnings_block(out: &mut String, warnings: &[String]) {
    if warnings.is_empty() {
        return;
    }
    out.push_str("\nwarnings\n");
    for w in warnings {
        out.push_str(&format!("  - {w}\n"));
    }
}

/// `λ^3 - 2λ^2 - 5λ + 6` from low-to-high coefficients.
pub fn poly_string(coeffs: &[Num]) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        let v = c.approx();
        if v == 0.0 {
            continue;
        }
        let text = c.short();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        let mag = if mag.contains('/') && k > 0 { format!("({mag})") } else { mag };
        let body = match (k, mag.as_str()) {
            (0, _) => mag.clone(),
            (1, "1") => "λ".into(),
            (_, "1") => format!("λ^{k}"),
            (1, _) => format!("{mag}λ"),
            _ => format!("{mag}λ^{k}"),
        };
        terms.push((neg, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push_str(&format!("-{body}")),
            (0, false) => s.push_str(&body),
            (_, true) => s.push_str(&format!(" - {body}")),
            (_, false) => s.push_str(&format!(" + {body}")),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use antibidiag::scalar::ratio;

    #[test]
    fn exact_roots() {
        assert_eq!(ratio(9, 4).root_num(), Num::Exact("3/2".into()));
        assert_eq!(ratio(2, 1).root_num(), Num::Exact("sqrt(2)".into()));
        assert!((Num::Exact("sqrt(2)".into()).approx() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn layouts() {
        let a: Vec<Num> = [1.0, 2.0, 3.0].iter().map(|v| Num::Float(*v)).collect();
        let anti = antibidiagonal_rows(&a);
        assert_eq!(anti[1][1], Num::Float(1.0));
        assert_eq!(anti[1][2], Num::Float(2.0));
        assert_eq!(anti[2][1], Num::Float(2.0));
        assert_eq!(anti[0][2], Num::Float(3.0));
        let jac = jacobi_rows(&a);
        assert_eq!(jac[0][0], Num::Float(1.0));
        assert_eq!(jac[1][2], Num::Float(3.0));
        assert_eq!(jac[1][1], Num::Float(0.0));
    }

    #[test]
    fn polynomial_text() {
        let p: Vec<Num> = [6.0, -5.0, -2.0, 1.0].iter().map(|v| Num::Float(*v)).collect();
        assert_eq!(poly_string(&p), "λ^3 - 2λ^2 - 5λ + 6");
    }

    #[test]
    fn float_shortening() {
        assert_eq!(short_float(2.0), "2");
        assert_eq!(short_float(2f64.sqrt()), "1.4142135624");
        assert_eq!(short_float(-0.5), "-0.5");
    }
}
