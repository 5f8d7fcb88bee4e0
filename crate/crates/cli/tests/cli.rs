use std::io::Write;

use antibidiag::sampling::random_spectrum;
use antibidiag_cli::report::{Num, SignregReport, SolveReport, SqrtReport, VerifyReport};
use assert_cmd::Command;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bin() -> Command {
    Command::cargo_bin("antibidiag").unwrap()
}

fn json_of(args: &[&str]) -> String {
    let out = bin().args(args).args(["--format", "json"]).assert().success();
    String::from_utf8(out.get_output().stdout.clone()).unwrap()
}

fn floats(v: &[Num]) -> Vec<f64> {
    v.iter().map(Num::approx).collect()
}

#[test]
fn worked_solve_pretty_golden() {
    bin()
        .args(["solve", "--spectrum", "3,-2,1"])
        .assert()
        .success()
        .stdout(
            "\
backend                float64
spectrum               3, -2, 1

 j  a_j           a_j²
 1  2             4
 2  1.4142135624  2
 3  1.7320508076  3

anti-bidiagonal matrix
             0            0 1.7320508076
             0            2 1.4142135624
  1.7320508076 1.4142135624            0

Jacobi matrix
             2 1.4142135624            0
  1.4142135624            0 1.7320508076
             0 1.7320508076            0

diagnostics
  max residual         0.000e0
  min modulus gap      1
  interlacing          strict (2 levels, 0 violations)
",
        );
}

#[test]
fn worked_solve_json() {
    let report: SolveReport = serde_json::from_str(&json_of(&["solve", "--spectrum", "3,-2,1"])).unwrap();
    let a = floats(&report.a);
    let expect = [2.0, 2f64.sqrt(), 3f64.sqrt()];
    for (x, y) in a.iter().zip(expect) {
        assert!((x - y).abs() < 1e-12);
    }
    assert_eq!(report.a_squared.len(), 3);
    assert_eq!(report.antibidiagonal[0][2], report.a[2]);
    assert_eq!(report.jacobi[0][0], report.a[0]);
    assert!(report.diagnostics.interlacing.unwrap().strict);
}

#[test]
fn worked_solve_rational_is_exact() {
    let text = json_of(&["solve", "--spectrum", "3,-2,1", "--backend", "rational"]);
    let report: SolveReport = serde_json::from_str(&text).unwrap();
    let sq: Vec<Num> = ["4", "2", "3"].iter().map(|s| Num::Exact(s.to_string())).collect();
    assert_eq!(report.a_squared, sq);
    assert_eq!(report.a[1], Num::Exact("sqrt(2)".into()));
    assert_eq!(report.diagnostics.max_residual, 0.0);
    assert!(report.diagnostics.interlacing.is_none());
}

#[test]
fn rational_literals_in_input() {
    let text = json_of(&["solve", "--spectrum", "3/2,-1/2", "--backend", "rational"]);
    let report: SolveReport = serde_json::from_str(&text).unwrap();
    // q_2 = λ^2 - λ - 3/4, so a_1 = 1 and a_2^2 = 3/4
    assert_eq!(report.a_squared, vec![Num::Exact("1".into()), Num::Exact("3/4".into())]);
    assert_eq!(report.a[1], Num::Exact("sqrt(3/4)".into()));
}

#[test]
fn sqrt_worked_matrix() {
    let report: SqrtReport = serde_json::from_str(&json_of(&["sqrt", "--mus", "9,4,1"])).unwrap();
    let s6 = 6f64.sqrt();
    let s8 = 8f64.sqrt();
    let expect = [[3.0, s6, 0.0], [s6, 6.0, s8], [0.0, s8, 5.0]];
    for i in 0..3 {
        for j in 0..3 {
            assert!((report.jacobi[i][j].approx() - expect[i][j]).abs() <= 1e-12);
        }
    }
}

#[test]
fn signreg_worked_instance() {
    let report: SignregReport = serde_json::from_str(&json_of(&["signreg", "--spectrum", "3,-2,1"])).unwrap();
    assert!(report.conforms);
    assert_eq!(report.signature, vec![1, -1, -1]);
    assert_eq!(report.class_plus, Some(2));
    let exact: SignregReport =
        serde_json::from_str(&json_of(&["signreg", "--a", "2,1,1", "--backend", "rational"])).unwrap();
    assert!(exact.conforms);
}

#[test]
fn forward_reports_both_systems() {
    let text = json_of(&["forward", "--a", "2,1/1,3/2", "--backend", "rational"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["systems_agree"], true);
    assert!(v["eigenvalues"].is_null());
    let text = json_of(&["forward", "--a", "1,2,3"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 3);
}

#[test]
fn rejections_have_documented_exit_codes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["solve", "--spectrum", "1,2"], 1, "NotAlternating"),
        (&["solve", "--spectrum", "2,-2"], 1, "NotStrictlyDecreasingModulus"),
        (&["solve", "--spectrum", "-1"], 1, "NonPositiveLead"),
        (&["solve", "--spectrum", ""], 1, "EmptyInput"),
        (&["solve", "--spectrum", "1,x"], 1, "Parse"),
        (&["forward", "--a", "1,0"], 1, "NonPositiveEntry"),
        (&["sqrt", "--mus", "1,2"], 1, "NotDecreasing"),
        (&["sqrt", "--mus", "9,4,1", "--backend", "rational"], 3, "BackendUnsupported"),
        (&["roundtrip", "--spectrum", "3,-2,1", "--backend", "rational"], 3, "BackendUnsupported"),
        (&["solve"], 3, "Usage"),
        (&["solve", "--a", "1"], 3, "Usage"),
        (&["solve", "--spectrum", "3,-2,1", "--tol-abs", "-1"], 3, "InvalidTolerance"),
        (&["solve", "--spectrum", "5,-4.9999999999,4.9999999998,-4.9999999997"], 2, "NonPositiveA"),
    ];
    for (args, code, name) in cases {
        let out = bin().args(*args).assert().code(*code).stdout("");
        let err = String::from_utf8(out.get_output().stderr.clone()).unwrap();
        assert!(err.contains(name), "{args:?}: {err}");
    }
    bin().arg("frobnicate").assert().code(3);
    bin().arg("--help").assert().code(0);
    bin().arg("--version").assert().code(0);
}

#[test]
fn clustered_moduli_break_down_in_float_but_not_exactly() {
    let spectrum = "5,-4.9999999999,4.9999999998,-4.9999999997";
    bin().args(["solve", "--spectrum", spectrum]).assert().code(2).stdout("");
    bin()
        .args(["solve", "--spectrum", spectrum, "--backend", "rational"])
        .assert()
        .success();
}

#[test]
fn file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    std::fs::write(&json, r#"{"spectrum": [3, -2, 1]}"#).unwrap();
    let csv = dir.path().join("s.csv");
    let mut f = std::fs::File::create(&csv).unwrap();
    writeln!(f, "3\n-2\n1").unwrap();
    let inline = json_of(&["solve", "--spectrum", "3,-2,1"]);
    assert_eq!(json_of(&["solve", "--input", json.to_str().unwrap()]), inline);
    assert_eq!(json_of(&["solve", "--input", csv.to_str().unwrap()]), inline);
    let mus = dir.path().join("m.json");
    std::fs::write(&mus, r#"{"mus": ["9", "4", "1"]}"#).unwrap();
    bin().args(["sqrt", "--input", mus.to_str().unwrap()]).assert().success();
    bin().args(["solve", "--input", mus.to_str().unwrap()]).assert().code(1);
    bin().args(["solve", "--input", "/nonexistent/file"]).assert().code(3);
}

#[test]
fn csv_output_is_long_format() {
    let out = bin()
        .args(["solve", "--spectrum", "3,-2,1", "--format", "csv"])
        .assert()
        .success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("section,i,j,value"));
    assert!(text.contains("a_squared,2,,2\n"));
    assert!(text.contains("jacobi,1,1,2\n"));
}

#[test]
fn verify_all_is_deterministic() {
    let run = || {
        let out = bin()
            .args(["verify-all", "--seed", "42", "--sizes", "1-6", "--cases", "3", "--format", "json"])
            .assert()
            .success();
        String::from_utf8(out.get_output().stdout.clone()).unwrap()
    };
    let first = run();
    assert_eq!(first, run());
    let report: VerifyReport = serde_json::from_str(&first).unwrap();
    assert!(report.passed);
    assert_eq!(report.sizes, vec![1, 2, 3, 4, 5, 6]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn json_report_roundtrips(seed in any::<u64>(), n in 1usize..=8, rational in any::<bool>()) {
        let lambdas = random_spectrum(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.1, 10.0, 0.1);
        let list = lambdas.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        let backend = if rational { "rational" } else { "float64" };
        let text = json_of(&["solve", "--spectrum", &list, "--backend", backend]);
        let report: SolveReport = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
        prop_assert_eq!(&again, &text);
        let reparsed: SolveReport = serde_json::from_str(&again).unwrap();
        prop_assert_eq!(reparsed, report);
    }
}
