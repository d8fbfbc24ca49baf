//! End-to-end tests of the `linkhom` binary.

use std::process::{Command, Output};

fn linkhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkhom"))
        .args(args)
        .env("LINKHOM_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_plain_worked_example() {
    let out = linkhom(&["analyze", "--ell", "1,1,1,1,1,4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P5 = 1 + t^9"), "{text}");
    assert!(text.contains("P3 = 1 + t^2 + t^4 + t^6"), "{text}");
    assert!(text.contains("mu = (1, 1, 1, 1)"), "{text}");
}

#[test]
fn analyze_chi_example() {
    let out = linkhom(&["analyze", "--ell", "1,1,1,1,1,3,3,6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("chi(M6) = 5"), "{text}");
    assert!(text.contains("chi(M4) = 3"), "{text}");
}

#[test]
fn analyze_reports_median_witness() {
    let out = linkhom(&["analyze", "--ell", "1,1,1,1"]);
    assert!(out.status.success(), "non-generic input is a report, not a failure");
    assert!(stdout(&out).contains("median subset {1,2}"));
}

#[test]
fn analyze_json_is_stable_and_parseable() {
    let a = linkhom(&["analyze", "--ell", "1,1,1,1,1,4", "--format", "json"]);
    let b = linkhom(&["analyze", "--ell", "1,1,1,1,1,4", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical output for identical input");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["generic"], true);
    assert_eq!(v["a"], serde_json::json!([1, 0, 0, 0]));
    let p5: Vec<i64> = v["p5"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect();
    assert_eq!(p5, vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
}

#[test]
fn analyze_rejects_bad_input() {
    let out = linkhom(&["analyze", "--ell", "1,x,3"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position"), "{err}");
}

#[test]
fn analyze_latex_polynomials() {
    let out = linkhom(&["analyze", "--ell", "1,1,1,1,1,4", "--format", "latex"]);
    assert!(stdout(&out).contains("P5 = 1 + t^{9}"));
}

#[test]
fn pair_values() {
    let out = linkhom(&["pair", "--d", "5", "--k", "3"]);
    let text = stdout(&out);
    assert!(text.starts_with("t^9\n"), "{text}");
    let out = linkhom(&["pair", "--d", "4", "--k", "2"]);
    let text = stdout(&out);
    assert!(text.contains("t^5"));
    assert!(text.contains("chi = -1"));
    let out = linkhom(&["pair", "--d", "5", "--k", "1"]);
    assert!(stdout(&out).starts_with("0\n"));
}

#[test]
fn complex_homology_table() {
    let out = linkhom(&["complex", "--m", "1", "--j", "3"]);
    let text = stdout(&out);
    assert!(text.contains("H_0 = Z/2"), "{text}");
    assert!(text.contains("H_2 = Z"), "{text}");
    let out = linkhom(&["complex", "--m", "0", "--j", "1"]);
    let text = stdout(&out);
    assert!(text.contains("1 generators"), "{text}");
    assert!(text.contains("H_0 = Z"), "{text}");
    // guard refuses m > 6 without --force
    let out = linkhom(&["complex", "--m", "7", "--j", "2"]);
    assert!(!out.status.success());
}

#[test]
fn complex_json_has_sparse_boundaries() {
    let out = linkhom(&["complex", "--m", "1", "--j", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // d(2) = 2 (1): one triplet in degree 1
    let triplets = v["boundaries"][1]["triplets"].as_array().unwrap();
    assert_eq!(triplets.len(), 1);
    assert_eq!(triplets[0], serde_json::json!([0, 0, 2]));
    assert_eq!(v["homology"][0]["torsion"], serde_json::json!([2]));
}

#[test]
fn chambers_census_n3() {
    let out = linkhom(&["chambers", "--n", "3"]);
    let text = stdout(&out);
    assert!(text.contains("total: 2 chambers"), "{text}");
    let out = linkhom(&["chambers", "--n", "3", "--nonempty"]);
    assert!(stdout(&out).contains("total: 1 chambers"));
    // guard refuses n > 8 without --force
    let out = linkhom(&["chambers", "--n", "9"]);
    assert!(!out.status.success());
}

#[test]
fn verify_scope_generators_passes() {
    let out = linkhom(&["verify", "--scope", "generators", "--seed", "7"]);
    assert!(out.status.success(), "exit code 0 when all checks pass");
    let text = stdout(&out);
    assert!(text.contains("PASS generators"));
    assert!(text.contains("0 failures"));
}

#[test]
fn verify_json_stream() {
    let out = linkhom(&[
        "verify", "--scope", "pair", "--seed", "7", "--format", "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["pass"], true);
    let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(last["summary"]["failures"], 0);
}
