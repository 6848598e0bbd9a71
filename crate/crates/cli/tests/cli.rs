use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> String {
    manifest_dir().join("tests/data").join(name).to_string_lossy().into_owned()
}

fn cstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cstar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Compares against `tests/golden/<name>`; set `UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, actual: &str) {
    let path = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn probe_multiplier_csv() {
    let out = cstar(&["probe", "multiplier", "--sizes", "1,9", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    golden("probe_multiplier.csv", &text);
    let gammas: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!((gammas[0] - 0.5).abs() < 1e-12 && (gammas[1] - 0.1).abs() < 1e-12);
}

#[test]
fn probe_nonclosed_square_text() {
    let out = cstar(&["probe", "nonclosed-square", "--sizes", "4,8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    golden("probe_nonclosed_square.txt", &text);
    assert!(text.contains("gamma_f2 strictly decreasing: true"));
}

#[test]
fn probe_rejects_bad_input() {
    assert_eq!(cstar(&["probe", "multiplier", "--sizes", ""]).status.code(), Some(2));
    assert_eq!(cstar(&["probe", "multiplier"]).status.code(), Some(2));
    assert_eq!(cstar(&["probe", "nope", "--sizes", "2"]).status.code(), Some(2));
}

#[test]
fn analyze_identity_is_trivial() {
    let out = cstar(&["analyze", &data("identity.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "fredholm.kernel.dim: 0",
        "fredholm.index: [0 0]",
        "drazin.drazin_index: 0",
        "b_fredholm.stabilization_exponent: 0",
        "geometry.violations: 0",
    ] {
        assert!(text.contains(line), "missing `{line}`");
    }
}

#[test]
fn analyze_jordan_json() {
    let out = cstar(&["analyze", &data("jordan.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    golden("analyze_jordan.json", &text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["drazin"]["drazin_index"], 2);
    assert_eq!(v["b_fredholm"]["stabilization_exponent"], 2);
    assert_eq!(v["fredholm"]["index"], serde_json::json!([0]));
}

#[test]
fn malformed_input_is_a_data_error() {
    let out = cstar(&["analyze", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6"), "{err}");
    assert_eq!(cstar(&["analyze", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn geometry_of_two_lines() {
    let out = cstar(&["geometry", &data("line.json"), &data("tilted.json"), "--samples", "500"]);
    assert_eq!(out.status.code(), Some(0));
    golden("geometry_lines.txt", &stdout(&out));
}

#[test]
fn drazin_with_commuting_partner() {
    let out = cstar(&["drazin", &data("jordan.json"), "--with", &data("jordan.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("criterion.verdict: true"));
    assert!(text.contains("browder.holds: true"));
}

#[test]
fn banach_perturbation_and_product() {
    let out = cstar(&[
        "banach",
        &data("jordan.json"),
        "--perturb",
        &data("rank_one.json"),
        "--left",
        &data("jordan.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["operator"]["index"], 0);
    assert_eq!(v["product"]["verdict"], true);
    assert!(v["perturbation"]["dim_ker_sum"].is_u64());
}

#[test]
fn verify_text_golden() {
    let out = cstar(&["verify", "drazin-axioms", "--n", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    golden("verify_drazin_axioms.txt", &stdout(&out));
}

#[test]
fn verify_exit_codes() {
    let out = cstar(&["verify", "dual", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("warning: no instances requested"));
    assert_eq!(cstar(&["verify", "unknown-suite"]).status.code(), Some(2));
    assert_eq!(cstar(&["verify", "dual", "--n", "3", "--tol-rank", "0"]).status.code(), Some(2));
}

#[test]
fn verify_is_byte_deterministic_and_writes_out() {
    let dir = std::env::temp_dir().join(format!("cstar-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = |i: usize| dir.join(format!("run{i}.json"));
    for i in 0..2 {
        let p = path(i);
        let out = cstar(&[
            "verify",
            "closed-sum",
            "--n",
            "12",
            "--seed",
            "3",
            "--samples",
            "200",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let a = fs::read(path(0)).unwrap();
    let b = fs::read(path(1)).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let _ = fs::remove_dir_all(Path::new(&dir));
}
