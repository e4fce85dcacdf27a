//! End-to-end runs of the `perron` binary: exit codes are a stable
//! contract and scripted runs key off them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn perron() -> Command {
    Command::new(env!("CARGO_BIN_EXE_perron"))
}

fn run(args: &[&str]) -> Output {
    perron().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_reports_cycle_structure() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&[
        "generate",
        "cycle",
        "--p",
        "3",
        "--out",
        dir.path().join("c3.mtx").to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let out = run(&["analyze", dir.path().join("c3.mtx").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["irreducibility"]["period"], 3);
    assert_eq!(report["cyclicity"]["cyclic"], true);
    assert_eq!(report["spectrum"]["peripheral"].as_array().unwrap().len(), 3);
    // report round-trips losslessly through its serialized form
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(report, reparsed);
}

#[test]
fn analyze_rejects_non_square_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.mtx",
        "%%MatrixMarket matrix array real general\n2 3\n1\n1\n1\n1\n1\n1\n",
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "diagnostic: {err}");
    assert!(err.contains("not square"), "diagnostic: {err}");
}

#[test]
fn analyze_rejects_tiny_negative_entry_naming_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "neg.mtx",
        "%%MatrixMarket matrix array real general\n2 2\n1\n-1e-15\n0\n1\n",
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(2,1)"), "diagnostic should name the entry: {err}");

    // spectral-only mode admits it
    let out = run(&["analyze", path.to_str().unwrap(), "--allow-general"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn growth_emits_exponent_footer() {
    let dir = tempfile::tempdir().unwrap();
    run(&[
        "generate",
        "jordan",
        "--m",
        "2",
        "--out",
        dir.path().join("j2.mtx").to_str().unwrap(),
    ]);
    let out = run(&[
        "growth",
        dir.path().join("j2.mtx").to_str().unwrap(),
        "--lambda",
        "1+0i",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let footer: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# fitted_exponent = "))
        .expect("footer present")
        .parse()
        .unwrap();
    assert!((footer - 2.0).abs() < 0.1, "exponent {footer}");

    // missing --lambda defaults to 1+0i, recorded in the header
    let out = run(&["growth", dir.path().join("j2.mtx").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# lambda = 1"), "{text}");
}

#[test]
fn growth_demands_unit_radius_without_rescale() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "two.mtx",
        "%%MatrixMarket matrix array real general\n1 1\n2\n",
    );
    let out = run(&["growth", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["growth", path.to_str().unwrap(), "--rescale"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn growth_two_cycle_along_minus_one() {
    let dir = tempfile::tempdir().unwrap();
    run(&[
        "generate",
        "cycle",
        "--p",
        "2",
        "--out",
        dir.path().join("c2.mtx").to_str().unwrap(),
    ]);
    let out = run(&[
        "growth",
        dir.path().join("c2.mtx").to_str().unwrap(),
        "--lambda",
        "-1+0i",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let footer: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# fitted_exponent = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((footer - 1.0).abs() < 0.1, "exponent {footer}");
}

#[test]
fn verify_exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = dir.path().join("c3.mtx");
    run(&["generate", "cycle", "--p", "3", "--out", c3.to_str().unwrap()]);
    // conclusion holds
    let out = run(&["verify", "thm5.8", c3.to_str().unwrap(), "--scheme", "cesaro"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let verdict: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict["verdict"]["conclusion"], "Holds");
    assert!(verdict["subchecks"].as_array().unwrap().len() == 7);

    // hypothesis failure: exit 10
    let j2 = dir.path().join("j2.mtx");
    run(&["generate", "jordan", "--m", "2", "--out", j2.to_str().unwrap()]);
    let out = run(&[
        "verify",
        "thm4.1",
        j2.to_str().unwrap(),
        "--lambda",
        "1+0i",
    ]);
    assert_eq!(out.status.code(), Some(10));

    // decorated instance at -1: exit 0
    let j2c2 = dir.path().join("j2c2.mtx");
    run(&[
        "generate", "jordan", "--m", "2", "--decorate", "2", "--out",
        j2c2.to_str().unwrap(),
    ]);
    let out = run(&[
        "verify",
        "thm4.1",
        j2c2.to_str().unwrap(),
        "--lambda",
        "-1+0i",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // cor4.2 on J_3(1): exit 10
    let j3 = dir.path().join("j3.mtx");
    run(&["generate", "jordan", "--m", "3", "--out", j3.to_str().unwrap()]);
    let out = run(&["verify", "cor4.2", j3.to_str().unwrap(), "--lambda", "1+0i"]);
    assert_eq!(out.status.code(), Some(10));

    // unknown id: exit 2
    let out = run(&["verify", "nosuch", c3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.mtx");
    let b = dir.path().join("b.mtx");
    run(&["generate", "stochastic", "--n", "6", "--seed", "1", "--out", a.to_str().unwrap()]);
    run(&["generate", "stochastic", "--n", "6", "--seed", "1", "--out", b.to_str().unwrap()]);
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "same seed must produce identical files"
    );
    // sidecar exists and declares the family
    let truth: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.truth.json")).unwrap())
            .unwrap();
    assert_eq!(truth["family"], "stochastic");
    assert_eq!(truth["irreducible"], true);
}

#[test]
fn generate_rejects_bad_params() {
    let out = run(&["generate", "cycle", "--out", "/tmp/never.mtx"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["generate", "nosuchfamily", "--out", "/tmp/never.mtx"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_appendix_on_reducible_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.mtx");
    run(&["generate", "reducible", "--n", "6", "--seed", "4", "--out", path.to_str().unwrap()]);
    // default ideal: smallest nontrivial invariant ideal
    let out = run(&["verify", "appA1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // explicit ideal from the sidecar
    let truth: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.truth.json")).unwrap())
            .unwrap();
    let planted: Vec<u64> = truth["planted_ideal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() + 1)
        .collect();
    let spec = planted
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let out = run(&["verify", "appA1", path.to_str().unwrap(), "--ideal", &spec]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_matrix_input_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "m.json", r#"{"n":2,"rows":[[1,1],[0,1]]}"#);
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["spectrum"]["records"][0]["index"], 2);
    assert_eq!(report["boundedness"]["power"]["status"], "UnboundedDetected");
}

#[test]
fn output_files_are_written_atomically_and_match_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = dir.path().join("c2.mtx");
    run(&["generate", "cycle", "--p", "2", "--out", c2.to_str().unwrap()]);
    let to_file = dir.path().join("report.json");
    let out1 = run(&[
        "analyze",
        c2.to_str().unwrap(),
        "--out",
        to_file.to_str().unwrap(),
    ]);
    assert_eq!(out1.status.code(), Some(0));
    let out2 = run(&["analyze", c2.to_str().unwrap()]);
    let from_file = std::fs::read_to_string(&to_file).unwrap();
    let from_stdout = String::from_utf8(out2.stdout).unwrap();
    assert_eq!(from_file.trim(), from_stdout.trim());
}
