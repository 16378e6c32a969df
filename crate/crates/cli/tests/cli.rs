use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use skewci::manifest::compile;
use skewci::{parse_manifest, run_manifest, Overrides};
use skewci_core::coeff::{Field, RatFunc, Rational};
use skewci_core::freealg::parse_scalar;
use skewci_core::geometry::PointSequence;

fn manifest(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("manifests")
        .join(name)
}

fn skewci(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_skewci"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn run_prints_report_and_exits_zero() {
    let out = skewci(&["run", manifest("clifford3_regular.toml").to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["settings"]["max_degree"], 12);
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("skewci-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "name = \"bad\"\ngenerators = [\"x\"]\ncommands = [\"hilbert\"]\nrelations = [\"x + x^2\"]\n").unwrap();
    let out = skewci(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("relations"));
    assert_eq!(
        skewci(&["validate", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        skewci(&["run", dir.join("missing.toml").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validate_accepts_bundled() {
    let out = skewci(&["validate", manifest("clifford2.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn overrides_take_precedence() {
    let out = skewci(&[
        "run",
        manifest("skew3_squares.toml").to_str().unwrap(),
        "--max-degree",
        "8",
        "--seed",
        "7",
        "--primes",
        "101,103",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["settings"]["max_degree"], 8);
    assert_eq!(v["settings"]["seed"], 7);
    assert_eq!(v["settings"]["primes"], serde_json::json!([101, 103]));
}

#[test]
fn environment_sets_degree() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewci"))
        .args(["run", manifest("skew3_squares.toml").to_str().unwrap()])
        .env("SKEWCI_MAX_DEGREE", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["settings"]["max_degree"], 7);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("skewci-out-{}.json", std::process::id()));
    let out = skewci(&[
        "run",
        manifest("clifford2.toml").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["input"]["name"], "clifford2");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn alarm_exits_three() {
    // the single family misses the point (0:1), which a^2 and a*b annihilate;
    // flagging it exhaustive makes IV hold exactly, and the probe contradicts it
    let text = r#"
name = "false-exhaustive"
generators = ["a", "b"]
commands = ["conditions"]
relations = ["a*b - b*a"]
sequence = ["a^2", "a*b"]
families_exhaustive = true

[[families]]
points = [["a", "0"]]
"#;
    let dir = std::env::temp_dir().join(format!("skewci-alarm-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("alarm.toml");
    std::fs::write(&path, text).unwrap();
    let out = skewci(&["run", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v["alarms"].as_array().unwrap().is_empty());
    assert!(!out.stderr.is_empty());
}

fn coords(v: &Value) -> Vec<Vec<Rational>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| {
            p.as_array()
                .unwrap()
                .iter()
                .map(|c| {
                    parse_scalar(c.as_str().unwrap())
                        .unwrap()
                        .to_rational()
                        .unwrap()
                })
                .collect()
        })
        .collect()
}

#[test]
fn reported_witnesses_verify_after_reload() {
    let path = manifest("quantum_matrices_q3.toml");
    let text = std::fs::read_to_string(&path).unwrap();
    let m = parse_manifest(&text).unwrap();
    let out = run_manifest(&m, &text, &Overrides::default()).unwrap();
    let s = serde_json::to_string(&out.report).unwrap();
    let back: Value = serde_json::from_str(&s).unwrap();
    let cond = back["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["command"] == "conditions")
        .unwrap();
    let seq = PointSequence {
        points: coords(&cond["IV"]["witness"]),
    };
    let q = Rational::integer(3);
    let c = compile::<Rational>(&m, &|x: &RatFunc| x.eval(&q)).unwrap();
    let mut conds = c.presentation.unwrap().relations().to_vec();
    conds.extend(c.sequence.iter().cloned());
    assert!(seq.satisfies(&conds));

    let bpf = run_manifest(
        &parse_manifest(&std::fs::read_to_string(manifest("clifford2.toml")).unwrap()).unwrap(),
        "",
        &Overrides::default(),
    )
    .unwrap()
    .report;
    let r = bpf["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["command"] == "base-point-free")
        .unwrap();
    let w = coords(&r["witness"]);
    let c2 = compile::<Rational>(
        &parse_manifest(&std::fs::read_to_string(manifest("clifford2.toml")).unwrap()).unwrap(),
        &|x: &RatFunc| x.to_rational(),
    )
    .unwrap();
    let qs = c2.gsca.unwrap().quadric_system();
    for f in qs.quadrics() {
        assert!(skewci_core::freealg::evaluate_window_at(f, &[&w[0], &w[1]]).is_zero());
    }
}

#[test]
fn reports_are_deterministic_across_processes() {
    for name in ["clifford3_fourth_powers.toml", "quantum_matrices_q3.toml"] {
        let a = skewci(&["run", manifest(name).to_str().unwrap()]);
        let b = skewci(&["run", manifest(name).to_str().unwrap()]);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}
