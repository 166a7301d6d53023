use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothquot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn single_smooth_case_as_json() {
    let out = run(&["--json", "case", "--m", "6", "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 1);
    let c = &cases[0];
    assert_eq!(c["case"]["m"], 6);
    assert_eq!(c["case"]["p"], 1);
    assert_eq!(c["case"]["delta"], "0");
    assert_eq!(c["verdict"], "smooth");
    assert_eq!(c["match"], true);
    assert_eq!(c["expectation"]["expected"], "smooth-example-a");
    assert!(c.get("witness").is_none());
}

#[test]
fn not_smooth_case_reports_a_witness() {
    let out = run(&[
        "--json",
        "--spot-samples",
        "0",
        "case",
        "--m",
        "6",
        "--p",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["cases"][0];
    assert_eq!(c["verdict"], "not-smooth");
    let w = &c["witness"];
    assert!(w["stabilizer_order"].as_u64().unwrap() > 1);
    assert!(
        w["reflection_subgroup_order"].as_u64().unwrap() < w["stabilizer_order"].as_u64().unwrap()
    );
    assert_eq!(
        w["stabilizer"].as_array().unwrap().len() as u64,
        w["stabilizer_order"].as_u64().unwrap()
    );
}

#[test]
fn classify_matches_and_is_deterministic() {
    let a = run(&["--json", "classify"]);
    let b = run(&["--json", "classify"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["rejected"][0]["m"], 2);
    assert!(v["violations"].as_array().unwrap().is_empty());
    assert!(v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["match"] != false));

    let human = run(&["classify"]);
    let text = String::from_utf8(human.stdout).unwrap();
    assert!(text.contains("0 mismatched"));
    assert!(text.contains("witness"));
}

#[test]
fn delta_selection_forms() {
    let listing = json(&run(&["--json", "deltas", "--m", "2", "--p", "1"]));
    let n = listing["deltas"].as_array().unwrap().len();
    assert!(n >= 3);
    let by_index = run(&[
        "--json",
        "--spot-samples",
        "0",
        "case",
        "--m",
        "2",
        "--p",
        "1",
        "--delta",
        "#1",
    ]);
    assert_eq!(by_index.status.code(), Some(0));
    let explicit = run(&[
        "--json",
        "--spot-samples",
        "0",
        "case",
        "--m",
        "2",
        "--p",
        "1",
        "--delta",
        "1/2,0,1/2,0;0,1/2,0,1/2",
    ]);
    assert_eq!(explicit.status.code(), Some(0));
    assert_eq!(json(&explicit)["cases"][0]["verdict"], "smooth");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(
        run(&["case", "--m", "5", "--p", "1"]).status.code(),
        Some(64)
    );
    assert_eq!(
        run(&["case", "--m", "2", "--p", "2"]).status.code(),
        Some(64)
    );
    assert_eq!(
        run(&["case", "--m", "2", "--p", "1", "--delta", "1/2,0,0,0"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        run(&["--max-torsion", "0", "classify"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn checks_subcommands_pass() {
    for cmd in ["identities", "example-c", "branch"] {
        let out = run(&[cmd]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert!(!out.stdout.is_empty());
    }
    let checks = json(&run(&["--json", "identities"]));
    assert!(checks
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn custom_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case.toml");
    std::fs::write(
        &path,
        r#"
name = "order 16 group"
ring = 4
generators = [
    [["-1", "1+i"], ["0", "1"]],
    [["-i", "i-1"], ["0", "i"]],
    [["-1", "0"], ["i-1", "1"]],
]
"#,
    )
    .unwrap();
    let out = run(&["--json", "custom", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["cases"][0];
    assert_eq!(c["verdict"], "smooth");
    assert_eq!(c["match"], Value::Null);

    std::fs::write(&path, "ring = 4\nunknown = 1\ngenerators = []\n").unwrap();
    assert_eq!(
        run(&["custom", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(64)
    );
    let missing = dir.path().join("missing.toml");
    assert_eq!(
        run(&["custom", "--config", missing.to_str().unwrap()])
            .status
            .code(),
        Some(64)
    );
}
