use std::path::PathBuf;
use std::process::{Command, Output};

fn plethys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plethys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn spec_file(name: &str, json: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("plethys-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, json).unwrap();
    path
}

#[test]
fn expand_ass_as_text() {
    let out = plethys(&["expand", "ass", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "p1 + 1/2 p2 + 1/2 p1^2");
}

#[test]
fn expand_b1_with_empty_spec_is_zero() {
    let spec = spec_file("empty", "{}");
    let out = plethys(&[
        "expand",
        "b1",
        "--spec",
        spec.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["terms"], serde_json::json!([]));
}

#[test]
fn expand_dih_is_wreath_json() {
    let out = plethys(&["expand", "dih", "--max-degree", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let classes: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["monomial"][0]["class"].as_str().unwrap())
        .collect();
    assert_eq!(classes.len(), 2);
    assert!(classes.contains(&"e") && classes.contains(&"t"));
}

#[test]
fn enumerate_small_censuses() {
    let spec = spec_file("tri", r#"{"genus0": {"3": [[3]]}}"#);
    let spec = spec.to_str().unwrap();
    for (family, n) in [
        ("necklace", "1"),
        ("rooted-tree", "2"),
        ("oriented-necklace", "1"),
    ] {
        let out = plethys(&[
            "enumerate",
            family,
            "--n",
            n,
            "--spec",
            spec,
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        assert_eq!(last["summary"], true);
        assert_eq!(last["classes"], 1, "{family}");
    }
}

#[test]
fn verify_reports_pass_and_fail() {
    let out = plethys(&["verify", "bb", "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS bb"));
    // at degree 1 the vertex-only dihedral plethysm still agrees, so the negative control fails
    let out = plethys(&[
        "verify",
        "negative-dih",
        "--max-degree",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn exit_codes_for_bad_input_and_budget() {
    assert_eq!(plethys(&["verify", "nonsense"]).status.code(), Some(2));
    let bad = spec_file("bad", r#"{"genus0": {"2": [[2]]}}"#);
    assert_eq!(
        plethys(&["expand", "b1", "--spec", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        plethys(&["enumerate", "necklace", "--n", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        plethys(&["enumerate", "necklace", "--n", "6"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        plethys(&[
            "verify",
            "theorem",
            "--max-degree",
            "3",
            "--budget-half-edges",
            "4"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn thread_cap_is_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_plethys"))
        .args(["verify", "generating", "--max-degree", "5"])
        .env("PLETHYS_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_plethys"))
        .args(["verify", "bb"])
        .env("PLETHYS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
