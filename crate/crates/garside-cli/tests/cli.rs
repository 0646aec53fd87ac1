//! End-to-end exit-code contract: 0 pass, 1 checked-and-failed, 2 input error.

use std::path::Path;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_garside")
}

fn run(args: &[&str], dir: &Path) -> (i32, String, String) {
    let out = Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("GARSIDE_CACHE")
        .output()
        .expect("spawn garside");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn pmul_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // free-group table: exit 0
    let free = r#"{
        "elements": ["e", "s1", "s2"],
        "identity": "e",
        "products": [["e","e","e"],["e","s1","s1"],["e","s2","s2"],["s1","e","s1"],["s2","e","s2"]]
    }"#;
    std::fs::write(dir.path().join("free.json"), free).unwrap();
    let (code, _, _) = run(&["check-pmul", "free.json"], dir.path());
    assert_eq!(code, 0);

    // broken cancellability: exit 1 with the violation listed
    let broken = r#"{
        "elements": ["e", "u", "v", "w", "z"],
        "identity": "e",
        "products": [
            ["e","e","e"],["e","u","u"],["e","v","v"],["e","w","w"],["e","z","z"],
            ["u","e","u"],["v","e","v"],["w","e","w"],["z","e","z"],
            ["u","v","z"],["u","w","z"]
        ]
    }"#;
    std::fs::write(dir.path().join("broken.json"), broken).unwrap();
    let (code, out, _) = run(&["check-pmul", "broken.json"], dir.path());
    assert_eq!(code, 1);
    assert!(out.contains("left-cancellability"));

    // nonexistent path: exit 2
    let (code, _, err) = run(&["check-pmul", "missing.json"], dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn artin_exit_codes_and_negative_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["gen", "table1", "3-3-3-4", "--out", "c.json"], dir.path());
    assert_eq!(code, 0);
    let (code, _, _) = run(&["artin", "check", "c.json"], dir.path());
    assert_eq!(code, 0);

    let (code, _, _) = run(&["gen", "figure2", "--out", "f2.json"], dir.path());
    assert_eq!(code, 0);
    let (code, out, _) = run(&["artin", "negative", "f2.json", "--format", "json"], dir.path());
    assert_eq!(code, 1, "negative run must exit 1 with the expected failure");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mixed_condition_violation"]["condition"], "mixed-join-condition");
    let witness: Vec<String> = v["mixed_condition_violation"]["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(witness, vec!["a", "b", "u", "v"]);

    let (code, _, _) = run(&["gen", "figure3", "--out", "f3.json"], dir.path());
    assert_eq!(code, 0);
    let (code, out, _) = run(&["artin", "negative", "f3.json", "--format", "json"], dir.path());
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mixed_condition_violation"]["condition"], "mixed-join-condition");
    // the line also violates the one-sided closure bullet, which is reported first
    assert_eq!(v["first_violation"]["condition"], "left-join-closure");

    // build without override on a failing graph: exit 1, no ucert
    let (code, _, _) = run(&["artin", "build", "f2.json"], dir.path());
    assert_eq!(code, 1);
    assert!(!dir.path().join("f2.ucert.json").exists());
}

#[test]
fn artin_build_emits_ucert() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "triangle", "3", "3", "3", "--out", "t.json"], dir.path());
    let (code, _, _) = run(&["artin", "build", "t.json", "--out", "t.ucert.json"], dir.path());
    assert_eq!(code, 0);
    let ucert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.ucert.json")).unwrap())
            .unwrap();
    assert_eq!(ucert["members"].as_array().unwrap().len(), 10);
}

#[test]
fn nf_and_pres() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "klein", "--out", "k.json"], dir.path());
    let (code, _, _) = run(&["pres", "k.json"], dir.path());
    assert_eq!(code, 0, "Klein table certifies");
    let (_, out_a, _) = run(&["nf", "k.json", "a1", "a1"], dir.path());
    let (_, out_b, _) = run(&["nf", "k.json", "a2", "a2"], dir.path());
    assert_eq!(out_a, out_b, "the two squares have the same normal form");
    let (_, out_delta, _) = run(&["nf", "k.json", "delta"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&out_delta).unwrap();
    assert_eq!(v["inf"], 1);
    assert!(v["factors"].as_array().unwrap().is_empty());
    // cancellation through a formal inverse
    let (_, out_c, _) = run(&["nf", "k.json", "a1", "a1'"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&out_c).unwrap();
    assert_eq!(v["inf"], 0);
    assert!(v["factors"].as_array().unwrap().is_empty());
    // unknown simple: exit 2
    let (code, _, _) = run(&["nf", "k.json", "nope"], dir.path());
    assert_eq!(code, 2);
}

#[test]
fn gen_unknown_name() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["gen", "qwe"], dir.path());
    assert_eq!(code, 2);
}

#[test]
fn cache_reports_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "table1", "3-3-3-4", "--out", "c.json"], dir.path());
    let cache = dir.path().join("cache");
    let args = |_: ()| {
        vec![
            "artin".to_string(),
            "check".into(),
            "c.json".into(),
            "--cache-dir".into(),
            cache.display().to_string(),
            "--format".into(),
            "json".into(),
        ]
    };
    let run_once = || {
        let out = Command::new(bin())
            .args(args(()))
            .current_dir(dir.path())
            .output()
            .unwrap();
        (out.status.code().unwrap(), out.stdout)
    };
    let (c1, cold) = run_once();
    let (c2, warm) = run_once();
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(cold, warm, "cache hit must produce byte-identical reports");
}

#[test]
fn dot_parses_as_graphviz_shape() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "free", "2", "--out", "fr.json"], dir.path());
    let (code, out, _) = run(&["dot", "fr.json"], dir.path());
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert!(out.trim_end().ends_with('}'));
}

#[test]
fn jobs_one_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "table1", "3-3-3-4", "--out", "c.json"], dir.path());
    let (_, a, _) = run(&["artin", "check", "c.json", "--format", "json", "--jobs", "1"], dir.path());
    let (_, b, _) = run(&["artin", "check", "c.json", "--format", "json"], dir.path());
    assert_eq!(a, b, "witness output must not depend on the parallelism degree");
}
