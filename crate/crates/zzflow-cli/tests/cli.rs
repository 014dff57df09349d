//! Binary-level tests: documented example outputs, cache behavior, exit
//! codes, and the determinism/performance gate on the full check suite.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn zzflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zzflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = zzflow(args);
    assert!(out.status.success(), "{args:?} failed: {out:?}");
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    zzflow(args).status.code().expect("no signal")
}

#[test]
fn documented_examples() {
    assert_eq!(stdout_of(&["hstar", "--n", "5", "--method", "ehrhart"]), "1,7,7,1\n");
    assert_eq!(
        stdout_of(&[
            "offsets",
            "--n",
            "4",
            "--flow",
            r#"{"x":[0,1,1],"y":[0,0,0,1]}"#,
            "--i",
            "2",
        ]),
        "[1]\n"
    );
    let json = stdout_of(&["enumerate", "--n", "4", "--object", "flows", "--format", "json"]);
    let records: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(records.len(), 5);
    assert_eq!(records[0]["x"], serde_json::json!([0, 0, 0]));
}

#[test]
fn worked_example_moves_and_embedding() {
    assert_eq!(
        stdout_of(&[
            "move",
            "--n",
            "4",
            "--flow",
            r#"{"x":[0,1,2],"y":[0,0,0,0]}"#,
            "--i",
            "3",
            "--sign",
            "plus",
        ]),
        "x=[0,1,1] y=[0,0,0,1]\n"
    );
    assert_eq!(
        stdout_of(&[
            "move",
            "--n",
            "4",
            "--flow",
            r#"{"x":[0,1,1],"y":[0,0,0,1]}"#,
            "--i",
            "2",
            "--sign",
            "minus",
        ]),
        "not applicable\n"
    );
    let embed = stdout_of(&["embed", "--n", "4"]);
    assert!(embed.starts_with("n=4 nodes=5 edges=5\n"));
    assert!(embed.contains("node 4: x=[0,1,2] y=[0,0,0,0] @(0,0)"));
    let dot = stdout_of(&["dual", "--n", "4", "--format", "dot"]);
    assert!(dot.starts_with("digraph dual4 {\n"));
    assert_eq!(dot.matches(" -> ").count(), 5);
}

#[test]
fn track_mirrors_offsets() {
    let args = |grove: &str, i: &str| {
        vec![
            "track".to_string(),
            "--n".to_string(),
            "4".to_string(),
            "--grove".to_string(),
            grove.to_string(),
            "--i".to_string(),
            i.to_string(),
        ]
    };
    let run = |grove: &str, i: &str| {
        let owned = args(grove, i);
        let borrowed: Vec<&str> = owned.iter().map(String::as_str).collect();
        stdout_of(&borrowed)
    };
    // Base grove: offsets at 2 contain a zero, at 3 they are empty.
    assert_eq!(run(r#"{"trees":[[2,2,1],[3,3,1]]}"#, "2"), "failure tree=3\n");
    assert_eq!(run(r#"{"trees":[[2,2,1],[3,3,1]]}"#, "3"), "success\n");
}

fn cache_file(dir: &Path) -> std::path::PathBuf {
    dir.join("zz_5_cliques.json")
}

#[test]
fn cache_roundtrip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let base = ["enumerate", "--n", "5", "--object", "cliques", "--format", "json"];
    let uncached = stdout_of(&base);

    let mut cached_args = base.to_vec();
    cached_args.extend(["--cache", cache]);
    let cold = stdout_of(&cached_args);
    assert!(cache_file(dir.path()).exists());
    let warm = stdout_of(&cached_args);
    assert_eq!(uncached, cold);
    assert_eq!(cold, warm);

    // Text rendering is derived from the same cached items.
    let mut text_args = vec!["enumerate", "--n", "5", "--object", "cliques", "--cache", cache];
    let warm_text = stdout_of(&text_args);
    text_args.truncate(text_args.len() - 2);
    assert_eq!(warm_text, stdout_of(&text_args));
}

#[test]
fn stale_or_corrupt_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["enumerate", "--n", "5", "--object", "cliques", "--format", "json", "--cache", cache];
    let fresh = stdout_of(&args);

    std::fs::write(cache_file(dir.path()), "{not json").unwrap();
    assert_eq!(stdout_of(&args), fresh);

    // A version bump invalidates; the rewritten file carries the current one.
    let body = std::fs::read_to_string(cache_file(dir.path())).unwrap();
    std::fs::write(cache_file(dir.path()), body.replace("\"schema_version\":1", "\"schema_version\":0"))
        .unwrap();
    assert_eq!(stdout_of(&args), fresh);
    let body = std::fs::read_to_string(cache_file(dir.path())).unwrap();
    assert!(body.starts_with("{\"schema_version\":1,\"n\":5,\"object\":\"cliques\""));
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let direct = stdout_of(&["table1"]);
    let out = zzflow(&["table1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    assert_eq!(direct.lines().count(), 17);
}

#[test]
fn exit_codes() {
    // Invalid input: bad size, unknown check, malformed flow, n mismatch,
    // unsupported format.
    assert_eq!(exit_code(&["verify", "--n", "2"]), 2);
    assert_eq!(exit_code(&["verify", "--n", "4", "--checks", "nope"]), 2);
    assert_eq!(
        exit_code(&["offsets", "--n", "4", "--flow", r#"{"x":[9],"y":[]}"#, "--i", "2"]),
        2
    );
    assert_eq!(
        exit_code(&[
            "offsets",
            "--n",
            "5",
            "--flow",
            r#"{"n":4,"x":[0,1,2],"y":[0,0,0,0]}"#,
            "--i",
            "2",
        ]),
        2
    );
    assert_eq!(exit_code(&["enumerate", "--n", "4", "--object", "flows", "--format", "dot"]), 2);
    // Missing required flags is a usage error, also 2 (from the parser).
    assert_eq!(exit_code(&["enumerate", "--n", "4"]), 2);
    // Clean runs exit 0.
    assert_eq!(exit_code(&["verify", "--n", "4", "--checks", "graph/"]), 0);
}

#[test]
fn verify_output_is_independent_of_jobs() {
    let one = stdout_of(&["verify", "--n", "5", "--jobs", "1"]);
    let four = stdout_of(&["verify", "--n", "5", "--jobs", "4"]);
    assert_eq!(one, four);
    assert!(one.starts_with("n=5 checks=40\n"));
    assert!(one.trim_end().ends_with("summary pass=40 fail=0 finding=0"));
}

/// The full-suite gate: every check at n=8 on one thread, twice, with
/// byte-identical reports, inside the time budget.
#[test]
fn full_suite_n8_is_fast_and_deterministic() {
    let start = Instant::now();
    let args = ["verify", "--n", "8", "--checks", "all", "--jobs", "1"];
    let first = zzflow(&args);
    let second = zzflow(&args);
    assert_eq!(first.status.code(), Some(0), "{first:?}");
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.starts_with("n=8 checks=40\n"));
    assert!(text.trim_end().ends_with("summary pass=40 fail=0 finding=0"));
    let took = start.elapsed();
    assert!(took < Duration::from_secs(600), "two runs took {took:?}");
    println!("criterion 7: pass - verify --n 8 --checks all twice in {took:?}, identical bytes");
}

#[test]
fn json_report_and_hstar_methods() {
    let json = stdout_of(&["verify", "--n", "4", "--checks", "graph/", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(report["n"], 4);
    assert_eq!(report["checks"].as_array().unwrap().len(), 4);
    assert_eq!(report["checks"][0]["status"], "pass");

    for method in ["ehrhart", "swap", "des", "sz", "zs", "shelling-forward", "shelling-reverse"] {
        assert_eq!(stdout_of(&["hstar", "--n", "5", "--method", method]), "1,7,7,1\n");
    }
    assert_eq!(stdout_of(&["hstar", "--n", "4", "--method", "ehrhart", "--format", "json"]), "[1,3,1]\n");
}
