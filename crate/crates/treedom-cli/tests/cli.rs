//! End-to-end checks of the binary: exit codes, formats, file outputs.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn treedom(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treedom"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_reads_edge_lists_and_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = dir.path().join("p5.txt");
    fs::write(&p5, "5\n0 1\n1 2\n2 3\n3 4\n").unwrap();

    let out = treedom(&["solve", "--input", "p5.txt"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("gamma = 2"), "{text}");
    assert!(text.contains("gamma-t = 3"), "{text}");
    assert!(text.contains("gamma-t2 = 2"), "{text}");

    let p6 = dir.path().join("p6.g6");
    fs::write(&p6, "EhCG\n").unwrap(); // path on six vertices
    let out = treedom(
        &["solve", "--input", "p6.g6", "--format", "json"],
        dir.path(),
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let values: Vec<(String, u64)> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["param"].as_str().unwrap().to_string(),
                r["value"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        values,
        vec![
            ("gamma".into(), 2),
            ("gamma-t".into(), 4),
            ("gamma-t2".into(), 3)
        ]
    );
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    fs::write(&bad, "~zz\n").unwrap();
    let out = treedom(&["solve", "--input", "bad.g6"], dir.path());
    assert_eq!(out.status.code(), Some(2), "malformed graph6");

    let cycle = dir.path().join("cycle.txt");
    fs::write(&cycle, "3\n0 1\n1 2\n2 0\n").unwrap();
    let out = treedom(&["solve", "--input", "cycle.txt"], dir.path());
    assert_eq!(out.status.code(), Some(3), "cycle is not a tree");

    let single = dir.path().join("k1.txt");
    fs::write(&single, "1\n").unwrap();
    let out = treedom(&["solve", "--input", "k1.txt"], dir.path());
    assert_eq!(out.status.code(), Some(3), "isolated vertex");

    let p5 = dir.path().join("p5.txt");
    fs::write(&p5, "5\n0 1\n1 2\n2 3\n3 4\n").unwrap();
    let out = treedom(
        &["solve", "--input", "p5.txt", "--params", "gamma-almost:9"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2), "vertex out of range");
    let out = treedom(
        &["solve", "--input", "p5.txt", "--params", "bogus"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2), "unknown parameter");

    let out = treedom(&["solve", "--input", "missing.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2), "missing file");
}

#[test]
fn verify_bound_passes_and_respects_guardrail() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = treedom(
        &[
            "verify-bound",
            "--n-max",
            "9",
            "--jobs",
            "2",
            "--format",
            "json",
            "--out",
            "report.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["check"], "verify-bound");
    assert_eq!(doc["violations"].as_array().unwrap().len(), 0);
    assert_eq!(doc["per_order"]["5"]["extremal"], 1);
    let on_disk: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(on_disk["trees_examined"], doc["trees_examined"]);

    let out = treedom(
        &["verify-bound", "--n-max", "9", "--guardrail-n", "6"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4), "guardrail exceeded");
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = treedom(
            &[
                "verify-gamma-eq",
                "--n-max",
                "7",
                "--jobs",
                "3",
                "--format",
                "json",
            ],
            dir.path(),
        );
        assert!(out.status.success());
        let mut doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        doc.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&doc).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn generate_family_censuses() {
    let dir = tempfile::tempdir().unwrap();
    let out = treedom(
        &[
            "generate",
            "--family",
            "t",
            "--n-max",
            "5",
            "--out",
            "t5.g6",
            "--labeled-out",
            "t5.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let lines: Vec<String> = fs::read_to_string(dir.path().join("t5.g6"))
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 1);
    // the only member is P5
    assert_eq!(lines[0], "DhC");
    let counts: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("t5.g6.counts.json")).unwrap())
            .unwrap();
    assert_eq!(counts["5"], 1);
    assert_eq!(counts["4"], 0);
    let labeled: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("t5.json")).unwrap()).unwrap();
    assert_eq!(labeled.as_array().unwrap().len(), 1);
    assert_eq!(labeled[0]["status"].as_array().unwrap().len(), 5);

    // family minimum order is five: an n-max of four gives an empty census
    let out = treedom(
        &["generate", "--family", "t", "--n-max", "4", "--out", "t4.g6"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("t4.g6")).unwrap(), "");
    let counts: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("t4.g6.counts.json")).unwrap())
            .unwrap();
    assert!(counts.as_object().unwrap().values().all(|v| v == 0));

    let out = treedom(
        &["generate", "--family", "o", "--n-max", "4", "--out", "o4.g6"],
        dir.path(),
    );
    assert!(out.status.success());
    let lines: Vec<String> = fs::read_to_string(dir.path().join("o4.g6"))
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    // the only member is P4
    assert_eq!(lines, vec!["Ch"]);
}

#[test]
fn guardrail_env_variable_sets_the_ceiling() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_treedom"))
        .args(["verify-bound", "--n-max", "8"])
        .env("TREEDOM_GUARDRAIL_N", "6")
        .current_dir(dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(4));

    // an explicit flag overrides the environment
    let out = Command::new(env!("CARGO_BIN_EXE_treedom"))
        .args(["verify-bound", "--n-max", "8", "--guardrail-n", "10"])
        .env("TREEDOM_GUARDRAIL_N", "6")
        .current_dir(dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn enumerate_writes_graph6_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = treedom(&["enumerate", "--n", "7", "--out", "t7.g6"], dir.path());
    assert!(out.status.success());
    let body = fs::read_to_string(dir.path().join("t7.g6")).unwrap();
    assert_eq!(body.lines().count(), 11);

    let out = treedom(&["enumerate", "--n", "1", "--out", "t1.g6"], dir.path());
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("t1.g6")).unwrap(), "@\n");
}
