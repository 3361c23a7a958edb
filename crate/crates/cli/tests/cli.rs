use std::process::{Command, Output};

use serde_json::Value;

fn kyflat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kyflat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = kyflat(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn flatten_examples() {
    assert_eq!(json(&["flatten", "x1*x2*x3", "--kind", "cat", "--k", "1"])["rank"], "3");
    assert_eq!(
        json(&["flatten", "x1*x2*x3", "--kind", "koszul", "--k", "1", "--p", "1"])["rank"],
        "8"
    );
    let v = json(&[
        "flatten", "x1^3", "--n-vars", "3", "--kind", "koszul", "--k", "1", "--p", "2",
    ]);
    assert_eq!(v["rank"], "1");
    assert_eq!(v["n_cols"], "9");
    assert_eq!(
        json(&["flatten", "x1*x2*x3*x4", "--kind", "shifted", "--k", "1", "--l", "1"])["method"],
        "exact_rational"
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["flatten", "x1*x2*x3", "--kind", "koszul", "--k", "1"][..],
        &["flatten", "x1*x2*x3", "--kind", "cat", "--k", "3"],
        &["flatten", "x1*+x2", "--kind", "cat", "--k", "1"],
        &["verify", "nosuch"],
        &["verify", "rankchow", "--cap", "q=1"],
        &["bounds", "s", "--p", "0", "--d", "3", "--k", "1"],
        &[
            "--exact",
            "--modular",
            "bounds",
            "hook",
            "--d",
            "3",
            "--k",
            "1",
            "--p",
            "1",
        ],
        &["rank", "/nonexistent.mtx"],
    ] {
        let out = kyflat(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(kyflat(&["--help"]).status.code(), Some(0));
    assert_eq!(kyflat(&["--version"]).status.code(), Some(0));
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "rankchow", "nontrivial", "--cap", "d=4", "--seed", "11"];
    let a = kyflat(&args);
    let b = kyflat(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], "11");
    assert!(v["tool_version"].is_string());
    let cases = v["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    assert!(cases.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn verify_examples() {
    for (id, cap) in [("rankchow", "d=5"), ("kyfl11", "n=4,d=4"), ("NUMAB", "r=3,d=8")] {
        let v = json(&["verify", id, "--cap", cap]);
        for c in v["cases"].as_array().unwrap() {
            assert_ne!(c["status"], "fail", "{id}: {c}");
        }
    }
    let v = json(&["verify", "kyfl11", "--cap", "n=3,d=4"]);
    let witness_ranks: Vec<&Value> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["parameters"]["n"] == "3" && c["parameters"].get("check").is_none())
        .map(|c| &c["observed"])
        .collect();
    assert!(witness_ranks.iter().all(|r| *r == "8"));
}

#[test]
fn verify_text_and_csv() {
    let out = kyflat(&["--format", "text", "verify", "perm"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("0 failed"));
    let out = kyflat(&["--format", "csv", "verify", "perm"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("statement_id,"));
    assert!(header.contains(",k,") && header.contains(",n,"));
}

#[test]
fn scan_examples() {
    let v = json(&["scan", "x1*x2*x3"]);
    assert_eq!(v["lower"], "4");
    let v = json(&["scan", "x1*x2*x3*x4"]);
    assert_eq!(
        (&v["lower"], &v["best_k"], &v["best_p"]),
        (&"7".into(), &"2".into(), &"1".into())
    );
    let v = json(&["scan", "x1*x2*x3*x4*x5"]);
    assert_eq!(v["lower"], "13");
    assert!(v["note"].as_str().unwrap().contains("14"));
    let v = json(&["--budget-cols", "20", "scan", "x1*x2*x3*x4"]);
    assert!(v["cells"].as_array().unwrap().iter().any(|c| c["skipped"] == "true"));
}

#[test]
fn bounds_subcommands() {
    assert_eq!(json(&["bounds", "s", "--p", "1", "--d", "3", "--k", "1"])["value"], "8");
    assert_eq!(
        json(&["bounds", "hook", "--d", "4", "--k", "2", "--p", "1"])["value"],
        "20"
    );
    assert_eq!(json(&["bounds", "veronese", "--n", "3", "--p", "1"])["value"], "2");
    assert_eq!(json(&["bounds", "chowsrank", "--n", "2"])["bound"], "310/27");
    assert_eq!(
        json(&["bounds", "secant-cat", "--r", "2", "--d", "4", "--k", "2"])["value"],
        "12"
    );
    let v = json(&[
        "bounds", "psp", "--r", "2", "--delta1", "2", "--delta2", "2", "--k", "2",
    ]);
    assert_eq!((&v["lower"], &v["upper"]), (&"1".into(), &"3".into()));
    let v = json(&["bounds", "border", "x1*x2*x3*x4", "--k", "2", "--p", "1"]);
    assert_eq!(v["lower"], "7");
}

#[test]
fn permanent_ranks_and_gap() {
    let v = json(&["permanent", "--n", "4", "--r", "4", "--delta1", "2"]);
    assert_eq!(v["gap"], "9/16");
    let ranks = v["ranks"].as_array().unwrap();
    assert_eq!(ranks.len(), 2);
    assert_eq!(ranks[1]["rank"], "36");
}

#[test]
fn dump_and_rank_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.mtx");
    let p = path.to_str().unwrap();
    let v = json(&[
        "flatten", "x1*x2*x3", "--kind", "koszul", "--k", "1", "--p", "1", "--dump", p,
    ]);
    assert_eq!(v["rank"], "8");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general"));
    assert_eq!(json(&["rank", p])["rank"], "8");
    assert_eq!(json(&["--modular", "rank", p])["method"], "modular");
}

#[test]
fn poly_file_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("p.txt");
    std::fs::write(&poly, "x1*x2*x3\n").unwrap();
    let report = dir.path().join("r.json");
    let out = kyflat(&[
        "--out",
        report.to_str().unwrap(),
        "flatten",
        "--poly-file",
        poly.to_str().unwrap(),
        "--kind",
        "cat",
        "--k",
        "1",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["rank"], "3");
}
