//! End-to-end tests of the girth8 binary: exit codes, report shape,
//! golden comparison, and parallel invariance at the process level.

use std::path::Path;
use std::process::{Command, Output};

fn girth8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_girth8"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn body_lines(stdout: &[u8]) -> Vec<String> {
    let text = String::from_utf8_lossy(stdout);
    text.lines()
        .filter(|l| !l.starts_with("{\"tool\":"))
        .map(str::to_string)
        .collect()
}

#[test]
fn scan_emits_header_then_jsonl_body() {
    let out = girth8(&["scan", "--q", "9", "--kind", "joint", "--method", "both"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("{\"tool\":\"girth8\""));
    assert!(header.contains("\"timestamp_unix\":"));
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 8); // k in [1, 8]
    for line in &body {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["q"], 9);
        assert!(!v["timestamp_unix"].is_number(), "timestamps belong in the header");
    }
    // joint PPs at q = 9 are exactly the 3-powers 1 and 3
    let pps: Vec<u64> = body
        .iter()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|v| v["pp"] == true)
        .map(|v| v["k"].as_u64().unwrap())
        .collect();
    assert_eq!(pps, vec![1, 3]);
}

#[test]
fn scan_parallel_invariance_across_processes() {
    let one = girth8(&["scan", "--q", "27", "--method", "both", "--jobs", "1"]);
    let four = girth8(&["scan", "--q", "27", "--method", "both", "--jobs", "4"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(body_lines(&one.stdout), body_lines(&four.stdout));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(girth8(&["scan"]).status.code(), Some(2)); // no --q
    assert_eq!(girth8(&["scan", "--q", "12"]).status.code(), Some(2)); // not a prime power
    assert_eq!(girth8(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        girth8(&["girth", "--q", "5", "--target", "single"]).status.code(),
        Some(2) // missing --exponents
    );
    assert_eq!(
        girth8(&["scan", "--q", "9", "--k-from", "5", "--k-to", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn golden_match_exits_0_and_mismatch_exits_1() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../goldens/v1/girth-census-q3.jsonl");
    let golden = golden.to_str().unwrap();
    let ok = girth8(&[
        "girth", "--q", "3", "--target", "full", "--mode", "full", "--golden", golden,
    ]);
    assert_eq!(ok.status.code(), Some(0));

    // symmetry mode produces the same girths, so it must still match
    let sym = girth8(&[
        "girth", "--q", "3", "--target", "full", "--mode", "symmetry", "--golden", golden,
    ]);
    assert_eq!(sym.status.code(), Some(0));

    // a different census cannot match the q=3 golden
    let bad = girth8(&[
        "girth", "--q", "5", "--target", "gamma3", "--golden", golden,
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn gamma3_golden_across_q() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../goldens/v1/gamma3-girth.jsonl");
    let out = girth8(&[
        "girth", "--q", "3", "--q", "5", "--q", "7", "--q", "9", "--q", "11", "--q", "13",
        "--target", "gamma3", "--mode", "full", "--golden", golden.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alpha.jsonl");
    let out = girth8(&["alpha", "--p-max", "50", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 15); // header + 14 odd primes up to 47
    let last: serde_json::Value = serde_json::from_str(lines[14]).unwrap();
    assert_eq!(last["p"], 47);
    assert_eq!(last["alpha"], 18);
    assert_eq!(last["is_exception"], true);
}

#[test]
fn csv_format_has_header_row() {
    let out = girth8(&["alpha", "--p-max", "20", "--format", "csv"]);
    assert!(out.status.success());
    let body = body_lines(&out.stdout);
    assert_eq!(body[0], "p,alpha,is_exception");
    assert_eq!(body[1], "3,2,false");
}

#[test]
fn filters_subcommand_with_soundness() {
    let out = girth8(&["filters", "--q", "27", "--soundness"]);
    assert_eq!(out.status.code(), Some(0));
    let body = body_lines(&out.stdout);
    assert_eq!(body.len(), 26);
    let k3: serde_json::Value = serde_json::from_str(&body[2]).unwrap();
    assert_eq!(k3["k"], 3);
    assert_eq!(k3["survives_all"], true);
}

#[test]
fn powsum_xcheck_subcommand() {
    let out = girth8(&["powsum-xcheck", "--q", "8", "--q", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let body = body_lines(&out.stdout);
    assert_eq!(body.len(), 2);
    for line in body {
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["mismatches"], 0);
    }
}

#[test]
fn hermite_method_flag() {
    let out = girth8(&["scan", "--q", "25", "--kind", "a", "--method", "hermite"]);
    assert_eq!(out.status.code(), Some(0));
    let pps: Vec<u64> = body_lines(&out.stdout)
        .iter()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|v| v["pp"] == true)
        .map(|v| v["k"].as_u64().unwrap())
        .collect();
    assert_eq!(pps, vec![1, 5]);
}
