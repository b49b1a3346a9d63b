// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::{Command, Output};

const PROBLEM: &str = "7N/1b3RN1/7k/6b1/KBp4p/5q2/6Q1/7n w - - 0 1";
const START: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";
const BAIRD: &str = "1 B 6, 2 kt 5, p 1 Kt 1 P 2 R, P 1 K 3 Kt 1, 4 P k 2, 1 Q 2 p 2 p, 6 kt P, 1 B 4 R 1.";

fn fenrw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fenrw"))
        .args(args)
        .output()
        .expect("run fenrw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn moves_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn validate() {
    let o = fenrw(&["validate", PROBLEM]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{PROBLEM}\n"));

    let o = fenrw(&["validate", "garbage"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SegmentCount"));

    let o = fenrw(&["validate", "8/8/8/8/8/8/8/9 w - - 0 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("RankWidth"));

    let o = fenrw(&["validate", "--validation", "strict", "8/8/8/8/8/8/8/8 w - - 0 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("StrictViolation"));
}

#[test]
fn apply_tables() {
    let o = fenrw(&["apply", PROBLEM, "f7f6", "--clock-mode", "frozen"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "7N/1b4N1/5R1k/6b1/KBp4p/5q2/6Q1/7n b - - 0 1\n");

    let o = fenrw(&["apply", PROBLEM, "f7c7", "--clock-mode", "frozen"]);
    assert_eq!(stdout(&o), "7N/1bR3N1/7k/6b1/KBp4p/5q2/6Q1/7n b - - 0 1\n");
}

#[test]
fn apply_output_revalidates() {
    let o = fenrw(&["apply", START, "e2-e4"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    let v = fenrw(&["validate", out.trim()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), out);
}

#[test]
fn apply_errors() {
    let o = fenrw(&["apply", PROBLEM, "a3b4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("EmptyOrigin"));

    let o = fenrw(&["apply", PROBLEM, "zz"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BadMoveSyntax"));

    let o = fenrw(&["apply", "bad", "e2e4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apply_record_output() {
    let o = fenrw(&["apply", "4k3/8/8/8/8/8/8/4K2R w K - 0 1", "e1g1", "--output", "record"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["fen_after"], "4k3/8/8/8/8/8/8/5RK1 b - - 1 1");
    assert_eq!(v["segments_touched"], serde_json::json!([7]));
    assert_eq!(v["special"], "castle-kingside");
    assert!(v["error"].is_null());

    let o = fenrw(&["apply", PROBLEM, "a3b4", "--output", "record"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"], "EmptyOrigin");
}

#[test]
fn play() {
    let f = moves_file("e2e4\n# reply\ne7e5  # symmetric\n\n");
    let o = fenrw(&["play", START, f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[1],
        "rnbqkbnr/pppp1ppp/8/4p3/4P3/8/PPPP1PPP/RNBQKBNR w KQkq e6 0 2"
    );

    let f = moves_file("");
    let o = fenrw(&["play", START, f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());

    let f = moves_file("e2e4\ne2e4\n");
    let o = fenrw(&["play", START, f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o).lines().count(), 1);
    let err = stderr(&o);
    assert!(err.contains("ply 2"), "{err}");
    assert!(err.contains("EmptyOrigin"), "{err}");
}

#[test]
fn fuzz() {
    let a = fenrw(&["fuzz", "--seed", "1", "--iterations", "1000"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("0 mismatches"));
    let b = fenrw(&["fuzz", "--seed", "1", "--iterations", "1000"]);
    assert_eq!(a.stdout, b.stdout);

    let o = fenrw(&["fuzz", "--iterations", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench() {
    let o = fenrw(&["bench", "--iterations", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("iterations: 500"));
    assert!(out.contains("ops/sec"));
    assert!(out.contains("ratio"));

    let o = fenrw(&["bench", "--iterations", "300", "--output", "record"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["segment_ops_per_sec"].as_f64().unwrap() > 0.0);
    assert!(v["array_ops_per_sec"].as_f64().unwrap() > 0.0);
}

#[test]
fn convert_forsyth() {
    let o = fenrw(&["convert-forsyth", BAIRD]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1B6/2n5/p1N1P2R/P1K3N1/4Pk2/1Q2p2p/6nP/1B4R1 w - - 0 1\n");

    let o = fenrw(&["convert-forsyth", "8, 8, 8, 8, 8, 8, 8, 8"]);
    assert_eq!(stdout(&o), "8/8/8/8/8/8/8/8 w - - 0 1\n");

    let o = fenrw(&["convert-forsyth", BAIRD, "--side", "b"]);
    assert_eq!(stdout(&o), "1B6/2n5/p1N1P2R/P1K3N1/4Pk2/1Q2p2p/6nP/1B4R1 b - - 0 1\n");

    let o = fenrw(&["convert-forsyth", "--validation", "strict", BAIRD]);
    assert_eq!(o.status.code(), Some(0));

    let o = fenrw(&["convert-forsyth", "1 B 7, 8, 8, 8, 8, 8, 8, 8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("RankWidth"));
}
