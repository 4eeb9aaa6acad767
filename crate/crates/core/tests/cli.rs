//! End-to-end runs of the `kk7` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn kk7(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kk7"))
        .args(args)
        .env_remove("KK7_PRECISION")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn solve_cole_hopf() {
    let out = scratch("cole_hopf.json");
    let o = kk7(&[
        "solve",
        "--ansatz",
        "cole-hopf",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("A = 1/2"), "{text}");
    assert!(text.contains("B = -1/24*k^2"));
    assert!(text.contains("omega = -1/48*k^7"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let comps = json["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["values"]["A"], "1/2");
    assert_eq!(comps[0]["free"][0], "k");
}

#[test]
fn verify_all_passes() {
    let o = kk7(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    assert_eq!(passes, 19, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn continuation_of_u1() {
    let o = kk7(&["continue", "--id", "u1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn usage_errors() {
    assert_eq!(kk7(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(kk7(&[]).status.code(), Some(2));
    let empty = kk7(&[
        "derive",
        "--ansatz",
        "tanh-coth",
        "--fix",
        "a=0",
        "--fix",
        "b=0",
        "--fix",
        "c=0",
        "--fix",
        "d=0",
    ]);
    assert_eq!(empty.status.code(), Some(2), "{}", stdout(&empty));
    let bad_fix = kk7(&["derive", "--ansatz", "cole-hopf", "--fix", "nope=1"]);
    assert_eq!(bad_fix.status.code(), Some(2));
    let low = Command::new(env!("CARGO_BIN_EXE_kk7"))
        .args(["verify", "--id", "u9"])
        .env("KK7_PRECISION", "20")
        .output()
        .unwrap();
    assert_eq!(low.status.code(), Some(2));
}

#[test]
fn degree_bound_exit_code() {
    let out = scratch("bounded.json");
    let o = kk7(&[
        "solve",
        "--ansatz",
        "tanh-coth",
        "--degree-bound",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn catalog_json_is_stable() {
    let a = kk7(&["catalog", "--format", "json"]);
    let b = kk7(&["catalog", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 19);
    assert_eq!(entries[9]["id"], "u9");
}

#[test]
fn small_simulation_is_deterministic() {
    let run = |name: &str| {
        let out = scratch(name);
        let o = kk7(&[
            "simulate",
            "--id",
            "u9",
            "--n",
            "64",
            "--dt",
            "1e-5",
            "--T",
            "1e-3",
            "--every",
            "25",
            "--out",
            out.to_str().unwrap(),
        ]);
        (o, std::fs::read_to_string(out).unwrap())
    };
    let (o, a) = run("sim_a.csv");
    let (_, b) = run("sim_b.csv");
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("t,mass,l2,max_error"));
    assert_eq!(lines.count(), 5);
    // the coarse grid still tracks the soliton to well under the default bound
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn singular_entries_cannot_be_simulated() {
    let out = scratch("never.csv");
    let o = kk7(&["simulate", "--id", "u1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
