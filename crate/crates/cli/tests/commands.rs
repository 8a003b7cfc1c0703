use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hermicode(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermicode"))
        .args(args)
        .current_dir(cwd)
        .env_remove("HERMICODE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn value(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let out = hermicode(args, dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)["value"].to_string()
}

#[test]
fn enumerate_counts_and_cache_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = hermicode(&["enumerate", "--n", "1", "--q", "2"], dir.path());
    let v = json(&out);
    assert_eq!((v["points"].as_u64(), v["generators"].as_u64()), (Some(45), Some(27)));

    let a = hermicode(&["enumerate", "--n", "2", "--q", "2", "--cache-dir", "c", "--out", "a"], dir.path());
    assert_eq!(json(&a)["generators"].as_u64(), Some(891));
    assert!(dir.path().join("c/generators-p2-h1-n2.bin").exists());
    let b = Command::new(env!("CARGO_BIN_EXE_hermicode"))
        .args(["enumerate", "--n", "2", "--q", "2", "--out", "b"])
        .current_dir(dir.path())
        .env("HERMICODE_CACHE_DIR", "c")
        .env("RUST_LOG", "info")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&b.stderr).contains("cache hit"));
    assert_eq!(a.stdout, b.stdout);
    for f in ["points.jsonl", "generators.jsonl"] {
        let x = std::fs::read(dir.path().join("a").join(f)).unwrap();
        let y = std::fs::read(dir.path().join("b").join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
    let lines = std::fs::read_to_string(dir.path().join("a/points.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 694);
    assert!(lines.starts_with("{\"header\":"));
}

#[test]
fn count_examples() {
    assert_eq!(value(&["count", "--formula", "c_nj", "--n", "1", "--j", "1", "--qq", "2"]), "18");
    assert_eq!(value(&["count", "--formula", "N", "--n", "1", "--i", "-1", "--qq", "2"]), "1");
    assert_eq!(value(&["count", "--formula", "sigma", "--n", "2", "--i", "-1", "--qq", "2"]), "30");
    assert_eq!(value(&["count", "--formula", "sigma", "--n", "6", "--i", "-1", "--qq", "2"]), "\"36225/4\"");
    assert_eq!(value(&["count", "--formula", "n_P", "--n", "2", "--i", "0", "--case", "4", "--qq", "2"]), "8");
    assert_eq!(value(&["count", "--formula", "generators", "--n", "2", "--qq", "9"]), "27328");
    assert_eq!(value(&["count", "--formula", "min_weight", "--n", "2", "--p", "2", "--h", "1"]), "18");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["count", "--formula", "N", "--n", "1", "--i", "3", "--qq", "2"],
        vec!["count", "--formula", "bogus", "--qq", "2"],
        vec!["count", "--formula", "c_nj", "--n", "1", "--qq", "2"],
        vec!["verify", "--suite", "nonsense"],
        vec!["enumerate", "--qq", "6"],
        vec!["mindist", "--method", "guess"],
        vec!["frobnicate"],
    ] {
        let out = hermicode(&args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn verify_writes_csv_and_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = hermicode(&["verify", "--suite", "grassmann", "--trials", "2000", "--seed", "7", "--n", "2", "--out", "g.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("g.csv")).unwrap();
    assert!(text.contains("grassmann_identity,n=2 q=2,0/2000,0/2000,true"), "{text}");
    let again = hermicode(&["verify", "--suite", "grassmann", "--trials", "2000", "--seed", "7", "--n", "2"], dir.path());
    assert_eq!(again.stdout, text.as_bytes());

    let out = hermicode(&["verify", "--suite", "codewords", "--n", "2", "--qq", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn construct_mindist_peel_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let out = hermicode(&["construct", "--n", "2", "--qq", "2", "--i", "-1", "--alpha", "1", "--out", "w.json"], p);
    assert_eq!(out.status.code(), Some(0));
    let w: Value = serde_json::from_str(&std::fs::read_to_string(p.join("w.json")).unwrap()).unwrap();
    assert_eq!(w["weight"].as_u64(), Some(18));
    assert_eq!(w["header"]["seed"].as_u64(), Some(20_240_601));

    let out = hermicode(&["mindist", "--n", "1", "--qq", "2", "--method", "exhaustive"], p);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((r["d"].as_u64(), r["certified"].as_bool()), (Some(6), Some(true)));
    assert!(r["certificate"].is_array());

    // an uncertified run exits 3 but still reports the seeded bound
    let out = hermicode(&["mindist", "--n", "2", "--qq", "2", "--method", "bz", "--seed-word", "w.json", "--no-construct-seed"], p);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["d"].as_u64(), Some(18));

    // a seed word for another space is refused
    hermicode(&["construct", "--n", "1", "--qq", "2", "--i", "-1", "--out", "small.json"], p);
    let out = hermicode(&["mindist", "--n", "2", "--qq", "2", "--method", "bz", "--seed-word", "small.json"], p);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("headers disagree on n"));

    let out = hermicode(&["construct", "--n", "2", "--qq", "2", "--random", "3", "--seed", "11", "--out", "combo.json"], p);
    assert_eq!(out.status.code(), Some(0));
    let out = hermicode(&["peel", "--input", "combo.json"], p);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    assert_eq!(r["residual_weight"].as_u64(), Some(0));
    let steps = r["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    for s in steps {
        assert!(s["weight_after"].as_u64() < s["weight_before"].as_u64());
    }
}
