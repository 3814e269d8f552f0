use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hypermono::experiment::{preset, ExperimentSpec};
use hypermono::io;
use hypermono::limits::DiscreteLaw;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermono"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_then_moments() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ap.json");
    let out = run(&[
        "construct",
        "ap",
        "--n",
        "10",
        "--r",
        "3",
        "--out",
        p(&file),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let h = io::read_hypergraph(&file).unwrap();
    assert_eq!(h.num_edges(), 20);

    let out = run(&[
        "moments",
        p(&file),
        "--c",
        "2",
        "--c",
        "5",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "c,layer,mean,variance");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("2,1,5e0,"));

    let out = run(&["moments", p(&file), "--c", "4"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json[0]["moments"]["means"][0], 1.25);
}

#[test]
fn exact_and_simulate_laws() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    fs::write(
        &file,
        r#"{"uniformity":3,"num_vertices":4,"edges":[[0,1,2],[1,2,3]]}"#,
    )
    .unwrap();
    let out = run(&["exact", p(&file), "--c", "2"]);
    let law: DiscreteLaw = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(law.prob(&[2]), 0.125);
    assert_eq!(law.prob(&[1]), 0.25);

    let sim = |shards: &str| {
        stdout(&run(&[
            "simulate",
            p(&file),
            "--c",
            "2",
            "--replicates",
            "5000",
            "--seed",
            "3",
            "--shards",
            shards,
            "--format",
            "csv",
        ]))
    };
    assert_eq!(sim("1"), sim("4"));
    assert!(sim("1").starts_with("t1,probability\n"));
}

#[test]
fn limit_laws_from_flags() {
    let out = run(&["limit", "poisson", "--rates", "0.5", "--format", "csv"]);
    assert!(stdout(&out).starts_with("t1,probability\n0,6.065306597126334e-1"));
    let out = run(&[
        "limit",
        "shared",
        "--component",
        "1=0.7",
        "--component",
        "2=0.7",
        "--component",
        "1,2=0.3",
    ]);
    let law: DiscreteLaw = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(law.dimension(), 2);
    let out = run(&["limit", "binom2", "--mu", "1"]);
    assert!(out.status.success());
    let out = run(&["limit", "compound", "--rates", "0.2,0.1"]);
    assert!(out.status.success());
}

#[test]
fn presets_print_and_round_trip() {
    let out = run(&["preset", "--list"]);
    assert!(stdout(&out).contains("appendix-b"));
    let out = run(&["preset", "corr-er"]);
    let spec = ExperimentSpec::from_json(&stdout(&out)).unwrap();
    assert_eq!(spec, preset("corr-er").unwrap());
}

#[test]
fn exit_codes() {
    let out = run(&["preset", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("birthday"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"uniformity":3,"num_vertices":3,"edges":[[0,1,7]]}"#,
    )
    .unwrap();
    let out = run(&["moments", p(&bad), "--c", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));

    let big = dir.path().join("big.json");
    fs::write(
        &big,
        r#"{"uniformity":2,"num_vertices":40,"edges":[[0,1]]}"#,
    )
    .unwrap();
    let out = run(&["exact", p(&big), "--c", "3"]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn compare_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let spec = {
        let mut s = preset("appendix-a").unwrap();
        s.sizes = vec![30, 60];
        s
    };
    let config = dir.path().join("spec.json");
    fs::write(&config, io::to_json(&spec).unwrap()).unwrap();
    let go = |out: &str, shards: &str| {
        let o = run(&[
            "compare",
            "--config",
            p(&config),
            "--replicates",
            "4000",
            "--seed",
            "9",
            "--shards",
            shards,
            "--out",
            out,
            "--format",
            "csv",
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    go(p(&a), "1");
    go(p(&b), "3");
    let csv = fs::read(a.join("compare.csv")).unwrap();
    assert_eq!(csv, fs::read(b.join("compare.csv")).unwrap());
    assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 5);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 9);
    assert_eq!(manifest["spec"]["simulation"]["replicates"], 4000);
    assert!(a.join("timing.csv").exists());
}

#[test]
fn order_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    fs::write(
        &file,
        r#"{"uniformity":3,"num_vertices":5,"edges":[[0,1,2],[2,3,4],[1,2,3]]}"#,
    )
    .unwrap();
    let out = run(&["order", p(&file)]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["status"], "valid");
}
