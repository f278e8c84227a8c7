use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hypergram"));
    c.env_remove("HYPERGRAM_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn generate(dir: &Path, kind: &str, extra: &[&str]) -> (PathBuf, PathBuf) {
    let hg = dir.join(format!("{kind}.json"));
    let alpha = dir.join(format!("{kind}.alpha.json"));
    let mut args = vec!["generate", kind, "-o", hg.to_str().unwrap()];
    if kind != "nonassignable" {
        args.extend(["--assignment-out", alpha.to_str().unwrap()]);
    }
    args.extend(extra);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    (hg, alpha)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let (t, _) = generate(dir.path(), "two-spread", &[]);
    assert_eq!(run(&["validate", s(&t)]).status.code(), Some(0));

    let looped = dir.path().join("loop.json");
    std::fs::write(
        &looped,
        r#"{"version":1,"vertices":3,"hyperedges":[[1,2]],"anticommutations":[[3,3]]}"#,
    )
    .unwrap();
    let o = run(&["validate", s(&looped)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v["code"] == "LoopEdge"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["validate", s(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["generate", "cube"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn assign_and_assignable() {
    let dir = TempDir::new().unwrap();
    let (t, _) = generate(dir.path(), "two-spread", &[]);
    let o = run(&["assign", s(&t)]);
    assert!(o.status.success());
    assert_eq!(json(&o)["n"], 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("n = 2"));

    let (v, _) = generate(dir.path(), "two-spread-variant", &[]);
    assert_eq!(json(&run(&["assign", s(&v), "--checked"]))["n"], 3);

    let (x, _) = generate(dir.path(), "nonassignable", &[]);
    let o = run(&["assignable", s(&x)]);
    assert_eq!(o.status.code(), Some(1));
    let out = json(&o);
    assert_eq!(out["assignable"], false);
    assert!(out["nonzero"].as_array().unwrap().contains(&serde_json::json!([1, 5])));
    assert_eq!(run(&["assign", s(&x)]).status.code(), Some(1));
    assert_eq!(run(&["assignable", s(&t)]).status.code(), Some(0));
}

#[test]
fn degree_bound_and_signs() {
    let dir = TempDir::new().unwrap();
    let (d, alpha) = generate(dir.path(), "doily", &[]);
    let out = json(&run(&["degree", s(&d), "--auto-assign"]));
    assert_eq!((out["value"].as_u64(), out["exact"].as_bool()), (Some(3), Some(true)));
    // same value from the stored assignment (different signs)
    let out = json(&run(&[
        "degree",
        s(&d),
        "--assignment",
        s(&alpha),
        "--method",
        "bruteforce",
    ]));
    assert_eq!(out["value"], 3);
    assert_eq!(out["method"], "BruteForce");
    assert_eq!(json(&run(&["bound", s(&d), "--auto-assign"]))["bound"], 9);

    let signs = dir.path().join("signs.json");
    let o = run(&["signs", s(&d), "--assignment", s(&alpha)]);
    std::fs::write(&signs, &o.stdout).unwrap();
    assert_eq!(json(&run(&["degree", s(&d), "--signs", s(&signs)]))["value"], 3);

    let (t, _) = generate(dir.path(), "two-spread", &[]);
    assert_eq!(json(&run(&["bound", s(&t), "--auto-assign"]))["bound"], 8);
    let (v, _) = generate(dir.path(), "two-spread-variant", &[]);
    assert_eq!(json(&run(&["degree", s(&v), "--auto-assign"]))["value"], 0);

    // exactly one source of signs
    assert_eq!(run(&["degree", s(&d)]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "degree",
            s(&d),
            "--auto-assign",
            "--method",
            "exact",
            "--threshold",
            "2"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn lines_and_threads() {
    let dir = TempDir::new().unwrap();
    let (l3, _) = generate(dir.path(), "lines", &["--n", "3"]);
    let o = run(&["generate", "lines", "--n", "3", "-o", s(&dir.path().join("again.json"))]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("315 contexts, 90 negative"));
    assert_eq!(run(&["validate", s(&l3)]).status.code(), Some(0));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&l3).unwrap()).unwrap();
    assert_eq!(file["points"].as_array().unwrap().len(), 63);

    let args = [
        "degree",
        s(&l3),
        "--auto-assign",
        "--method",
        "heuristic",
        "--seed",
        "7",
    ];
    let one = bin().args(args).env("HYPERGRAM_THREADS", "1").output().unwrap();
    let out = json(&one);
    assert_eq!((out["value"].as_u64(), out["exact"].as_bool()), (Some(63), Some(false)));
    let two = bin().args(args).arg("--threads").arg("2").output().unwrap();
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(
        json(&run(&["bound", s(&l3), "--auto-assign", "--seed", "7"]))["bound"],
        189
    );
    assert_eq!(
        bin()
            .args(args)
            .env("HYPERGRAM_THREADS", "lots")
            .output()
            .unwrap()
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["generate", "lines"]).status.code(), Some(2));
}

#[test]
fn transfer() {
    let dir = TempDir::new().unwrap();
    let (d, alpha) = generate(dir.path(), "doily", &[]);
    let a1 = dir.path().join("a1.json");
    std::fs::write(&a1, r#"{"values":{"1":1,"2":-1,"3":1,"4":1,"5":1,"6":1,"7":1,"8":1,"9":1,"10":1,"11":1,"12":1,"13":1,"14":1,"15":1}}"#)
        .unwrap();
    let o = run(&["transfer", s(&d), s(&alpha), s(&alpha), s(&a1)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = json(&o);
    assert_eq!(out["values"]["2"], -1);

    // the two-spread shares its 2-qubit labels with the doily
    let (_, talpha) = generate(dir.path(), "two-spread", &[]);
    assert_eq!(
        run(&["transfer", s(&d), s(&alpha), s(&talpha), s(&a1)]).status.code(),
        Some(0)
    );
    let three = dir.path().join("three.json");
    std::fs::write(&three, r#"{"version":1,"n":1,"labels":{"1":"X","2":"Y","3":"Z"}}"#).unwrap();
    assert_eq!(
        run(&["transfer", s(&d), s(&alpha), s(&three), s(&a1)]).status.code(),
        Some(1)
    );
}

#[test]
fn info() {
    let dir = TempDir::new().unwrap();
    let (d, _) = generate(dir.path(), "doily", &[]);
    let out = json(&run(&["info", s(&d)]));
    assert_eq!(out["vertices"], 15);
    assert_eq!(out["hyperedges"], 15);
    assert_eq!(out["qubits"], 2);
}
