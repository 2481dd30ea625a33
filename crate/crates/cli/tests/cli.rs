use std::path::Path;
use std::process::{Command, Output};

fn hypell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypell")).args(args).env("HYPELL_THREADS", "2").output().expect("binary runs")
}

fn json_file(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn path(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn specialize_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    for out in [&a, &b] {
        let o = hypell(&["specialize", "--omega", "split:10", "--genus", "1", "--seed", "1", "--count", "5", "--out", out]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = json_file(Path::new(&a));
    assert_eq!(v["curves"].as_array().unwrap().len(), 5);
    assert_eq!(v["sampling"]["seed"], 1);
    // no temporary files are left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn construct_then_verify_with_sieve() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = (path(&dir, "c.json"), path(&dir, "v.json"));
    let o = hypell(&["construct", "--omega", "split:10", "--genus", "1", "--no-symbolic", "--out", &c]);
    assert_eq!(o.status.code(), Some(0));
    let rec = json_file(Path::new(&c));
    assert_eq!((rec["construction"]["n"].as_u64(), rec["construction"]["d"].as_u64()), (Some(10), Some(4)));
    let t = "1,-30,11,7,-2,25,-14,3,19,-8";
    let o = hypell(&["verify", "--input", &c, "--t", t, "--sieve", "--coeff-bound", "5", "--prime-budget", "200", "--out", &v]);
    let out = json_file(Path::new(&v));
    let cert = &out["curves"][0]["certificate"];
    assert!(cert["sieve"]["verdict"].is_string(), "{out}");
    let code = o.status.code().unwrap();
    assert!(code == 0 || code == 4);
    assert_eq!(code == 0, out["curves"][0]["conclusive"].as_bool().unwrap());
}

#[test]
fn verify_reads_specialization_files() {
    let dir = tempfile::tempdir().unwrap();
    let (s, v) = (path(&dir, "s.json"), path(&dir, "v.json"));
    assert_eq!(hypell(&["specialize", "--omega", "x^5-x-1", "--genus", "2", "--count", "2", "--seed", "3", "--out", &s]).status.code(), Some(0));
    let o = hypell(&["verify", "--input", &s, "--prime-budget", "300", "--out", &v]);
    let sp = json_file(Path::new(&s));
    let out = json_file(Path::new(&v));
    assert_eq!(out["curves"].as_array().unwrap().len(), 2, "{}", String::from_utf8_lossy(&o.stderr));
    for i in 0..2 {
        assert_eq!(sp["curves"][i]["t"], out["curves"][i]["t"]);
        assert!(out["curves"][i]["certificate"]["zarhin"].is_object());
    }
}

#[test]
fn construct_quadratic_kinds() {
    let o = hypell(&["construct", "--omega", "x^3-2", "--genus", "1", "--kind", "X2", "--delta", "x"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["construction"]["kind"], "X2");
    assert_eq!(v["construction"]["n"], 8);
    assert_eq!(v["construction"]["input_degree"], 3);
}

#[test]
fn exit_codes_and_error_json() {
    let o = hypell(&["construct", "--omega", "split:14", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let e: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "CapacityExceeded");
    assert_eq!(hypell(&["construct", "--omega", "split:14", "--genus", "2", "--no-symbolic"]).status.code(), Some(0));
    let o = hypell(&["construct", "--omega", "x^2+", "--genus", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hypell(&["construct", "--genus", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hypell(&["modules", "--group", "S3", "--check", "v-module"]);
    assert_eq!(o.status.code(), Some(2));
    let e: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "PatternMismatch");
    let o = hypell(&["sieve", "--omega", "x^5-x-1", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn modules_commands() {
    let o = hypell(&["modules", "--group", "S3", "--check", "quad-identity", "--pattern", r#"{"omega":["stab:3"],"omega_tilde":"split"}"#]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["result"]["report"]["character"]["dimension"], "3/1");

    let dir = tempfile::tempdir().unwrap();
    let p = path(&dir, "pattern.json");
    std::fs::write(&p, r#"{"subgroup": ["(1,2)"]}"#).unwrap();
    let o = hypell(&["modules", "--group", "(1,2,3);(1,2)", "--check", "perm-character", "--pattern", &p]);
    assert_eq!(o.status.code(), Some(0));

    let o = hypell(&["modules", "--group", "S7", "--check", "submodule", "--pattern", r#"{"v":{"v_module":"stab:7"},"w":{"trivial":7},"allow_partial":true}"#]);
    assert_eq!(o.status.code(), Some(4));
    let o = hypell(&["modules", "--group", "S7", "--check", "character-table"]);
    assert_eq!(o.status.code(), Some(3));
}
