use std::path::PathBuf;
use std::process::{Command, Output};

fn qht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qht")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let p = std::env::temp_dir().join(format!("qht-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        TempDir(p)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

const IDENTITY: &str = r#"{"rows":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#;

#[test]
fn verify_tables_text() {
    let o = qht(&["verify-tables"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("X: 15/15 entries match"));
    assert!(s.contains("G: 13/15 entries match"));
    assert!(s.contains("[g1,g2] oracle -2i*g3, published 2i*g3"));
    assert!(s.contains("XHAT: 15/15 entries match"));
    assert!(s.contains("GHAT: 12/15 entries match"));
    assert!(s.contains("invariants: 18/18 hold"));
}

#[test]
fn verify_tables_json_is_stable() {
    let a = qht(&["verify-tables", "--format", "json"]);
    let b = qht(&["--format", "json", "verify-tables"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let x = &v["reports"][0];
    assert_eq!(x["table"], "X");
    assert_eq!(x["entries"].as_array().unwrap().len(), 15);
    assert_eq!(x["entries"][0]["oracle"], serde_json::json!({"x1": "1"}));
}

#[test]
fn classify_files() {
    let dir = TempDir::new("classify");
    let id = dir.file("id.json", IDENTITY);
    let o = qht(&["classify", &id]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "flags: GeneralX, Moebius, Heisenberg, HeisenbergTilde, QHT, Unimodular\n");

    let mob = dir.file("mob.json", r#"{"rows":[[[2,0],[1,1],[0,0]],[[0,3],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#);
    let o = qht(&["classify", &mob, "--format", "json"]);
    assert_eq!(stdout(&o).trim(), "{\n  \"flags\": [\n    \"GeneralX\",\n    \"Moebius\"\n  ]\n}");

    assert_eq!(qht(&["classify", &dir.file("bad.json", "not json")]).status.code(), Some(1));
    assert_eq!(qht(&["classify", &dir.file("shape.json", r#"{"rows":[[[1,0]]]}"#)]).status.code(), Some(1));
    assert_eq!(qht(&["classify", "/nonexistent/file.json"]).status.code(), Some(1));
    let off = dir.file("off.json", r#"{"rows":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,1],[1,0]]]}"#);
    assert_eq!(qht(&["classify", &off]).status.code(), Some(3));
}

#[test]
fn apply_transforms() {
    let dir = TempDir::new("apply");
    let id = dir.file("id.json", r#"{"u":{"x0":1,"x1":0,"x2":0,"x3":0},"v":{"x0":0,"x1":0,"x2":0,"x3":0}}"#);
    let o = qht(&["apply", &id, "--point", "1+k"]);
    assert_eq!(stdout(&o), "image: 1+k\nfixed points: AllPoints\n");

    let t = dir.file("t.json", r#"{"u":{"x0":"2","x1":"0","x2":"0","x3":"0"},"v":{"x0":1,"x1":1,"x2":0,"x3":0}}"#);
    let o = qht(&["apply", &t, "--point", r#"{"x0":0,"x1":0,"x2":0,"x3":0}"#]);
    assert!(stdout(&o).contains("FiniteAndInfinity (finite point -1-i)"));

    let zero = dir.file("zero.json", r#"{"u":{"x0":0,"x1":0,"x2":0,"x3":0},"v":{"x0":0,"x1":0,"x2":1,"x3":0}}"#);
    let o = qht(&["apply", &zero, "--point", "i", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["warnings"][0].as_str().unwrap().starts_with("NonInvertible"));
    assert_eq!(v["image"]["x2"], "1");

    assert_eq!(qht(&["apply", &t, "--point", "q"]).status.code(), Some(1));
    assert_eq!(qht(&["apply", &dir.file("partial.json", r#"{"u":{"x0":1,"x1":0,"x2":0,"x3":0}}"#), "--point", "1"]).status.code(), Some(1));
}

#[test]
fn holo_check_expressions() {
    let line = |expr: &str| stdout(&qht(&["holo-check", expr]));
    assert!(line("q*i + j").starts_with("LeftHolomorphic"));
    assert!(line("q*q").starts_with("Neither"));
    assert!(line("qbar*i").starts_with("ConjugateLeftHolomorphic"));
    assert!(line("i*q").starts_with("Neither"));

    let o = qht(&["holo-check", "q + )"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 5"));
    assert_eq!(qht(&["holo-check", "1/(q - q)"]).status.code(), Some(3));

    let a = qht(&["holo-check", "q*q", "--seed", "3", "--format", "json"]);
    let b = qht(&["holo-check", "q*q", "--seed", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, qht(&["holo-check", "q*q", "--seed", "4", "--format", "json"]).stdout);
}

#[test]
fn exp_generator_output() {
    let o = qht(&["exp", "--generator", "2", "--t", "-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let a = v["rows"][0][0][0].as_f64().unwrap();
    assert!((a - 1f64.exp()).abs() < 1e-15);
    assert_eq!(v["t_z"], serde_json::json!([0.0, 0.0]));
    assert_eq!(qht(&["exp", "--generator", "7", "--t", "1"]).status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(qht(&[]).status.code(), Some(1));
    assert_eq!(qht(&["verify-tables", "--format", "yaml"]).status.code(), Some(1));
    assert_eq!(qht(&["--help"]).status.code(), Some(0));
}
