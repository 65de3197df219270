use std::path::Path;
use std::process::{Command, Output};

const THETA: &str = r#"{"darts":6,"twin":[3,5,4,0,2,1],"next":[1,2,0,4,5,3],"free":[]}"#;

fn trigonal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigonal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_theta(dir: &Path) -> String {
    let path = dir.join("theta.json");
    std::fs::write(&path, THETA).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn count_at_eight() {
    let o = trigonal(&["count", "--degree", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Z(8)=6 R(8)=2");
}

#[test]
fn count_table_rows() {
    let o = trigonal(&["count", "--table"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["14", "840", "1430"]));
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["20", "2e5", "3e6"]));
}

#[test]
fn count_json_parses() {
    let o = trigonal(&["count", "--degree", "10", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 10);
    assert!(v["counts"].as_array().unwrap().iter().any(|c| c["kind"] == "z" && c["value"] == 30));
}

#[test]
fn classify_theta() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_theta(dir.path());
    let dot = dir.path().join("theta.dot");
    let o = trigonal(&["classify", &file, "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "k=1, fibers: 3×A~1, reducible: yes (marking found)");
    assert!(text.contains("automorphisms: 6"));
    assert!(std::fs::read_to_string(dot).unwrap().contains("graph"));
}

#[test]
fn monodromy_of_theta_splits() {
    let dir = tempfile::tempdir().unwrap();
    let o = trigonal(&["monodromy", &write_theta(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("components: 3"));
    assert!(text.contains("forced equality a1=a2=a3: no"));
}

#[test]
fn tree_monodromy() {
    let o = trigonal(&["monodromy", "--tree", "((-,-),-)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("k=3\n"));
    assert!(text.contains("infinity: product = tau^(3k)"));
    assert!(text.contains("abelianization: Z_9"));
}

#[test]
fn monodromy_json() {
    let o = trigonal(&["monodromy", "--tree", "(-,-)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_passes() {
    let o = trigonal(&["verify", "--max-edges", "4", "--max-k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 7);
}

#[test]
fn trees_emit_skeletons() {
    let dir = tempfile::tempdir().unwrap();
    let o = trigonal(&["trees", "--size", "3", "--emit-skeletons", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 5);
    for f in &files {
        let c = trigonal(&["classify", f.to_str().unwrap()]);
        assert_eq!(c.status.code(), Some(0));
        assert!(stdout(&c).starts_with("k=4, "));
    }
}

#[test]
fn enumerate_is_deterministic() {
    let a = trigonal(&["enumerate", "--max-edges", "4"]);
    let b = trigonal(&["enumerate", "--max-edges", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn weierstrass_isotrivial() {
    let o = trigonal(&["weierstrass", "--g2", "0", "--g3", "z^3-2*z^2+z"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("j: 0 (constant)"));
    assert!(text.contains("class: J0: 1×A~0** + 1×A~2*"));
}

#[test]
fn from_j_linear() {
    let o = trigonal(&["from-j", "--p", "z", "--q", "z-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("k=1\n"));
    assert!(text.contains("g2 ~ z^2 - z"));
}

#[test]
fn exit_codes() {
    assert_eq!(trigonal(&["classify", "/nonexistent/skeleton.json"]).status.code(), Some(1));
    assert_eq!(trigonal(&["from-j", "--p", "z^3", "--q", "1"]).status.code(), Some(1));
    assert_eq!(trigonal(&["count", "--bogus"]).status.code(), Some(1));
    assert_eq!(trigonal(&["count"]).status.code(), Some(1));
    assert_eq!(trigonal(&["--help"]).status.code(), Some(0));
    let bad = trigonal(&["weierstrass", "--g2", "z^^2", "--g3", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
}
