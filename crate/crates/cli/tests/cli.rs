use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use arithgroup_cli::problem::{ProblemFile, ResultFile};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arithgroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn example_run_verify() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("example.json");
    let result = dir.path().join("result.json");
    assert!(bin(&["example", "-o", problem.to_str().unwrap()])
        .status
        .success());
    let out = bin(&[
        "run",
        problem.to_str().unwrap(),
        "--verify",
        "-o",
        result.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = ResultFile::from_json(&fs::read_to_string(&result).unwrap()).unwrap();
    assert_eq!(r.hirsch_length, 3);
    assert!(r.verification.as_ref().unwrap().passed);
    assert!(bin(&["verify", result.to_str().unwrap()]).status.success());
}

#[test]
fn corrupted_result_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("example.json");
    bin(&["example", "-o", problem.to_str().unwrap()]);
    let out = bin(&["run", problem.to_str().unwrap()]);
    let mut r = ResultFile::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    r.generators[0] = vec![
        vec!["1".into(), "0".into(), "0".into(), "1/2".into()],
        vec!["0".into(), "1".into(), "0".into(), "0".into()],
        vec!["0".into(), "0".into(), "1".into(), "0".into()],
        vec!["0".into(), "0".into(), "0".into(), "1".into()],
    ];
    let path = write(dir.path(), "bad.json", &r.to_json());
    let out = bin(&["verify", &path]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"preserves_lattice\": false"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write(dir.path(), "g.json", "{ not json");
    assert_eq!(bin(&["run", &garbage]).status.code(), Some(2));

    let bad_shape = write(
        dir.path(),
        "s.json",
        r#"{"dimension": 2, "lie_algebra": [[["0","1"]]]}"#,
    );
    assert_eq!(bin(&["run", &bad_shape]).status.code(), Some(2));

    let singular = write(
        dir.path(),
        "l.json",
        r#"{"dimension": 2, "lie_algebra": [], "lattice": [["1","2"],["2","4"]]}"#,
    );
    assert_eq!(bin(&["run", &singular]).status.code(), Some(2));

    let not_nilpotent = write(
        dir.path(),
        "n.json",
        r#"{"dimension": 2, "lie_algebra": [[["1","0"],["0","0"]]]}"#,
    );
    let out = bin(&["run", &not_nilpotent]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid Lie algebra"));

    let unstable_flag = write(
        dir.path(),
        "f.json",
        r#"{"dimension": 2, "lie_algebra": [[["0","1"],["0","0"]]], "flag": [[["0","1"]], [["1","0"],["0","1"]]]}"#,
    );
    let out = bin(&["run", &unstable_flag]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid flag"));

    assert_eq!(
        bin(&["gen", "--family", "hn", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bin(&["run", "/nonexistent/problem.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn small_problems() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(
        dir.path(),
        "z.json",
        r#"{"dimension": 1, "lie_algebra": []}"#,
    );
    let out = bin(&["run", &zero, "--verify"]);
    assert!(out.status.success());
    let r = ResultFile::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.hirsch_length, 0);

    let g3 = write(
        dir.path(),
        "g3.json",
        r#"{"dimension": 3, "lie_algebra": [
            [["0","1","0"],["0","0","0"],["0","0","0"]],
            [["0","0","1"],["0","0","0"],["0","0","0"]],
            [["0","0","0"],["0","0","1"],["0","0","0"]]]}"#,
    );
    let out = bin(&["run", &g3, "--verify", "--no-support-opt"]);
    assert!(out.status.success());
    let r = ResultFile::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.hirsch_length, 3);
}

#[test]
fn gen_and_bench() {
    let out = bin(&["gen", "--family", "gn", "--n", "6"]);
    let f = ProblemFile::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(f.lie_algebra.len(), 6);

    let out = bin(&["bench", "--family", "hn", "--from", "4", "--to", "6"]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(table.lines().count(), 5);
    assert!(table.lines().last().unwrap().ends_with("| 5 |"));
}
