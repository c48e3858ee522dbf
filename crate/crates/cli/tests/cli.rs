use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn gendet(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gendet"))
        .args(args)
        .env_remove("GENDET_MAX_MINORS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn file(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn gdet_of_column() {
    let o = gendet(&["gdet", "--exact"], "1\n2\n3\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2");
    let o = gendet(&["gdet", "--exact", "--recursive"], "1\n2\n3\n");
    assert_eq!(stdout(&o), "2");
}

#[test]
fn solve_outcomes_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = file(&dir, "A.csv", "1,0\n0,1\n1,1\n");
    let good = file(&dir, "b.csv", "2\n3\n5\n");
    let bad = file(&dir, "bad.csv", "2\n3\n6\n");
    let o = gendet(&["solve", "--exact", a.to_str().unwrap(), good.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n3");

    let o = gendet(&["solve", "--exact", a.to_str().unwrap(), bad.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column 1") && err.contains("blade (2,3)"), "{err}");

    let dup = file(&dir, "dup.csv", "1,1\n2,2\n3,3\n");
    let o = gendet(&["solve", dup.to_str().unwrap(), good.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(5));

    let o = gendet(&["solve", "--format", "json", a.to_str().unwrap(), good.to_str().unwrap()], "");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["x"], serde_json::json!([2.0, 3.0]));
}

#[test]
fn wide_vdet_is_a_dimension_error() {
    let o = gendet(&["vdet"], "1,2,3\n4,5,6\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wide_detl_is_zero() {
    let o = gendet(&["detl", "--exact"], "1,2,3\n4,5,6\n");
    assert_eq!(stdout(&o), "0");
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(gendet(&["detl"], "1,2\n3\n").status.code(), Some(2));
    assert_eq!(gendet(&["detl", "--exact"], "1/x\n").status.code(), Some(2));
    let o = gendet(&["detl", "--input", "json"], r#"{"rows":2,"cols":2,"data":[1,2,3]}"#);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(gendet(&["detl", "/no/such/file.csv"], "").status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(gendet(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(gendet(&[], "").status.code(), Some(1));
    assert_eq!(gendet(&["--help"], "").status.code(), Some(0));
}

#[test]
fn minor_cap_flag_and_environment() {
    let input = "1,0\n0,1\n1,1\n0,2\n";
    assert_eq!(gendet(&["vdet", "--max-minors", "3"], input).status.code(), Some(4));
    let run_env = |env: &str, extra: &[&str]| {
        let mut child = Command::new(env!("CARGO_BIN_EXE_gendet"))
            .arg("tdet")
            .args(extra)
            .env("GENDET_MAX_MINORS", env)
            .stdin(Stdio::piped())
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
        child.wait().unwrap().code()
    };
    assert_eq!(run_env("3", &[]), Some(4));
    // The flag wins over the variable.
    assert_eq!(run_env("3", &["--max-minors", "100"]), Some(0));
    // Float detl falls back instead of failing.
    let o = gendet(&["detl", "--max-minors", "3", "--format", "json"], input);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["path"], "gram-fallback");
    assert_eq!(v["fallback"], true);
    // Exact detl has no fallback.
    assert_eq!(gendet(&["detl", "--exact", "--max-minors", "3"], input).status.code(), Some(4));
}

#[test]
fn vdet_json_lists_blades_in_rank_order() {
    let o = gendet(&["vdet", "--exact", "--format", "json"], "1,0\n0,1\n1,1\n");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    let blades: Vec<Value> = terms.iter().map(|t| t["blade"].clone()).collect();
    assert_eq!(blades, vec![serde_json::json!([1, 2]), serde_json::json!([1, 3]), serde_json::json!([2, 3])]);
    let coeffs: Vec<&str> = terms.iter().map(|t| t["coefficient"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "1", "-1"]);
    let w = gendet(&["wedge", "--exact"], "1,0\n0,1\n1,1\n");
    assert_eq!(stdout(&w), "(1,2) 1\n(1,3) 1\n(2,3) -1");
}

#[test]
fn exact_json_matrix_round_trips() {
    let o = gendet(&["detl", "--exact", "--format", "json"], "1/3,2\n4,5/7\n-9/2,0\n");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let emitted = v["matrix"].to_string();
    let again = gendet(&["detl", "--exact", "--format", "json", "--input", "json"], &emitted);
    let v2: Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(v2["matrix"], v["matrix"]);
    assert_eq!(v2["detl_squared"], v["detl_squared"]);
    assert_eq!(v["matrix"]["data"][0], "1/3");
}

#[test]
fn detl_plain_and_gram() {
    assert_eq!(stdout(&gendet(&["detl", "--exact"], "3\n4\n")), "5");
    assert_eq!(stdout(&gendet(&["detl", "--exact"], "1,0\n0,1\n1,1\n")), "sqrt(3)");
    assert_eq!(stdout(&gendet(&["detl", "--exact", "--gram"], "1,0\n0,1\n1,1\n")), "sqrt(3)");
    let f: f64 = stdout(&gendet(&["detl", "--gram"], "1,0\n0,1\n1,1\n")).parse().unwrap();
    assert!((f - 3f64.sqrt()).abs() < 1e-15);
}

#[test]
fn polyarea_and_dirdet() {
    assert_eq!(stdout(&gendet(&["polyarea", "--exact"], "0,0\n1,0\n1,1\n0,1\n")), "1");
    assert_eq!(stdout(&gendet(&["polyarea", "--exact"], "0,1\n1,1\n1,0\n0,0\n")), "-1");
    assert_eq!(gendet(&["polyarea"], "0,0\n1,1\n").status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let a = file(&dir, "a.csv", "1,0\n0,1\n0,0\n0,0\n");
    let b = file(&dir, "b.csv", "0,0\n0,0\n1,0\n0,1\n");
    let flat = file(&dir, "flat.csv", "1,2\n1,2\n1,2\n0,0\n");
    let o = gendet(&["dirdet", "--exact", a.to_str().unwrap(), b.to_str().unwrap()], "");
    assert_eq!(stdout(&o), "0");
    let o = gendet(&["dirdet", "--exact", a.to_str().unwrap(), a.to_str().unwrap()], "");
    assert_eq!(stdout(&o), "1");
    let o = gendet(&["dirdet", a.to_str().unwrap(), flat.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn bench_writes_round_trippable_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = gendet(&["bench", "--shapes", "15x3,6x6", "--reps", "5", "--out", out.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("15x3"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["rows"][0]["minors_visited"], 455);
    assert_eq!(report["rows"][1]["minors_visited"], 1);
    assert_eq!(gendet(&["bench", "--shapes", "3x5"], "").status.code(), Some(2));
}
