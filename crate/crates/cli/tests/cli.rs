use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-skein")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trefoil_beta0() {
    let o = run(&["invariant", "--braid", "1^3", "--spec", "beta0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-1/4*alpha^3 - 1");
}

#[test]
fn invariant_json_is_deterministic() {
    let args = ["invariant", "--braid", "1 -2 1 -2", "--spec", "alpha0", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["T_tilde"].as_str().is_some());
    assert_eq!(v["specialized"]["variable"], "beta");
}

#[test]
fn bad_braid_is_a_usage_error() {
    assert_eq!(run(&["invariant", "--braid", "1 0"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--braid", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--braid", "1", "--family", "II", "--spec", "beta0"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--filter", "99.1"]).status.code(), Some(2));
}

#[test]
fn zp_reports_the_monomial_factor() {
    let o = run(&["obstructions", "--suite", "zp"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["zp"]["ratio"], "z^14");
    assert_eq!(v["zp"]["perturbation_detected"], true);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn trace_equations_pass() {
    let o = run(&["obstructions", "--suite", "traceq"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn table_rows_and_table_json_are_stable() {
    let o = run(&["table", "--filter", "3.1,4.1", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("3.1") && text.contains("4.1"));
    let a = run(&["table", "--filter", "3.1,4.1,5.1", "--json", "--jobs", "1"]);
    let b = run(&["table", "--filter", "3.1,4.1,5.1", "--json", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_small_run() {
    let o = run(&["oracle", "--trials", "20", "--maxlen", "8", "--seed", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 21);
    assert_eq!(v["rank"], 21);
}

#[test]
fn trace_log_is_written() {
    let path = std::env::temp_dir().join(format!("cubic-skein-log-{}.tsv", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&["--trace-log", p, "invariant", "--braid", "1 2 1 2"]);
    assert_eq!(o.status.code(), Some(0));
    let log = std::fs::read_to_string(&path).unwrap();
    assert!(log.lines().count() > 0);
    assert!(log.lines().all(|l| l.split('\t').count() >= 3));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn tiny_budget_fails_cleanly() {
    let o = run(&["--budget", "2", "invariant", "--braid", "1 2 1 2 1 2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}
