//! End-to-end tests against the built binary: exit codes, exact output
//! values, determinism, and the data-file path.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasimean"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

#[test]
fn eval_prints_exact_values() {
    assert_eq!(stdout(&["eval", "bessel-plus", "1", "2"]).trim(), "3");
    assert_eq!(
        stdout(&["eval", "floor-arith?m=0", "2.1", "3"]).trim(),
        "2.5"
    );
    assert_eq!(stdout(&["eval", "arith", "5"]).trim(), "5");
    assert_eq!(
        stdout(&["eval", "shifted-floor?m=0", "2.1", "3"]).trim(),
        "3.5"
    );
    let approx = stdout(&["eval", "trimmed-k1", "10", "11", "12"]);
    assert!(
        approx.starts_with('≈'),
        "non-terminating values carry a marker: {approx}"
    );
    assert!(approx.contains("7.6666666666666666"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // Domain violation: all floors vanish.
    let out = run(&["eval", "floor-arith?m=0", "0.5", "0.9"]);
    assert_eq!(out.status.code(), Some(2));
    // Sign violation.
    let out = run(&["eval", "bessel-plus", "1", "-2"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown id and unknown parameter are usage errors.
    assert_eq!(
        run(&["eval", "no-such-mean", "1", "2"]).status.code(),
        Some(64)
    );
    assert_eq!(
        run(&["eval", "floor-arith?q=1", "1", "2"]).status.code(),
        Some(64)
    );
    // Missing arguments.
    assert_eq!(run(&["eval"]).status.code(), Some(64));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    // Malformed formula.
    assert_eq!(run(&["dualize", "sin(a1)"]).status.code(), Some(64));
}

#[test]
fn classify_reports_and_exits_clean_on_confirmed_entries() {
    let out = run(&[
        "classify",
        "floor-arith?m=0",
        "--budget",
        "2000",
        "--seed",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.trim()).expect("json report");
    assert_eq!(v["schema"], "quasimean/1");
    assert_eq!(v["seed"], 0);
    let matrix = v["matrix"].as_array().unwrap();
    assert!(matrix.iter().all(|r| r["confirmed"] == true));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "classify",
        "star-arith?m=0",
        "--budget",
        "1500",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = [
        "measure",
        "mdista",
        "floor-arith?m=1",
        "--box",
        "1:2",
        "--arity",
        "2",
        "--samples",
        "50000",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn measure_mdista_matches_the_true_volume() {
    let text = stdout(&[
        "measure",
        "mdista",
        "floor-arith?m=1",
        "--box",
        "1:2",
        "--arity",
        "2",
        "--samples",
        "200000",
        "--seed",
        "11",
    ]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value - 0.19).abs() < 0.01, "estimate {value}");
    assert_eq!(v["result"]["seed"], 11);
}

#[test]
fn iterate_extend3_exports_the_worked_trace() {
    let text = stdout(&[
        "iterate",
        "extend3",
        "--k",
        "floor-arith?m=0",
        "--a",
        "1.1",
        "--b",
        "2.1",
        "--c",
        "3.1",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("step,a,b,c"));
    assert_eq!(lines.next(), Some("0,1.1,2.1,3.1"));
    assert_eq!(lines.next(), Some("1,1.5,2,2.5"));
    assert_eq!(lines.next(), Some("2,1.5,1.5,2"));
    assert_eq!(lines.next(), Some("3,1,1.5,1.5"));
    assert_eq!(lines.next(), Some("4,1,1,1"));
    let verdict: serde_json::Value =
        serde_json::from_str(text.lines().last().unwrap()).expect("verdict json");
    assert_eq!(verdict["limit"], "1");
}

#[test]
fn iterate_onset_finds_the_threshold() {
    let text = stdout(&["iterate", "bessel-onset", "1", "2", "3", "4", "5"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["onset"], 3);
}

#[test]
fn dualize_swaps_the_operations() {
    let text = stdout(&["dualize", "(a1 + a2) / 2"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["dual"], "root(2, a1 * a2)");
    let text = stdout(&[
        "dualize",
        "pow(1/2, (pow(2,a1) + pow(2,a2)) / 2)",
        "--simplify",
    ]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["dual"], "root(2, a1 * a2)");
    let text = stdout(&[
        "dualize",
        "(a1 + a2) / 2",
        "--check-mean",
        "--budget",
        "500",
    ]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["mean_check"]["status"], "holds-on-sample");
}

#[test]
fn stats_runs_estimators_over_a_column() {
    let path = std::env::temp_dir().join("quasimean_cli_stats.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "x").unwrap();
    for i in 1..=10 {
        writeln!(f, "{i}").unwrap();
    }
    drop(f);
    let path_s = path.to_string_lossy().into_owned();
    let text = stdout(&["stats", &path_s, "--column", "x"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["n"], 10);
    let rows = v["rows"].as_array().unwrap();
    let bp = rows
        .iter()
        .find(|r| r["estimator"] == "bessel-plus")
        .unwrap();
    // 55/9 is not a terminating decimal.
    assert!(bp["value"].as_str().unwrap().contains("6.1111111111111111"));
    assert_eq!(bp["mean_like"], true);

    // Two entries only: the value 3 escapes above the maximum 2.
    let path2 = std::env::temp_dir().join("quasimean_cli_stats2.csv");
    let mut f = std::fs::File::create(&path2).unwrap();
    writeln!(f, "x\n1\n2").unwrap();
    drop(f);
    let text = stdout(&[
        "stats",
        &path2.to_string_lossy(),
        "--column",
        "x",
        "--estimators",
        "bessel-plus",
    ]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["rows"][0]["value"], "3");
    assert_eq!(v["rows"][0]["mean_like"], false);

    // A non-numeric cell aborts with a data error naming the row.
    let path3 = std::env::temp_dir().join("quasimean_cli_stats3.csv");
    let mut f = std::fs::File::create(&path3).unwrap();
    writeln!(f, "x\n1\noops\n3").unwrap();
    drop(f);
    let out = run(&["stats", &path3.to_string_lossy(), "--column", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3"));
}

#[test]
fn pretty_and_csv_formats_render() {
    let text = stdout(&["classify", "min", "--budget", "500", "--format", "pretty"]);
    assert!(text.contains("min"));
    assert!(text.contains("expected"));

    let path = std::env::temp_dir().join("quasimean_cli_fmt.csv");
    std::fs::write(
        &path, "x
1
2
3
",
    )
    .unwrap();
    let text = stdout(&[
        "stats",
        &path.to_string_lossy(),
        "--column",
        "x",
        "--estimators",
        "trimmed-k1",
        "--format",
        "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("estimator,value,mean_like"));
    assert!(lines.next().unwrap().starts_with("trimmed-k1,"));

    let text = stdout(&["dualize", "(a1 + a2) / 2", "--format", "pretty"]);
    assert_eq!(text.trim(), "dual: root(2, a1 * a2)");
}

#[test]
fn catalog_lists_every_standard_entry() {
    let text = stdout(&["catalog"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["schema"], "quasimean/1");
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.len() > 40);
    assert!(entries.iter().any(|e| e["id"] == "floor-arith?m=1"));
    assert!(entries.iter().any(|e| e["id"] == "parallel-resistance"));
}

#[test]
fn trace_out_file_holds_the_csv() {
    let path = std::env::temp_dir().join("quasimean_cli_trace.csv");
    let path_s = path.to_string_lossy().into_owned();
    let text = stdout(&[
        "iterate",
        "closure",
        "--k",
        "min-square",
        "--a",
        "1",
        "--b",
        "2",
        "--out",
        &path_s,
    ]);
    let verdict: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(verdict["limit"], "1");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("step,a,b"));
}
