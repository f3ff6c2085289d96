use std::process::{Command, Output};

use gtkit_cli::report::{RunReport, Status, Value};

fn gtkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtkit")).args(args).env_remove("GTKIT_BUDGET").output().unwrap()
}

fn report(out: &Output) -> RunReport {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    RunReport::from_json(text.trim()).unwrap()
}

fn value<'a>(r: &'a RunReport, label: &str) -> &'a Value {
    &r.results.iter().find(|e| e.label == label).unwrap_or_else(|| panic!("no {label} in {r:?}")).value
}

fn exact(s: &str) -> Value {
    Value::Exact { value: s.into() }
}

#[test]
fn dim_and_roundtrip() {
    let out = gtkit(&["dim", "2,1,0"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(value(&r, "dim"), &exact("8"));
    // parse -> emit -> parse
    let again = RunReport::from_json(&r.to_json_line()).unwrap();
    assert_eq!(again, r);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r.to_json_line());
}

#[test]
fn worked_rows() {
    let r = report(&gtkit(&["link", "1,0", "--level", "1"]));
    assert_eq!(value(&r, "(0)"), &exact("1/2"));
    assert_eq!(value(&r, "(1)"), &exact("1/2"));
    let r = report(&gtkit(&["qlink", "1,0", "--level", "1", "--q", "1/2"]));
    assert_eq!(value(&r, "(0)"), &exact("2/3"));
    assert_eq!(value(&r, "(1)"), &exact("1/3"));
    let r = report(&gtkit(&["rdim", "1", "2,1,0"]));
    assert_eq!(value(&r, "rel_dim"), &exact("4"));
    let r = report(&gtkit(&["link", "0,-1,-3", "-k", "2"]));
    assert_eq!(value(&r, "sum"), &exact("1"));
}

#[test]
fn verify_suites() {
    let out = gtkit(&["verify", "q1-oracle", "--max-n", "0"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(value(&r, "cases"), &exact("0"));
    let out = gtkit(&["verify", "qtoeplitz", "--q", "1/2"]);
    assert!(out.status.success());
    assert_eq!(report(&out).status, Status::Pass);
    let out = gtkit(&["verify", "q1-oracle", "--max-n", "3", "--part-bound", "1"]);
    assert!(out.status.success());
    assert_ne!(value(&report(&out), "cases"), &exact("0"));
}

#[test]
fn failing_check_sets_exit_code() {
    // listed backwards, so the gaps increase
    let out = gtkit(&["uat", "--kappa", "0", "--n", "32,16,8"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).status, Status::Fail);
    let out = gtkit(&["uat", "--kappa", "0", "--n", "8,16,32"]);
    assert!(out.status.success());
    let r = report(&out);
    match value(&r, "N=32 gap") {
        Value::Numeric { value, tolerance } => assert!(*value < 0.1 && *tolerance > 0.0),
        v => panic!("{v:?}"),
    }
}

#[test]
fn errors_exit_two() {
    let out = gtkit(&["dim", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("column 3"));
    assert_eq!(gtkit(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(gtkit(&["link", "1,0", "--level", "2"]).status.code(), Some(2));
}

#[test]
fn csv_and_out_file() {
    let out = gtkit(&["uat", "--kappa", "0", "--family", "zero", "--n", "4,8", "--exact", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "label,mode,value,tolerance");
    assert!(lines.contains(&"N=8 gap,exact,0,"), "{text}");

    let dir = std::env::temp_dir().join(format!("gtkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dim.json");
    let out = gtkit(&["dim", "3,0", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let r = RunReport::from_json(std::fs::read_to_string(&path).unwrap().trim()).unwrap();
    assert_eq!(value(&r, "dim"), &exact("4"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn budget_flag_and_env() {
    let skipped = Value::Text { value: "skipped: budget exceeded".into() };
    let r = report(&gtkit(&["bench", "--n", "7", "--budget", "5"]));
    assert_eq!(value(&r, "N=7 enumeration"), &skipped);
    assert_eq!(value(&r, "N=7 row sum"), &exact("1"));
    let out = Command::new(env!("CARGO_BIN_EXE_gtkit"))
        .args(["bench", "--n", "7"])
        .env("GTKIT_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(value(&report(&out), "N=7 enumeration"), &skipped);
    let r = report(&gtkit(&["bench", "--n", "7"]));
    assert_eq!(value(&r, "N=7 enumeration"), &Value::Text { value: "agrees".into() });
}
