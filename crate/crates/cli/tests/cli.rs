use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eisenlab"));
    cmd.args(args).env_remove("EISENLAB_WORKERS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("every line is JSON"))
        .collect()
}

#[test]
fn character_value() {
    let o = run(&["char", "2", "2+3*w"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "w");
    let o = run(&["char", "28", "-1+6*w"]);
    assert_eq!(stdout(&o).trim(), "w^2");
}

#[test]
fn negative_arguments_are_values() {
    let o = run(&["--format", "json", "char", "-1", "-1-3*w"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["value"], "1");
}

#[test]
fn json_carries_schema() {
    for args in [
        vec!["--format", "json", "char", "2", "2+3*w"],
        vec!["--format", "json", "factor", "7"],
        vec!["--format", "json", "length", "x*y*z+1"],
        vec!["--format", "json", "verify", "solutions"],
        vec!["--format", "json", "search", "x*y*z+1", "--bound", "2"],
        vec!["--format", "json", "enumerate", "--max-L", "16"],
        vec![
            "--format",
            "json",
            "classify",
            "--max-L",
            "16",
            "--search-bound",
            "10",
        ],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let lines = json_lines(&o);
        assert!(!lines.is_empty(), "{args:?}");
        for l in lines {
            assert_eq!(l["schema"], 1, "{args:?}");
        }
    }
}

#[test]
fn length_of_main_equation() {
    let o = run(&["length", "7*x^3+2*y^3-3*z^2-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("L=10752"), "{text}");
    assert!(text.contains("l=13.392"), "{text}");
}

#[test]
fn factor_recomposes() {
    let o = run(&["--format", "json", "factor", "7"]);
    let v = &json_lines(&o)[0];
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn verification_suites_pass() {
    for suite in ["main", "eq14", "solutions", "reciprocity"] {
        let o = run(&[
            "verify",
            suite,
            "--z-lo",
            "-500",
            "--z-hi",
            "500",
            "--grid-bound",
            "20",
        ]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["char", "2"]).status.code(), Some(2));
    assert_eq!(run(&["char", "2", "3"]).status.code(), Some(2));
    assert_eq!(run(&["length", "x^2+y"]).status.code(), Some(2));
    assert_eq!(run(&["search", "x^3+1+"]).status.code(), Some(2));
    assert_eq!(
        run(&["--format", "yaml", "length", "x^3"]).status.code(),
        Some(2)
    );
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&[
        "--factor-budget",
        "10",
        "--rho-budget",
        "1000",
        "factor",
        "1000000000000000000000000000000000000000000000077",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_reproducible() {
    let args = [
        "--format",
        "json",
        "classify",
        "--max-L",
        "64",
        "--search-bound",
        "50",
    ];
    let a = run(&args);
    let b = run_env(&args, &[("EISENLAB_WORKERS", "1")]);
    let c = run(&[
        "--sequential",
        "--format",
        "json",
        "classify",
        "--max-L",
        "64",
        "--search-bound",
        "50",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let r = [
        "--seed",
        "7",
        "verify",
        "reciprocity",
        "--prime-pairs",
        "50",
        "--composite-pairs",
        "20",
    ];
    assert_eq!(
        run(&r).stdout,
        run_env(&r, &[("EISENLAB_WORKERS", "3")]).stdout
    );
}

#[test]
fn worker_variable_is_validated() {
    let o = run_env(&["length", "x^3"], &[("EISENLAB_WORKERS", "many")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("eisenlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let o = run(&[
        "--format",
        "csv",
        "-o",
        path.to_str().unwrap(),
        "enumerate",
        "--max-L",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 7, "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn skipped_trace_entries_exit_3() {
    let o = run(&[
        "verify",
        "main",
        "--z-lo",
        "-2000",
        "--z-hi",
        "2000",
        "--factor-bound",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}
