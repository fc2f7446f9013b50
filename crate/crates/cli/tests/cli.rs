use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sextactic")).args(args).arg("--quiet").output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn sextactic_points_of_the_cubic() {
    let (code, r) = report(&["points", "--degree", "3", "--kind", "sextactic"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["payload"]["count"], 27);
    assert_eq!(r["payload"]["points"].as_array().unwrap().len(), 27);
}

#[test]
fn m_is_not_free() {
    let (code, r) = report(&["freeness", "--arrangement", "M", "--degree", "4"]);
    assert_eq!(code, 0);
    let v = &r["payload"]["verdict"];
    assert_eq!(v["free"], false);
    assert_eq!(v["discriminant_sign"], "negative");
}

#[test]
fn f_bzmxny_is_free() {
    let (_, r) = report(&["freeness", "--arrangement", "F+BzMxNy", "--degree", "5"]);
    assert_eq!(r["payload"]["tau"], 12 * 25 - 30 + 3);
    assert_eq!(r["payload"]["verdict"]["exponents"], serde_json::json!([8, 11]));
}

#[test]
fn main_theorem_reports_every_grid_line() {
    let (code, r) = report(&["verify", "--theorem", "main", "--degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["lines"].as_array().unwrap().len(), 36);
    let (code, r) = report(&["verify", "--theorem", "main", "--degree", "5", "--line-index", "5"]);
    assert_eq!(code, 0);
    let line = &r["payload"]["lines"][0];
    assert_eq!(line["label"], "Bx[j=0]");
    assert_eq!(line["conics"]["common_points"], 2);
}

#[test]
fn invariant_intersections() {
    let (code, r) = report(&["verify", "--theorem", "invariant-intersection", "--degree", "4", "--osc-degree", "1"]);
    assert_eq!(code, 0);
    assert!(r["payload"]["suite"]["orbits_checked"].as_u64().unwrap() > 0);
}

#[test]
fn collinear_cubic_has_81_lines() {
    let (code, r) = report(&["collinear", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["count"], 81);
    assert_eq!(r["payload"]["intra_cluster"], 27);
}

#[test]
fn reports_are_stable() {
    let args = ["tangents", "--degree", "4", "--kind", "inflection", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let (_, r) = report(&args);
    assert_eq!(r["seed"], 7);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["points", "--degree", "2"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--degree", "4", "--arrangement", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--degree", "4", "--theorem", "main", "--line-index", "99"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn table_format_and_out_file() {
    let out = run(&["hessian2", "--degree", "4", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("determinant = -1 * factored"));
    assert!(text.ends_with("status: ok\n"));

    let path = std::env::temp_dir().join(format!("sextactic-cli-{}.json", std::process::id()));
    let out = run(&["census", "--degree", "3", "--arrangement", "B", "--out", path.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(r["payload"]["profile"], serde_json::json!({ "3": 12 }));
}

#[test]
fn full_suite_for_d4() {
    let (code, r) = report(&["all", "--d-min", "4", "--d-max", "4"]);
    assert_eq!(code, 0, "{}", r["failures"]);
    assert_eq!(r["payload"]["degrees"][0]["steps"].as_array().unwrap().len(), 11);
}
