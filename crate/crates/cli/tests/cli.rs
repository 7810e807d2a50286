use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hlg(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlg"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn dimension_of_two_loop_graphs_in_degree_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = hlg(dir.path(), &["dim", "--space", "c1rh", "--n", "4", "--r", "2", "--g", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["total"], 30);
    let out = hlg(dir.path(), &["dim", "--space", "omega2", "--n", "3", "--r", "2", "--g", "2"]);
    assert_eq!(json(&out)["total"], 0);
}

#[test]
fn single_weight_block() {
    let dir = tempfile::tempdir().unwrap();
    let out = hlg(dir.path(), &["dim", "--space", "c1rh", "--n", "4", "--r", "2", "--g", "2", "--weight", "1,1"]);
    let v = json(&out);
    assert_eq!(v["blocks"][0]["dim"], 3);
    assert_eq!(v["blocks"][0]["weight"], serde_json::json!([1, 1, 0, 0]));
    let out = hlg(dir.path(), &["dim", "--space", "c1rh", "--n", "4", "--r", "2", "--g", "2", "--weight", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_served_from_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let first = hlg(dir.path(), &["verify", "k-table"]);
    let second = hlg(dir.path(), &["verify", "k-table"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(json(&first)["pass"], true);
}

#[test]
fn failing_verification_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = hlg(dir.path(), &["verify", "factorization-subspace"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["computed"]["dimension"], 2);
    let again = hlg(dir.path(), &["verify", "factorization-subspace"]);
    assert_eq!(again.status.code(), Some(1));
}

#[test]
fn table_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = hlg(dir.path(), &["table", "--max-n", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("4 ") && l.ends_with("3[2] | [2]")), "{text}");
    assert_eq!(hlg(dir.path(), &["table", "--max-n", "7"]).status.code(), Some(2));
}

#[test]
fn usage_and_resource_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hlg(dir.path(), &["verify", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(hlg(dir.path(), &["dim", "--space", "c1rh"]).status.code(), Some(2));
    let out = hlg(dir.path(), &["--max-block", "5", "--no-cache", "dim", "--space", "c1rh", "--n", "4", "--r", "2", "--g", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reduce_a_template_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.hlg");
    fs::write(&file, "genus 2\n# a tree with a repeated letter\nT(T(h:a1, h:b1), h:a1, h:b2)\n").unwrap();
    let out = hlg(dir.path(), &["reduce", file.to_str().unwrap(), "--op", "trace-r", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["input_terms"], 1);
    assert!(v["output_terms"].as_u64().unwrap() > 0);
    let out = hlg(dir.path(), &["reduce", file.to_str().unwrap(), "--op", "trace-r"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn encode_check_reports_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.hlg");
    let bad = dir.path().join("bad.hlg");
    fs::write(&good, "2 T(h:a1, h:a2, h:b1)\n-1/2 T(h:a1, h:b2, h:b1)\n").unwrap();
    fs::write(&bad, "T(h:a1, h:a2\n").unwrap();
    let out = hlg(dir.path(), &["encode-check", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["files"][0]["info"]["terms"], 2);
    let out = hlg(dir.path(), &["encode-check", good.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["files"][1]["ok"], false);
}
