use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer-spin"))
        .args(args)
        .env_remove("KUMMER_SPIN_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn find_check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap())
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn triality_json_reports_j3() {
    let out = run(&["verify", "triality", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["schema"], 1);
    assert_eq!(find_check(&j, "J3_identity")["status"], "pass");
}

#[test]
fn cayley_reports_rank_one() {
    let out = run(&["verify", "cayley", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(find_check(&j, "cayley_equals_c2end")["status"], "pass");
    assert_eq!(find_check(&j, "invariant_rank")["data"]["invariant_rank"], 1);
    assert_eq!(find_check(&j, "sheaf_content")["status"], "skipped");
}

#[test]
fn cayley_with_h() {
    let out = run(&["verify", "cayley", "--n", "2", "--with-h", "1,0,0,0,0,-2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(find_check(&json_of(&out), "invariant_rank_w_h")["data"]["invariant_rank"], 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "triality", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "gamma"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "weil", "--n", "3", "--h", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "gamma", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    // h with (h,h) = 0 gives d = 0, which the Weil suite rejects.
    let out = run(&["verify", "weil", "--n", "3", "--h", "1,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall: fail"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("kummer-spin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gamma.json");
    let out = run(&["verify", "gamma", "--n", "5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(find_check(&j, "gamma_w_n5")["status"], "pass");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kummer-spin"))
        .args(["verify", "fm", "--format", "json"])
        .env("KUMMER_SPIN_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["suites"][0]["seed"], 11);
    let flag = Command::new(env!("CARGO_BIN_EXE_kummer-spin"))
        .args(["verify", "fm", "--format", "json", "--seed", "3"])
        .env("KUMMER_SPIN_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json_of(&flag)["suites"][0]["seed"], 3);
}

#[test]
fn stabilizer_runs_three_suites() {
    let out = run(&["verify", "stabilizer", "--n", "3", "--samples", "10", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> =
        json_of(&out)["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["stabilizer", "detchi", "modn"]);
}

#[test]
fn text_report_lists_checks() {
    let out = run(&["verify", "clifford"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[pass] clifford_relation"));
    assert!(text.ends_with("overall: pass\n"));
}
