use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl-kit")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn failure(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    (out.status.code().unwrap(), err)
}

#[test]
fn pairing_examples() {
    let v = json_ok(&["pairing", "--kind", "A", "--n", "2", "--lam", "2", "--nu", "2", "--symbolic"]);
    assert_eq!(v["value"], "4 + 4*theta");
    let v = json_ok(&["pairing", "--kind", "D", "--n", "2", "--lam", "e", "--nu", "e", "--theta", "1"]);
    assert_eq!(v["value"], "3");
    let v = json_ok(&["pairing", "--kind", "BC", "--n", "1", "--lam", "2", "--nu", "2"]);
    assert_eq!(v["value"], "2 + 4*theta1");
}

#[test]
fn gram_and_bessel() {
    let g = json_ok(&["gram", "--kind", "D", "--n", "2", "--deg", "2", "--sector", "full"]);
    assert_eq!(g["basis"], serde_json::json!(["p(2)", "e"]));
    assert_eq!(g["entries"][0][1], "0");
    let b = json_ok(&["bessel", "--kind", "A", "--n", "2", "--deg", "1", "--theta", "1"]);
    assert_eq!(b["terms"][0]["coef"], "1/2");
    let b = json_ok(&["bessel", "--kind", "D", "--n", "2", "--deg", "2", "--theta", "1"]);
    let terms = b["terms"].as_array().unwrap();
    assert!(terms.iter().any(|t| t["a"] == "e" && t["x"] == "e" && t["coef"] == "1/3"));
}

#[test]
fn onevar_examples() {
    assert_eq!(
        json_ok(&["onevar", "--kind", "A", "--a", "0", "--theta", "1", "--kmax", "3"]),
        serde_json::json!(["1", "0", "0", "0"])
    );
    let v = json_ok(&["onevar", "--kind", "A", "--a", "1,2,3", "--theta", "1/2", "--kmax", "1"]);
    // θ·p₁(a)/(θN) = 6/3
    assert_eq!(v[1], "2");
}

#[test]
fn ncpart_lists_catalan_many() {
    let v = json_ok(&["ncpart", "--k", "3"]);
    assert_eq!(v["count"], 5);
    assert_eq!(v["partitions"].as_array().unwrap().len(), 5);
    let v = json_ok(&["ncpart", "--k", "4", "--filter", "even", "--stats"]);
    assert_eq!(v["count"], 3);
    assert!(v["partitions"][0]["stats"]["o"].is_number());
}

#[test]
fn asymptotics_commands() {
    let v = json_ok(&["leading", "--thm", "a", "--lam", "2", "--nu", "2"]);
    assert_eq!(v["leading"], "2*N^2*theta");
    let v = json_ok(&["verify", "--thm", "odd", "--lam", "2,2", "--nu", "2,2", "--nmin", "4", "--nmax", "10"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["nRange"].as_array().unwrap().len(), 7);
    let v = json_ok(&["verify", "--thm", "a", "--lam", "2", "--nu", "2", "--nmin", "2", "--nmax", "6"]);
    assert_eq!(v["interpolant"], "2*N - 2*N*theta + 2*N^2*theta");
    let v = json_ok(&["summation", "--kind", "BC", "--lam", "2", "--nu", "2", "--n", "6"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn moment_commands() {
    let v = json_ok(&["moments", "--regime", "bc", "--c-param", "1/2", "--cumulants", "0,1,0,0"]);
    assert_eq!(v["moments"][1], "6");
    let v = json_ok(&["moments", "--regime", "a", "--moments", "2,4,8"]);
    assert_eq!(v["cumulants"], serde_json::json!(["2", "0", "0"]));
    let v = json_ok(&["freeconv", "--regime", "a", "--ma", "0,2,0,8", "--mb", "0,3,0,18"]);
    assert_eq!(v["moments"], serde_json::json!(["0", "5", "0", "50"]));
}

#[test]
fn exit_codes() {
    let (code, err) = failure(&["pairing", "--kind", "A", "--n", "2", "--lam", "2"]);
    assert_eq!((code, err["error"].as_str()), (2, Some("UsageError")));
    let (code, _) = failure(&["pairing", "--kind", "Q", "--n", "2", "--lam", "2", "--nu", "2"]);
    assert_eq!(code, 2);
    let (code, _) =
        failure(&["pairing", "--kind", "A", "--n", "2", "--lam", "2", "--nu", "2", "--theta", "1", "--symbolic"]);
    assert_eq!(code, 2);
    let (code, err) = failure(&["bessel", "--kind", "D", "--n", "2", "--deg", "2", "--theta", "-1/2"]);
    assert_eq!((code, err["error"].as_str()), (1, Some("SingularGram")));
    let (code, err) = failure(&["summation", "--kind", "A", "--lam", "2", "--nu", "2", "--n", "2"]);
    assert_eq!((code, err["error"].as_str()), (1, Some("PreconditionViolated")));
    let (code, err) = failure(&["moments", "--regime", "d", "--cumulants", "1"]);
    assert_eq!((code, err["error"].as_str()), (1, Some("ParityMismatch")));
}

#[test]
fn output_is_deterministic() {
    let args = ["gram", "--kind", "BC", "--n", "2", "--deg", "4", "--sector", "even"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_dunkl-kit")).args(args).env("DUNKL_KIT_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let bad =
        Command::new(env!("CARGO_BIN_EXE_dunkl-kit")).args(args).env("DUNKL_KIT_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
