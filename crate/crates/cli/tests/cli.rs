use std::path::PathBuf;
use std::process::{Command, Output};

fn wittkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wittkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn star_of_minus_one_teichmuller() {
    let o = wittkit(&["witt", "star", "--ring", "Z", "--n", "2", "--u", "1,0", "--v", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1,0");
}

#[test]
fn witt_json_encoding() {
    let o = wittkit(&["witt", "add", "--ring", "F5", "--u", "1,2,3", "--v", "3,0,0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ring"], "F5");
    assert_eq!(v["n"], 3);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
}

#[test]
fn frobenius_needs_divisible_length() {
    let o = wittkit(&["witt", "frobenius", "--ring", "Z", "--u", "1,0,0", "--s", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wittkit(&["witt", "frobenius", "--ring", "Z", "--u", "1,0,0,0", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ptypical_ghost() {
    let o = wittkit(&["ptypical", "ghost", "--p", "3", "--ring", "Z", "--u", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,4");
}

#[test]
fn hasse_arf_all_agree() {
    let o = wittkit(&["hasse-arf", "--r", "3/2", "--samples", "50", "--seed", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["agreements"], 50);
    assert_eq!(v["samples"], 50);
}

#[test]
fn malformed_ring_is_usage_error() {
    let o = wittkit(&["witt", "star", "--ring", "F[", "--u", "1", "--v", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot parse ring"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(wittkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wittkit(&["suite", "nothing"]).status.code(), Some(2));
}

#[test]
fn phi_of_a_closed_point() {
    let o = wittkit(&["phi", "--field", "F7", "--n", "2", "--cycle", "[x^2+1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + t^2");
    let o = wittkit(&["phi", "--field", "F7", "--n", "2", "--cycle", r#"[{"poly": "x^2+1", "mult": 1}]"#, "--json"]);
    assert_eq!(json(&o)["value"]["coeffs"], serde_json::json!(["0", "1"]));
}

#[test]
fn transfer_matches_norm() {
    let o = wittkit(&["transfer", "--group", "Gm", "--algebra", "F5[x]/(x^2-2)", "--element", "x", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"], "3");
    assert_eq!(v["agrees"], true);
}

#[test]
fn homotopy_verify_and_reject() {
    let o = wittkit(&["homotopy", "verify", "--family", "gm1", "--s", "2", "--field", "F7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["family", "params", "boundary0", "boundary1", "expected0", "expected1", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let o = wittkit(&["homotopy", "verify", "--family", "gm2", "--s", "2", "--field", "F7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn suite_homotopy_corpus_passes() {
    let o = wittkit(&["suite", "homotopy-corpus", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn suite_reruns_are_identical() {
    let a = wittkit(&["suite", "witt-laws", "--seed", "1", "--json"]);
    let b = wittkit(&["suite", "witt-laws", "--seed", "1", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn drw_axioms_reject_even_prime() {
    let o = wittkit(&["suite", "drw-axioms", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p must be odd"));
}

#[test]
fn drw_present_then_check() {
    let path = scratch("pres.json");
    let p = path.to_str().unwrap();
    let o = wittkit(&["drw", "present", "--A", "F3[x]", "--n", "2", "--q", "1", "--dx", "3", "--dr", "2", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = wittkit(&["drw", "check", "--pres", p, "--lhs", "F(d[t^2])", "--rhs", "2*[t^5]*d[t]", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], "EQUAL");
    let o = wittkit(&["drw", "check", "--pres", p, "--lhs", "d[t]", "--rhs", "2*d[t]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("DISTINCT"));
}

#[test]
fn out_file_matches_json_stdout() {
    let path = scratch("star.json");
    let o = wittkit(&["witt", "star", "--ring", "Z/12", "--u", "5,7", "--v", "2,11", "--json", "--out", path.to_str().unwrap()]);
    let file = std::fs::read(&path).unwrap();
    assert_eq!(String::from_utf8_lossy(&file).trim(), stdout(&o));
}
