use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_revschwarz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.is_empty() || text.ends_with('\n'));
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn evaluate_hile_example() {
    let out = run(&["evaluate"], r#"{"bound":"HILE","x":[2,0],"y":[0,1]}"#);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["lhs"], 2.0);
    assert!((r["rhs"].as_f64().unwrap() - 11.25).abs() < 1e-12);
    assert_eq!(r["satisfied"], true);
}

#[test]
fn zero_samples_is_a_config_error() {
    let out = run(&["fuzz", "--samples", "0"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("samples"));
}

#[test]
fn triangle_reverse_k_example() {
    let out = run(
        &["triangle"],
        r#"{"op":"reverse_k","e":[1,0],"xs":[[1,0],[1,1]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    let gap = 1.0 + 2f64.sqrt() - 5f64.sqrt();
    assert!((r["gap"].as_f64().unwrap() - gap).abs() < 1e-12);
    assert!((r["bound"].as_f64().unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
}

#[test]
fn malformed_input_names_the_field() {
    let out = run(&["evaluate"], r#"{"bound":"HILE","x":[2,0],"yy":[0,1]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`yy`"));
    let out = run(&["evaluate"], r#"{"bound":"ANGULAR","x":[1,0],"y":[0,1]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`r`"));
}

#[test]
fn violation_exits_one() {
    // x = e, gamma = 0, Gamma = 2 is a counterexample to the literal lower band bound.
    let req = r#"{"bound":"GAMMA_BAND_LOW","x":[1,0],"e":[1,0],"params":{"gamma":0,"Gamma":2}}"#;
    let out = run(&["evaluate"], req);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["satisfied"], false);
}

#[test]
fn golden_round_trip_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("requests.jsonl");
    std::fs::write(
        &input,
        concat!(
            r#"{"bound":"ANGULAR","x":[1,0],"y":[0.3,1],"params":{"r":1.5}}"#,
            "\n\n",
            r#"{"bound":"AA_QUAD","x":[[1,0.5],[1,0]],"y":[[1,0],[0,0]],"params":{"a":[0,0.1],"A":2}}"#,
            "\n",
            r#"{"bound":"POWER_P","x":[1,2,3],"y":[3,2,1],"space":{"gram":[[2,0,0],[0,1,0],[0,0,1]]}}"#,
            "\n",
        ),
    )
    .unwrap();
    let golden = dir.path().join("golden.jsonl");
    let args = [
        "evaluate",
        input.to_str().unwrap(),
        "--output",
        golden.to_str().unwrap(),
    ];
    assert_eq!(run(&args, "").status.code(), Some(0));
    let first = std::fs::read(&golden).unwrap();
    assert_eq!(run(&args, "").status.code(), Some(0));
    assert_eq!(std::fs::read(&golden).unwrap(), first);
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.ends_with('\n'));
}

#[test]
fn fuzz_is_independent_of_workers() {
    let base = [
        "fuzz",
        "--bound",
        "ANGULAR",
        "--bound",
        "reverse_min_ab",
        "--samples",
        "400",
    ];
    let one = run(&[&base[..], &["--workers", "1"]].concat(), "");
    let three = run(&[&base[..], &["--workers", "3"]].concat(), "");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(json_lines(&one).len(), 2);
}

#[test]
fn known_false_bound_fails_fuzz() {
    let out = run(
        &["fuzz", "--bound", "GAMMA_BAND_UP", "--samples", "200"],
        "",
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(json_lines(&out)[0]["violations"].as_u64().unwrap() > 0);
}

#[test]
fn identities_pass() {
    let out = run(
        &["identities", "--samples", "2000", "--dims", "1,2,3,5,8"],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["passed"], true);
}

#[test]
fn sharpen_reports_hex_witness() {
    let out = run(&["sharpen", "--bound", "ANGULAR"], "");
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["method"], "CONSTRUCTED");
    assert_eq!(r["witness"]["params"]["r"], "0x1.6a09e667f3bcdp+0");
}
