use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ncalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncalg")).args(args).output().expect("binary runs")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

const TWO_LOOPS: &str =
    r#"{"vertices":["v"],"edges":[{"tail":"v","head":"v","name":"x"},{"tail":"v","head":"v","name":"y"}]}"#;

#[test]
fn hilbert_of_two_loop_preprojective() {
    let q = temp_file("two_loops.json", TWO_LOOPS);
    let out = ncalg(&["hilbert", "--quiver", q.to_str().unwrap(), "--order", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let coeffs: Vec<&str> = v["h_a"]["entries"][0][0].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "4", "15", "56"]);
    let oa: Vec<&str> = v["h_oa"]["coeffs"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(&oa[..3], ["1", "4", "20"]);
}

#[test]
fn hilbert_order_zero() {
    let q = temp_file("two_loops0.json", TWO_LOOPS);
    let out = ncalg(&["hilbert", "--quiver", q.to_str().unwrap(), "--order", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h_a"]["entries"][0][0], serde_json::json!(["1"]));
    assert_eq!(v["h_oa"]["coeffs"], serde_json::json!(["1"]));
}

#[test]
fn malformed_input_exits_2() {
    let bad = temp_file("bad.json", "{ not json");
    let out = ncalg(&["hilbert", "--datum", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = ncalg(&["hilbert", "--datum", "/nonexistent/datum.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ncalg(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for (suite, order) in [("affine", "30"), ("monomial", "12"), ("oracle", "6")] {
        let out = ncalg(&["verify", "--suite", suite, "--order", order]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn mc_fails_with_exit_1_when_band_is_impossible() {
    let d = temp_file("free.json", r#"{"dim_i":1,"dims_v":[[[0,1]]],"dims_l":[[[]]]}"#);
    let args = ["mc", "--datum", d.to_str().unwrap(), "--dims", "8", "--order", "4", "--samples", "200", "--seed", "1"];
    let out = ncalg(&[&args[..], &["--sigmas", "0", "--floor", "0"]].concat());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sigma"));
}

#[test]
fn output_is_deterministic() {
    let d = temp_file("free2.json", r#"{"dim_i":1,"dims_v":[[[0,1]]],"dims_l":[[[]]]}"#);
    let args = ["mc", "--datum", d.to_str().unwrap(), "--dims", "6", "--order", "3", "--samples", "500", "--seed", "7"];
    let a = ncalg(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_ncalg")).args(args).env("NCALG_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v1 = ncalg(&["verify", "--suite", "riemsur"]);
    let v2 = ncalg(&["verify", "--suite", "riemsur"]);
    assert_eq!(v1.stdout, v2.stdout);
}

#[test]
fn csv_and_text_formats() {
    let out = ncalg(&["verify", "--suite", "super", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite,name,passed,order,first_diff"));
    let out = ncalg(&["verify", "--suite", "dtable", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn bad_thread_count_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_ncalg"))
        .args(["verify", "--suite", "super"])
        .env("NCALG_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
