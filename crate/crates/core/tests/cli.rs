use std::process::{Command, Output};
use std::str::FromStr;

use serde_json::Value;
use splitquat::algebra::{Exact, Signature};
use splitquat::cli::{parse_poly, run};
use splitquat::factorization::all_factorizations;

const EXAMPLE: &str = "t^2 - (2+j+2k)t + (1-2i+j+2k)";

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitquat")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("splitquat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn exact(v: &Value) -> Exact {
    Exact::from_str(v.as_str().expect("exact scalars are strings")).unwrap()
}

#[test]
fn factor_json_round_trips() {
    let out = bin(&["factor", EXAMPLE, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["backend"], "exact");
    let fs = doc["factorizations"].as_array().unwrap();
    assert_eq!(fs.len(), 6);

    let expected = all_factorizations(&parse_poly(EXAMPLE, Signature::Split).unwrap()).unwrap();
    for (f, e) in fs.iter().zip(&expected) {
        let h1: Vec<Exact> = f["h1"].as_array().unwrap().iter().map(exact).collect();
        let h2: Vec<Exact> = f["h2"].as_array().unwrap().iter().map(exact).collect();
        assert_eq!(h1, e.h1.coords().into_iter().cloned().collect::<Vec<_>>());
        assert_eq!(h2, e.h2.coords().into_iter().cloned().collect::<Vec<_>>());
        let c = f["complement"].as_u64().unwrap() as usize;
        assert_eq!(fs[c - 1]["complement"].as_u64().unwrap() as usize, f["index"].as_u64().unwrap() as usize);
    }
}

#[test]
fn hamiltonian_has_two() {
    let out = bin(&["--algebra", "hamilton", "factor", "t^2 - (2+j+2k)t + (1+2i+j+2k)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["factorizations"].as_array().unwrap().len(), 2);
}

#[test]
fn norm_roots() {
    let doc = json(&bin(&["norm", EXAMPLE, "--format", "json"]));
    let roots: Vec<Exact> = doc["real_roots"].as_array().unwrap().iter().map(exact).collect();
    let want: Vec<Exact> = [-1, 0, 2, 3].into_iter().map(Exact::int).collect();
    assert_eq!(roots, want);
    assert_eq!(doc["square_free"], true);
}

#[test]
fn non_generic_exits_2_with_json_on_stderr() {
    let out = bin(&["--format", "json", "factor", "t^2+1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "NonGeneric");
    assert_eq!(err["exit_code"], 2);
}

#[test]
fn parse_error_position() {
    let out = bin(&["--format", "json", "factor", "t^2 + (1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Parse");
    assert!(err["position"].is_u64());
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(bin(&["nonsense"]).status.code(), Some(1));
    assert_eq!(bin(&["factor"]).status.code(), Some(1));
    let help = bin(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("factor"));
}

#[test]
fn verify_passes() {
    let out = bin(&["verify", EXAMPLE, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for c in doc["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
    }
}

#[test]
fn svg_marks() {
    let out = bin(&["linkage", EXAMPLE, "--format", "svg"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"joint fixed").count(), 6);
    assert_eq!(svg.matches("class=\"joint moving").count(), 6);
    assert_eq!(svg.matches("class=\"null-tangent\"").count(), 4);
    assert!(svg.contains("null-circle"));
}

#[test]
fn simulate_csv() {
    let out = bin(&["--format", "csv", "--samples", "5", "--t-range", "-1:1", "simulate", EXAMPLE, "--tracer", "1,3,1"]);
    assert_eq!(out.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().clone();
    assert_eq!(&header[0], "t");
    assert!(header.iter().any(|h| h.starts_with("B12")));
    let rows: Vec<_> = r.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|row| row.len() == header.len()));
}

#[test]
fn midpoints_of_j_and_k() {
    let doc = json(&bin(&["midpoints", "j", "k", "--format", "json"]));
    let ms = doc["midpoints"].as_array().unwrap();
    assert_eq!(ms.len(), 2);
    for m in ms {
        assert_eq!(exact(&m["quadrance_a"]), Exact::ratio(1, 2));
        assert_eq!(exact(&m["quadrance_b"]), Exact::ratio(1, 2));
    }
}

#[test]
fn output_is_deterministic() {
    let a = in_process(&["linkage", EXAMPLE, "--format", "json"]);
    let b = in_process(&["linkage", EXAMPLE, "--format", "json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("splitquat-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, stdout, _) = in_process(&["factor", EXAMPLE, "--format", "json", "--out", p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(doc["command"], "factor");
}

#[test]
fn irrational_roots_fall_back_to_floats() {
    let (code, stdout, stderr) = in_process(&["--format", "json", "factor", "(t-(j+3k))(t-(1-i+2j))"]);
    assert_eq!(code, 0);
    let warn: Value = serde_json::from_str(stderr.lines().next().unwrap()).unwrap();
    assert_eq!(warn["warning"], "Inexact");
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["backend"], "float");
    assert!(doc["factorizations"][0]["h1"][0].is_f64());
}

#[test]
fn float_backend_agrees() {
    let doc = json(&bin(&["--backend", "float", "factor", EXAMPLE, "--format", "json"]));
    assert_eq!(doc["backend"], "float");
    assert_eq!(doc["factorizations"].as_array().unwrap().len(), 6);
}

#[test]
fn unsupported_format() {
    let out = bin(&["norm", EXAMPLE, "--format", "svg"]);
    assert_eq!(out.status.code(), Some(1));
}
