//! The `mfcat` binary end to end: exit codes, error paths, reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn mfcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfcat")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn single_cech_entry() {
    let out = mfcat(&["cech", "--space", "P2", "--twist", "-3", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((r["results"]["dim"].as_u64(), r["results"]["stable"].as_bool()), (Some(1), Some(true)));
}

#[test]
fn plane_homs_vanish_with_a_certificate() {
    let e = write("plane_e.json", r#"{"space": "P2", "mf": {"twists_1": [-1], "twists_0": [0], "e1": [["x2"]], "e0": [["1"]]}}"#);
    let f = write(
        "plane_f.json",
        r#"{"space": "P2", "mf": {"twists_1": [-1, -2], "twists_0": [0, -1],
             "e1": [["x2", "x0*x2"], ["0", "x2"]], "e0": [["1", "-x0"], ["0", "1"]]}}"#,
    );
    let out = mfcat(&["hom", "--model", "hyper", "--source", e.to_str().unwrap(), "--target", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["dim"], 0);
    assert_eq!(r["results"]["certificate"]["holds"], true);
    assert_eq!(r["results"]["threshold"]["tag"], "exact");
}

#[test]
fn malformed_polynomial_exits_one_with_the_field() {
    let e = write("bad_poly.json", r#"{"space": "P1", "mf": {"twists_1": [-1], "twists_0": [0], "e1": [["x0 +* x1"]], "e0": [["1"]]}}"#);
    let out = mfcat(&["verify", "--object", e.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("objects.object.mf.e1[0][0]"), "{err}");
}

#[test]
fn malformed_json_cites_the_line() {
    let e = write("bad_json.json", "{\n  \"space\": \"P1\",\n  \"mf\": {\"twists_1\": [-1,]}\n}");
    let out = mfcat(&["verify", "--object", e.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn bounded_searches_exit_two_when_inconclusive() {
    let job = r#"{
        "ring": {"variables": ["x", "y", "z"], "ideal": ["x*y"]},
        "context": {"w": "x + y", "mode": "projective"},
        "objects": {"n": {"module": {"gen_twists": [0], "rel_twists": [-1, -1], "relations": [["x", "y"]]}}},
        "command": {"name": "rel-perfect", "flags": {"module": "n", "bound": BOUND}}
    }"#;
    let short = write("node_short.json", &job.replace("BOUND", "2"));
    let out = mfcat(&["run", "--job", short.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["results"]["verdict"], "inconclusive");
    let long = write("node_long.json", &job.replace("BOUND", "6"));
    let out = mfcat(&["run", "--job", long.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["verdict"], "false-within-bound");
}

#[test]
fn reports_are_reproducible_apart_from_timing() {
    let strip = |out: &Output| {
        let mut v = json(out);
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    let a = mfcat(&["suite", "--profile", "p2-small", "--seed", "4"]);
    let b = mfcat(&["suite", "--profile", "p2-small", "--seed", "4"]);
    assert_eq!(strip(&a), strip(&b));
    let job = write(
        "repro.json",
        r#"{"space": "A1",
            "objects": {"e": {"mf": {"twists_1": [-2], "twists_0": [-1], "e1": [["u"]], "e0": [["v"]]}}},
            "command": {"name": "prop28", "flags": {"object": "e"}}}"#,
    );
    let a = mfcat(&["run", "--job", job.to_str().unwrap()]);
    let b = mfcat(&["--sequential", "run", "--job", job.to_str().unwrap()]);
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(json(&a)["results"]["locally_free"], "false");
}

#[test]
fn table_format() {
    let out = mfcat(&["--format", "table", "cech", "--space", "P1", "--twist", "-3", "--twist-to", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("command"), "{text}");
    assert!(text.contains("inconclusive  false"), "{text}");
}

#[test]
fn object_files_must_agree_on_the_space() {
    let e = write("line_e.json", r#"{"space": "P1", "mf": {"twists_1": [-1], "twists_0": [0], "e1": [["x0"]], "e0": [["1"]]}}"#);
    let f = write("plane_g.json", r#"{"space": "P2", "mf": {"twists_1": [-1], "twists_0": [0], "e1": [["x2"]], "e0": [["1"]]}}"#);
    let out = mfcat(&["hom", "--source", e.to_str().unwrap(), "--target", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
