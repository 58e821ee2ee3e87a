use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn weier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weier"))
        .args(args)
        .env_remove("WEIER_NODE_CAP")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let s = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(s.ends_with('\n'), "output not newline-terminated: {s:?}");
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

const ELLIPTIC: &str = r#"{"field":{"type":"Q"},"genus":1,"P":["0","0","0","1"],"Q":["1"]}"#;

#[test]
fn classgroup_minus_23() {
    let out = weier(&["classgroup", "-d", "-23"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["h"], 3);
    assert_eq!(v["structure"], serde_json::json!([3]));
}

#[test]
fn disc_of_y2_plus_y_eq_x3() {
    let out = weier(&["disc", ELLIPTIC]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["discriminant"], "-27");
}

#[test]
fn disc_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_weier"))
        .arg("disc")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(ELLIPTIC.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["discriminant"], "-27");
}

#[test]
fn cover_of_quartic_has_genus_3() {
    let out = weier(&["cover", "-d", "2", r#"{"genus":1,"P":["1","1","0","0","1"]}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["genus"], 3);
    assert_eq!(v["P"], serde_json::json!(["1", "0", "1", "0", "0", "0", "0", "0", "1"]));
}

#[test]
fn twist_round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("weier-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("twist.json");
    let base = r#"{"genus":1,"P":["1","0","0","1"],"pointed":true}"#;
    assert_eq!(json_of(&weier(&["disc", base]))["discriminant"], "-432");
    let out = weier(&["twist", "--delta", "-3", base]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&path, &out.stdout).unwrap();
    assert_eq!(json_of(&weier(&["twist", "--delta", "-3", path.to_str().unwrap()]))["genus"], 1);
    // delta^(2(2g+1)) times the base discriminant.
    let d = json_of(&weier(&["disc", path.to_str().unwrap()]));
    assert_eq!(d["discriminant"], (-432i64 * 729).to_string());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn findfield_order_three() {
    let out = weier(&["findfield", "-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["d"], -23);
}

#[test]
fn minimize_split_prime_selection() {
    let curve = r#"{"field":{"type":"imquad","d":-23},"genus":1,"P":["0","0","0","1"],"Q":["1"]}"#;
    let all = json_of(&weier(&["minimize", "--prime", "3", curve]));
    assert_eq!(all["local_models"].as_array().unwrap().len(), 2);
    let s = all["local_models"][0]["prime"]["s"].to_string();
    let one = json_of(&weier(&["minimize", "--prime", "3", "--s", &s, curve]));
    assert_eq!(one["local_models"].as_array().unwrap().len(), 1);
    assert_eq!(one["local_models"][0], all["local_models"][0]);
}

#[test]
fn corpus_is_deterministic() {
    let a = weier(&["corpus", "--seed", "0", "--count", "1", "--genus", "1"]);
    let b = weier(&["corpus", "--seed", "0", "--count", "1", "--genus", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["curves"].as_array().unwrap().len(), 1);
    assert_eq!(v["curves"][0]["curve"]["genus"], 1);
}

fn code(args: &[&str]) -> i32 {
    weier(args).status.code().unwrap()
}

#[test]
fn exit_codes_on_golden_inputs() {
    let w_class = r#"{"field":{"type":"imquad","d":-5},"genus":1,"P":[["8","0"],"0","0","1"],"pointed":true}"#;
    let cases: &[(&[&str], i32)] = &[
        (&["analyze", ELLIPTIC], 0),
        (&["analyze", r#"{"genus":2,"P":["1","0","0","0","0","1"]}"#], 0),
        (&["analyze", w_class], 2),
        (&["analyze", "--node-cap", "1", r#"{"genus":2,"P":["64","0","0","0","0","1"]}"#], 3),
        (&["analyze", "{not json"], 1),
        (&["analyze", r#"{"genus":1,"P":"x"}"#], 1),
        (&["analyze", r#"{"genus":1,"P":["0","0","0","0","0","0","1"]}"#], 1),
        (&["analyze", r#"{"genus":1,"P":["0"]}"#], 1),
        (&["analyze", "--field", "imquad:-5", ELLIPTIC], 1),
        (&["analyze", "/nonexistent/curve.json"], 1),
        (&["twist", "--delta", "0", r#"{"genus":1,"P":["1","0","0","1"],"pointed":true}"#], 1),
        (&["twist", "--delta", "2", ELLIPTIC], 1),
        (&["classgroup", "-d", "-4"], 1),
        (&["classgroup"], 1),
        (&["frobnicate"], 1),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "weier {args:?}");
    }
}

#[test]
fn errors_are_json() {
    let out = weier(&["disc", r#"{"genus":1,"P":"x"}"#]);
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "Parse");
}

#[test]
fn analyze_reports_synthesis() {
    let out = weier(&["analyze", r#"{"genus":2,"P":["1","0","0","0","0","1"]}"#]);
    let v = json_of(&out);
    assert_eq!(v["verdicts"]["exists_integral_eq"], true);
    assert!(v["synthesized"].is_object());
}

#[test]
fn node_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_weier"))
        .args(["analyze", r#"{"genus":2,"P":["64","0","0","0","0","1"]}"#])
        .env("WEIER_NODE_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
