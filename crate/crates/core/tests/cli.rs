use std::process::{Command, Output};

fn foldalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foldalg")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn fold_prints_the_b2_triple() {
    let out = foldalg(&["fold", "--preset", "a3_swap"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["C"], serde_json::json!([[2, -1], [-2, 2]]));
    assert_eq!(v["D"], serde_json::json!([2, 1]));
    assert_eq!(v["Omega"], serde_json::json!([["o_1", "o_2"]]));
}

#[test]
fn fold_without_action_is_an_input_error() {
    let out = foldalg(&["fold", "--preset", "pi_a2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no group action"));
}

#[test]
fn theorem_b_rejects_the_wrong_characteristic() {
    let out = foldalg(&["verify", "theorem-b", "--preset", "a3_swap", "--field", "f3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = foldalg(&["verify", "theorem-b", "--preset", "a3_swap", "--field", "q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theorem_b_json_report() {
    let out = foldalg(&["verify", "theorem-b", "--preset", "a3_swap", "--field", "f2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    for name in ["square", "vanishing", "quotient-dimensions", "induced-monoid"] {
        assert!(checks.iter().any(|c| c["name"] == name), "missing {name}");
    }
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn weyl_b2() {
    let out = foldalg(&["weyl", "--preset", "pi_b2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("order 8"));
    assert!(!text.contains("FAILS"));
}

#[test]
fn algebra_pi_a2_over_q() {
    let out = foldalg(&["algebra", "--preset", "pi_a2", "--field", "q", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["field"], "Q");
}

#[test]
fn monoid_b2_reaches_zero() {
    let out = foldalg(&["monoid", "--preset", "pi_b2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["element_count"], 8);
    let elements = v["elements"].as_array().unwrap();
    assert!(elements.iter().any(|e| e["is_zero_ideal"] == true && e["word"].as_array().unwrap().len() == 4));
}

#[test]
fn caps_exit_with_three() {
    let out = foldalg(&["algebra", "--preset", "pi_a2", "--dim-cap", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = foldalg(&["monoid", "--preset", "d4_rot3", "--field", "f3", "--element-cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_inputs_exit_with_two() {
    assert_eq!(foldalg(&["fold", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(foldalg(&["algebra", "--preset", "pi_a2", "--field", "f4"]).status.code(), Some(2));
    assert_eq!(foldalg(&["algebra", "--preset", "pi_a2", "--kind", "h"]).status.code(), Some(2));

    let path = temp_json("dangling", r#"{"vertices": ["1"], "arrows": [{"id": "a", "from": "1", "to": "2"}]}"#);
    assert_eq!(foldalg(&["weyl", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn reads_quiver_files() {
    let path = temp_json(
        "a3",
        r#"{"vertices": ["x", "y", "z"], "arrows": [{"id": "a", "from": "x", "to": "y"}, {"id": "b", "from": "y", "to": "z"}]}"#,
    );
    let out = foldalg(&["algebra", path.to_str().unwrap(), "--field", "f3"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dimension 10"));
}

fn temp_json(tag: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("foldalg-cli-{}-{tag}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}
