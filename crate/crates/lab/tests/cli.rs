use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threshold-lab"))
        .args(args)
        .env_remove("THRESHOLD_LAB_GUARD_N")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const TRIANGLE_112: &str = r#"{"n":3,"edges":[[0,1],[1,2],[0,2]],"thresholds":[1,1,2]}"#;
const CYCLE4: &str = r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]],"thresholds":[1,1,1,1]}"#;

#[test]
fn simulate_triangles() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", TRIANGLE_112);
    let v = json(&lab(&["simulate", "--input", t.to_str().unwrap(), "--initial", "BWW"]));
    assert_eq!(v["transient"], 0);
    assert_eq!(v["period"], 2);
    assert_eq!(v["cycle"], serde_json::json!(["BWW", "WBW"]));

    let ones = write(&dir, "ones.json", r#"{"n":3,"edges":[[0,1],[1,2],[0,2]],"types":[[0,1],[0,1],[0,1]]}"#);
    let v = json(&lab(&["simulate", "--input", ones.to_str().unwrap(), "--initial", "BWW"]));
    assert_eq!(v["transient"], 2);
    assert_eq!(v["cycle"], serde_json::json!(["BBB"]));
}

#[test]
fn simulate_weighted() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "w.json", r#"{"n":2,"edges":[[0,1]],"thresholds":[0,0],"weights":[-1]}"#);
    let v = json(&lab(&["simulate", "--input", w.to_str().unwrap(), "--initial", "BW"]));
    assert_eq!((v["transient"].as_u64(), v["period"].as_u64()), (Some(0), Some(1)));
}

#[test]
fn enumerate_four_cycle() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", CYCLE4);
    let one = lab(&["enumerate", "--input", c.to_str().unwrap(), "--workers", "1"]);
    assert_eq!(String::from_utf8_lossy(&one.stdout).trim(), r#"{"fixed_points":2,"two_cycles":1,"cycle_classes":3}"#);
    let many = lab(&["enumerate", "--input", c.to_str().unwrap(), "--workers", "3"]);
    assert_eq!(one.stdout, many.stdout);
    let v = json(&lab(&["enumerate", "--input", c.to_str().unwrap(), "--witnesses", "10"]));
    assert_eq!(v["fixed_point_list"], serde_json::json!(["WWWW", "BBBB"]));
    assert_eq!(v["two_cycle_list"], serde_json::json!([["BWBW", "WBWB"]]));
}

#[test]
fn guard_from_environment() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", CYCLE4);
    let out = Command::new(env!("CARGO_BIN_EXE_threshold-lab"))
        .args(["enumerate", "--input", c.to_str().unwrap()])
        .env("THRESHOLD_LAB_GUARD_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(lab(&["enumerate", "--input", c.to_str().unwrap(), "--guard-n", "3"]).status.code(), Some(3));
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        r#"{"n":3,"edges":[[0,1]],"thresholds":[1,1,1]}"#,
        r#"{"n":2,"edges":[[0,1]],"thresholds":[1,1],"colour":3}"#,
        r#"{"n":2,"edges":[[0,0]],"thresholds":[1,1]}"#,
        r#"{"n":2,"edges":[[0,1]],"thresholds":[1]}"#,
        "not json",
    ];
    for (i, text) in cases.iter().enumerate() {
        let p = write(&dir, &format!("bad{i}.json"), text);
        let out = lab(&["enumerate", "--input", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "case {i}");
    }
    let t = write(&dir, "t.json", TRIANGLE_112);
    assert_eq!(lab(&["simulate", "--input", t.to_str().unwrap(), "--initial", "BW"]).status.code(), Some(2));
    assert_eq!(lab(&["simulate", "--input", t.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reduce_fix_verifies() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"variant":"monotone-2dnf","n":2,"clauses":[[1,2]]}"#);
    let v = json(&lab(&["reduce", "--kind", "fix", "--formula", f.to_str().unwrap(), "--verify"]));
    assert_eq!(v["n"], 18);
    assert_eq!(v["labels"][0], "s1^1");
    let check = &v["verify"];
    assert_eq!(check["fixed_points"], 18);
    assert_eq!(check["recovered_sat"], 1);
    assert_eq!(check["oracle_sat"], 1);
    assert_eq!(check["verdict"], "MATCH");
}

#[test]
fn reduce_pred_kinds() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"variant":"3cnf","n":2,"clauses":[[1,-2],[2]]}"#);
    let v = json(&lab(&["reduce", "--kind", "pred", "--formula", f.to_str().unwrap(), "--verify"]));
    assert_eq!(v["n"], 11);
    assert_eq!(v["verify"]["reachable"], true);
    assert_eq!(v["verify"]["verdict"], "MATCH");

    let g = write(&dir, "g.json", r#"{"variant":"monotone-2cnf","n":2,"clauses":[[1,2]]}"#);
    let out = lab(&["reduce", "--kind", "reachable-pred", "--formula", g.to_str().unwrap(), "--verify"]);
    let v = json(&out);
    assert_eq!((v["claimed"].as_u64(), v["measured"].as_u64()), (Some(3), Some(9)));
    assert!(v["discrepancy"].is_string());
    assert_eq!(v["verify"]["verdict"], "MATCH");
    assert!(String::from_utf8_lossy(&out.stderr).contains("differs"));
}

#[test]
fn expansions_output_node_maps() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", TRIANGLE_112);
    let v = json(&lab(&["expand", "--kind", "bipartite", "--input", t.to_str().unwrap()]));
    assert_eq!(v["n"], 6);
    assert_eq!(v["thresholds"], serde_json::json!([1, 1, 2, 1, 1, 2]));
    assert_eq!(v["node_map"][3], "mirror:0");

    let v = json(&lab(&["expand", "--kind", "symmetric", "--input", t.to_str().unwrap()]));
    assert_eq!(v["n"], 30);
    assert_eq!(v["node_map"].as_array().unwrap().len(), 30);
    assert_eq!(lab(&["expand", "--kind", "symmetric", "--input", t.to_str().unwrap(), "--max-states", "20"]).status.code(), Some(3));

    let v = json(&lab(&["expand", "--kind", "remove-node", "--node", "1", "--pin", "B", "--input", t.to_str().unwrap()]));
    assert_eq!(v["components"][0]["relabel"], serde_json::json!([0, 2]));
    assert_eq!(v["components"][0]["thresholds"], serde_json::json!([0, 1]));

    let w = write(&dir, "w.json", r#"{"n":2,"edges":[[0,1]],"thresholds":[1,0],"weights":[2],"self_loops":[[1,-1]]}"#);
    let v = json(&lab(&["expand", "--kind", "drop-self-loops", "--input", w.to_str().unwrap()]));
    assert_eq!(v["weights"], serde_json::json!([2, -1, 2]));
    let w2 = write(&dir, "w2.json", r#"{"n":2,"edges":[[0,1]],"thresholds":[1,0],"weights":[-2]}"#);
    let v = json(&lab(&["expand", "--kind", "unit-weights", "--input", w2.to_str().unwrap()]));
    assert_eq!(v["n"], 4);
    assert!(v["weights"].as_array().unwrap().iter().all(|x| x == -1));
}

#[test]
fn resilience_modes() {
    let v = json(&lab(&["resilience", "--family", "complete", "--size", "4", "--K", "2"]));
    assert_eq!(v["mu"], serde_json::json!([5, 3]));
    let a = lab(&["resilience", "--family", "cycle", "--size", "6", "--K", "1", "--workers", "1"]);
    let b = lab(&["resilience", "--family", "cycle", "--size", "6", "--K", "1", "--workers", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["mu"], serde_json::json!([2, 1]));

    let v = json(&lab(&["resilience", "--mode", "closed-form", "--family", "path", "--size", "5", "--K", "1"]));
    assert_eq!(v["mu"], serde_json::json!([3, 2]));
    assert_eq!(lab(&["resilience", "--mode", "closed-form", "--family", "path", "--size", "4", "--K", "2"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", CYCLE4);
    let v = json(&lab(&["resilience", "--mode", "greedy", "--input", c.to_str().unwrap(), "--K", "4"]));
    assert_eq!(v["l1"], serde_json::json!([2, 1]));
    assert_eq!(v["recovers"], true);
}

#[test]
fn verify_prints_table() {
    let out = lab(&["verify", "--criterion", "8", "--criterion", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains("PASS")));
    assert_eq!(lab(&["verify", "--criterion", "11"]).status.code(), Some(2));
}
