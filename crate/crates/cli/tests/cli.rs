use std::process::{Command, Output};

use serde_json::Value;

fn twistkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_out(args: &[&str]) -> Value {
    let o = twistkit(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("json on stderr");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn trefoil_total_polynomial() {
    let v = json_out(&["invariants", "--example", "trefoil", "--parabolic", "auto", "--json"]);
    assert_eq!(v["delta"], "t^2+1");
    assert_eq!(v["evaluation"]["at_one"], "2");
    assert_eq!(v["cyclotomic"], true);
}

#[test]
fn two_bridge_words_route() {
    let v = json_out(&["invariants", "--two-bridge", "7/3", "--parabolic", "w^3+w^2+2*w+1", "--json"]);
    assert_eq!(v["delta"], "25*t^6-104*t^5+219*t^4-272*t^3+219*t^2-104*t+25");
    assert_eq!(v["fibering"]["leading_abs"], "25");
}

#[test]
fn whitehead_untwisted_grid() {
    let o = twistkit(&["invariants", "--example", "whitehead", "--untwisted"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("   1 -1\n  -1  1\n"), "{text}");
    let v = json_out(&["invariants", "--example", "whitehead", "--untwisted", "--json"]);
    assert_eq!(v["delta_grid"], serde_json::json!([["1", "-1"], ["-1", "1"]]));
}

#[test]
fn output_is_deterministic() {
    let args = ["invariants", "--example", "figure-eight", "--parabolic", "auto", "--json"];
    assert_eq!(twistkit(&args).stdout, twistkit(&args).stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["invariants", "--example", "trefoil"],
        vec!["invariants", "--example", "trefoil", "--diagram", "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]", "--untwisted"],
        vec!["invariants", "--untwisted"],
        vec!["nonsense"],
        vec!["torsion", "--example", "trefoil", "--untwisted", "--lattice", "1,2;3"],
    ] {
        let o = twistkit(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_with_one_and_json() {
    let o = twistkit(&["invariants", "--example", "riley", "--preset", "riley"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "DiagramUnavailable");
    let o = twistkit(&["invariants", "--two-bridge", "5/3", "--parabolic", "w^2+1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "SeedNotDivisor");
    let o = twistkit(&["invariants", "--diagram", "X[1,2,3]", "--untwisted"]);
    assert_eq!(error_kind(&o), "MalformedPd");
}

#[test]
fn config_file_supplies_options() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# trefoil run\nexample = trefoil\nparabolic = auto\njson = true\n").unwrap();
    let v = json_out(&["invariants", "--config", path.to_str().unwrap()]);
    assert_eq!(v["delta"], "t^2+1");
    let v = json_out(&["invariants", "--config", path.to_str().unwrap(), "--example", "figure-eight"]);
    assert_eq!(v["delta"], "t^4-8*t^3+18*t^2-8*t+1");
}

#[test]
fn pd_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.pd");
    std::fs::write(&path, "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]\n").unwrap();
    let v = json_out(&["invariants", "--diagram", path.to_str().unwrap(), "--untwisted", "--json"]);
    assert_eq!(v["delta"], "t^2-t+1");
}

#[test]
fn growth_prints_csv() {
    let o = twistkit(&["growth", "--example", "figure-eight", "--parabolic", "auto", "--rmax", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,index,b,log_b_per_index"));
    assert!(lines.next().unwrap().starts_with("1,1,4,"));
    assert!(text.contains("# extrapolated_rate,"));
}

#[test]
fn torsion_and_colorings() {
    let v = json_out(&["torsion", "--example", "figure-eight", "--parabolic", "auto", "--lattice", "2", "--json"]);
    assert_eq!(v["b"], "144");
    let v = json_out(&["colorings", "--example", "trefoil", "--prime", "3", "--json"]);
    assert_eq!(v["factors"], serde_json::json!(["3"]));
    assert_eq!(v["colorings"], "9");
}

#[test]
fn riley_and_mahler() {
    let v = json_out(&["riley", "--example", "whitehead", "--json"]);
    assert_eq!(v["riley"], "w^2+2*w+2");
    let v = json_out(&["riley", "--two-bridge", "11/1", "--recursion", "5", "--json"]);
    assert!(v["recursion"].as_array().unwrap().iter().all(|r| r["agrees"] == true));
    let v = json_out(&["mahler", "--poly", "(t^2-4*t+1)^2", "--json"]);
    assert!((v["value"].as_f64().unwrap() - 2.63392).abs() < 1e-4);
}

#[test]
fn presets_and_permutations() {
    let v = json_out(&["invariants", "--preset", "square:0,1", "--json"]);
    assert_eq!(v["delta"], "t^6-2*t^5+4*t^4-4*t^3+4*t^2-2*t+1");
    let v = json_out(&["invariants", "--example", "trefoil", "--perm", "x0:(1 2),x1:(2 3),x2:(1 3)", "--json"]);
    assert_eq!(v["dimension"], 3);
}

#[test]
fn thread_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_twistkit"))
        .args(["invariants", "--example", "5_2", "--parabolic", "auto", "--json"])
        .env("TWISTKIT_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn verify_paper_passes_every_check() {
    let o = twistkit(&["verify-paper"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.contains("PASS") || l.contains("FAIL")).collect();
    assert!(rows.len() >= 12, "{text}");
    let failing: Vec<&&str> = rows.iter().filter(|l| l.contains("FAIL")).collect();
    assert!(failing.is_empty(), "failing checks: {failing:#?}");
    assert!(o.status.success());
}
