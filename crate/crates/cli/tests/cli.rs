use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hecke_mul_quadratic_relation() {
    let o = hecke(&["hecke-mul", "--n", "2", "--b", "2", "s1", "s1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("T[e]"));
    assert!(text.contains("T[s1*d(0,1)]"));
    assert!(text.contains("T[s1*d(1,0)]"));
}

#[test]
fn hecke_mul_json() {
    let o = hecke(&["hecke-mul", "--n", "2", "--b", "3", "--json", "s1", "d(1,0)"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object() || v.is_array());
}

#[test]
fn rpoly_single_pair() {
    let o = hecke(&["rpoly", "--n", "2", "--b", "3", "--x", "e", "--y", "s1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["x"], "e");
    assert_eq!(rows[0]["y"], "s1");
}

#[test]
fn rpoly_cross_check_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = hecke(&["rpoly", "--n", "3", "--b", "2", "--all", "--method", "cross-check", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["x", "y", "r_star", "r"]);
    let n = reader.records().count();
    assert!(n > 48);
}

#[test]
fn order_writes_dot_and_components() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h.dot");
    let o = hecke(&["order", "--n", "3", "--b", "2", "--hasse", dot.to_str().unwrap(), "--components"]);
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["elements"], 48);
    assert_eq!(summary["component_count"], 2);
    assert_eq!(summary["components"].as_array().unwrap().len(), 2);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph "));
    assert_eq!(text.matches(" -- ").count(), summary["hasse_edges"].as_u64().unwrap() as usize);
}

#[test]
fn kl_json_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.json");
    let o = hecke(&["kl", "--n", "2", "--b", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(rows.iter().all(|r| r.get("p_star").is_some() && r.get("p").is_some()));
    assert!(rows.iter().any(|r| r["x"] == r["y"]));
}

#[test]
fn verify_glnq_passes() {
    let o = hecke(&["verify-glnq", "--n", "2", "--q", "5", "--a", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_glnq_rejects_bad_field() {
    let o = hecke(&["verify-glnq", "--n", "2", "--q", "5", "--a", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hecke(&["verify-glnq", "--n", "2", "--q", "6", "--a", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_glnq_n3_needs_flag() {
    let o = hecke(&["verify-glnq", "--n", "3", "--q", "3", "--a", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "slow_path");
}

#[test]
fn selftest_passes() {
    let o = hecke(&["selftest", "--n", "2", "--b", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["hecke-mul", "--n", "2", "--b", "2", "s3", "s1"],
        &["hecke-mul", "--n", "2", "--b", "2", "d(1)", "s1"],
        &["hecke-mul", "--n", "2", "--b", "2", "s1*", "s1"],
        &["selftest", "--n", "0", "--b", "1"],
        &["rpoly", "--n", "2", "--b", "2"],
        &["no-such-command"],
    ];
    for args in cases {
        let o = hecke(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn syntax_error_reports_position() {
    let o = hecke(&["hecke-mul", "--n", "2", "--b", "2", "s1*x", "s1"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "syntax");
    assert!(err["message"].as_str().unwrap().contains("position 3"));
}
