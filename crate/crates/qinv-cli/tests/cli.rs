use std::process::{Command, Output};

use serde_json::Value;

fn qinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&o.stdout)
        )
    })
}

fn fixture(file: &str) -> String {
    format!("{}/../../fixtures/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn text(v: &Value) -> &str {
    v["text"].as_str().expect("scalar has a text form")
}

#[test]
fn certify_uq_sl2_5_passes() {
    let o = qinv(&["certify", "--algebra", "uq_sl2:5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["passed"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn certify_rejects_a_wrong_antipode_from_file() {
    let h = qinv::zoo::AlgebraSpec::parse("group:Z3")
        .unwrap()
        .build()
        .unwrap();
    let broken = h.with_antipode((0..3).map(qinv::hopf::Elem::basis).collect());
    let path = std::env::temp_dir().join(format!("qinv-broken-{}.json", std::process::id()));
    std::fs::write(&path, broken.to_json().to_string()).unwrap();
    let o = qinv(&["certify", "--algebra-file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["passed"], false);
}

#[test]
fn hopf_link_file_gives_equal_invariants_for_double_z2() {
    let o = qinv(&[
        "invariant",
        "--algebra",
        "double:Z2",
        "--link",
        &fixture("hopf00.json"),
        "--both",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["tau"], v["tau_rt"]);
    assert_eq!(v["equal"], true);
    assert_eq!(v["sigma"], serde_json::json!([1, 1]));
    assert_eq!(v["intI_summary"]["arity"], 2);
    assert_eq!(v["intI_summary"]["ad_invariant"], true);
}

#[test]
fn raw_unknot_value_is_mu_of_one() {
    let o = qinv(&[
        "invariant",
        "--algebra",
        "uq_sl2:3",
        "--fixture",
        "unknot:0",
        "--raw",
    ]);
    assert_eq!(text(&json_of(&o)["tau"]), "0");
}

#[test]
fn with_q_matches_the_state_sum() {
    let o = qinv(&[
        "invariant",
        "--algebra",
        "uq_sl2:3",
        "--fixture",
        "hopf:1,1",
        "--with-Q",
        "--both",
    ]);
    let v = json_of(&o);
    assert_eq!(v["tau"], v["tau_rt"]);
}

#[test]
fn lens_ratio_for_uq_sl2_5_at_k_3_is_3() {
    let o = qinv(&["lens", "--algebra", "uq_sl2:5", "-k", "3", "--both"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(text(&v["ratio"]), "3");
    assert_eq!(v["word"], "S T T T");
}

#[test]
fn lens_range_lists_rows_in_order() {
    let o = qinv(&["lens", "--algebra", "double:Z3", "-k", "-2..2"]);
    let v = json_of(&o);
    let ks: Vec<i64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["k"].as_i64().unwrap())
        .collect();
    assert_eq!(ks, vec![-2, -1, 0, 1, 2]);
}

#[test]
fn smatrix_of_double_z3_is_invertible() {
    let v = json_of(&qinv(&["smatrix", "--algebra", "double:Z3"]));
    assert_eq!(v["rank"], 9);
    assert_eq!(v["row_identity"], true);
}

#[test]
fn sl2z_reports_scalars_for_the_trivial_algebra() {
    let o = qinv(&["sl2z", "--algebra", "trivial"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(text(&v["c1"]), "1");
    assert_eq!(text(&v["c2"]), "1");
}

#[test]
fn sl2z_exits_nonzero_when_a_relation_fails() {
    let o = qinv(&["sl2z", "--algebra", "double:Z3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["relations_hold"], false);
}

#[test]
fn zoo_lists_every_member() {
    let v = json_of(&qinv(&["zoo"]));
    let names: Vec<&str> = v["algebras"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, qinv::zoo::ZOO.to_vec());
}

#[test]
fn approx_adds_decimal_values() {
    let v = json_of(&qinv(&[
        "--approx",
        "invariant",
        "--algebra",
        "group:Z2",
        "--fixture",
        "unknot:0",
    ]));
    let re = v["tau"]["approx"]["re"].as_f64().unwrap();
    assert!((re - 2f64.sqrt()).abs() < 1e-12);
    let plain = json_of(&qinv(&[
        "invariant",
        "--algebra",
        "group:Z2",
        "--fixture",
        "unknot:0",
    ]));
    assert!(plain["tau"].get("approx").is_none());
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["lens", "--algebra", "double:S3", "-k", "0..4", "--both"];
    let a = qinv(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_qinv"))
        .args(args)
        .env("QINV_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn errors_have_distinct_exit_codes_and_messages() {
    let unknown_algebra = qinv(&["smatrix", "--algebra", "group:Q8"]);
    assert_eq!(unknown_algebra.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown_algebra.stderr).contains("unknown algebra"));

    let unknown_fixture = qinv(&["invariant", "--algebra", "trivial", "--fixture", "figure8"]);
    assert_eq!(unknown_fixture.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown_fixture.stderr).contains("unknown fixture"));

    let path = std::env::temp_dir().join(format!("qinv-malformed-{}.json", std::process::id()));
    std::fs::write(&path, "{\"braid\": {\"strands\": 2, \"word\": [5]}}").unwrap();
    let malformed = qinv(&[
        "invariant",
        "--algebra",
        "trivial",
        "--link",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(malformed.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("malformed"));

    let bad_threads = Command::new(env!("CARGO_BIN_EXE_qinv"))
        .arg("zoo")
        .env("QINV_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn exported_fixtures_match_the_checked_in_files() {
    let dir = std::env::temp_dir().join(format!("qinv-export-{}", std::process::id()));
    let o = qinv(&["fixtures", "export", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for entry in std::fs::read_dir(&dir).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap().to_str().unwrap().to_string();
        let ours = std::fs::read_to_string(&p).unwrap();
        let shipped = std::fs::read_to_string(fixture(&name)).unwrap_or_default();
        assert_eq!(ours, shipped, "{name}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_runs_a_selected_criterion() {
    let o = qinv(&["fixtures", "verify", "--criterion", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["criteria"][0]["id"], 6);
    assert_eq!(v["criteria"][0]["passed"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS criterion  6"));
}
