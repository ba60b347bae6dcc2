//! End-to-end tests of the `atl` binary: JSON schemas, output modes and exit
//! codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn atl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_atl"))
}

fn write_tmp(name: &str, content: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("atl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(content).unwrap()).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tau3_json() -> Value {
    json!({"top": 3, "bottom": 3, "circles": 0, "arcs": [
        {"a": "B1", "b": "T2", "w": 0},
        {"a": "B2", "b": "T3", "w": 0},
        {"a": "B3", "b": "T1", "w": 1},
    ]})
}

fn beta1_json() -> Value {
    json!({"top": 3, "bottom": 1, "circles": 0, "arcs": [
        {"a": "T1", "b": "T2", "w": 0},
        {"a": "B1", "b": "T3", "w": 0},
    ]})
}

fn cupcap_json() -> Value {
    json!({"top": 2, "bottom": 2, "circles": 0, "arcs": [
        {"a": "T1", "b": "T2", "w": 0},
        {"a": "B1", "b": "B2", "w": 0},
    ]})
}

#[test]
fn compose_twist_with_basis_diagram() {
    let a = write_tmp("tau3.json", &tau3_json());
    let b = write_tmp("beta1.json", &beta1_json());
    let out = atl()
        .args(["--output", "json", "compose"])
        .arg(&a)
        .arg(&b)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["loops"], 0);
    assert_eq!(v["delta_power"], 0);
    // tau_3 . beta_1 = beta_2 tau_1: one strand with winding 1, cup {2,3}
    let arcs = v["diagram"]["arcs"].as_array().unwrap();
    assert!(arcs.iter().any(|a| a["w"] == 1 && a["a"] == "B1"));
}

#[test]
fn compose_identity_with_identity() {
    let one = json!({"top": 2, "bottom": 2, "circles": 0, "arcs": [
        {"a": "B1", "b": "T1", "w": 0}, {"a": "B2", "b": "T2", "w": 0}]});
    let a = write_tmp("one.json", &one);
    let out = atl()
        .args(["--output", "json", "compose"])
        .arg(&a)
        .arg(&a)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["loops"], 0);
    assert_eq!(v["diagram"], one);
}

#[test]
fn compose_cupcap_closes_a_loop() {
    let e = write_tmp("cupcap.json", &cupcap_json());
    let out = atl()
        .args(["--output", "json", "compose"])
        .arg(&e)
        .arg(&e)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["loops"], 1);
    assert_eq!(v["diagram"], cupcap_json());
}

#[test]
fn compose_arity_mismatch_exits_2() {
    let a = write_tmp("t3.json", &tau3_json());
    let b = write_tmp("cc.json", &cupcap_json());
    let out = atl().arg("compose").arg(&a).arg(&b).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unembeddable_diagram_exits_2() {
    // strands with windings 0 and 2 cross in every representative
    let bad = json!({"top": 2, "bottom": 2, "circles": 0, "arcs": [
        {"a": "B1", "b": "T1", "w": 0},
        {"a": "B2", "b": "T2", "w": 2},
    ]});
    let p = write_tmp("bad_diagram.json", &bad);
    let out = atl().arg("render").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not embeddable"));
}

#[test]
fn parse_error_exits_2() {
    let dir = std::env::temp_dir().join(format!("atl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = atl().arg("render").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn multiply_cupcap_squares_to_delta() {
    let elem = json!({"N": 2, "terms": [
        {"diagram": cupcap_json(), "coeff": {"var": "x", "coeffs": {"0": "1"}}}
    ]});
    let p = write_tmp("e.json", &elem);
    let out = atl()
        .args(["--output", "json", "multiply"])
        .arg(&p)
        .arg(&p)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["diagram"], cupcap_json());
    // coefficient is delta = -q - 1/q
    let coeffs = terms[0]["coeff"]["coeffs"].as_object().unwrap();
    let q_poly = coeffs["0"]["coeffs"].as_object().unwrap();
    assert_eq!(q_poly["1"], "-1");
    assert_eq!(q_poly["-1"], "-1");
}

#[test]
fn gram_matrix_r1_text_and_json() {
    let out = atl()
        .args(["gram", "--n", "3", "--k", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("x^-1"));

    let out = atl()
        .args(["--output", "json", "gram", "--n", "2", "--k", "0"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    // R_0 = [[delta, x + 1/x], [x + 1/x, delta]]
    assert_eq!(v[0][1]["coeffs"]["1"]["coeffs"]["0"], "1");
    assert_eq!(v[0][1]["coeffs"]["-1"]["coeffs"]["0"], "1");
    assert_eq!(v[0][0]["coeffs"]["0"]["coeffs"]["1"], "-1");
}

#[test]
fn verify_det_reports_signs() {
    let out = atl().args(["verify-det", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("k=1: det R_k = +G_k"));
    assert!(text.contains("k=3: det R_k = +G_k"));
}

#[test]
fn action_matrix_of_twist() {
    let elem = json!({"N": 3, "terms": [
        {"diagram": tau3_json(), "coeff": {"var": "x", "coeffs": {"0": "1"}}}
    ]});
    let p = write_tmp("tau_elem.json", &elem);
    let out = atl()
        .args(["--output", "json", "action"])
        .arg(&p)
        .args(["--k", "1"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    // column 1 holds x in row 2 (tau_3 beta_1 = beta_2 x)
    assert_eq!(v[1][0]["coeffs"]["1"]["coeffs"]["0"], "1");
    assert_eq!(v[0][2]["coeffs"]["0"]["coeffs"]["0"], "1");
}

#[test]
fn poly_pipeline_values() {
    let out = atl()
        .args(["--output", "json", "poly", "p", "--n", "3", "--k", "1"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    // P_1 = x^2 + x^-2 - q^3 - q^-3
    assert_eq!(v["coeffs"]["2"]["coeffs"]["0"], "1");
    assert_eq!(v["coeffs"]["0"]["coeffs"]["3"], "-1");
    let h = atl()
        .args(["poly", "h", "--n", "4", "--k", "2"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&h.stdout);
    assert!(text.contains("x^-1"), "H_2 for N=4 spans x^-1..x: {text}");
}

#[test]
fn gluing_report_q_minus_one() {
    let out = atl()
        .args(["--output", "json", "--q", "-1,0", "gluing", "--n", "3"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["components"], 2);
    let confirmed = v["confirmed"].as_array().unwrap();
    assert_eq!(confirmed.len(), 2);
    for pair in confirmed {
        let z = pair["from"]["z"].as_array().unwrap();
        let w = pair["to"]["z"].as_array().unwrap();
        assert!((z[1].as_f64().unwrap().abs() - 1.0).abs() < 1e-9);
        assert!((z[1].as_f64().unwrap() + w[1].as_f64().unwrap()).abs() < 1e-9);
    }
    // four distinct pairs at generic q
    let out = atl()
        .args(["--output", "json", "--q", "4,0", "gluing", "--n", "3"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["confirmed"].as_array().unwrap().len(), 4);
    // N = 2: candidates only
    let out = atl()
        .args(["--output", "json", "--q", "4,0", "gluing", "--n", "2"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert!(v["confirmed"].is_null());
    assert_eq!(v["components"], 2);
}

#[test]
fn gluing_without_q_exits_2() {
    let out = atl().args(["gluing", "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_mode_and_q() {
    let dir = std::env::temp_dir().join(format!("atl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("atl.cfg");
    std::fs::write(&cfg, "mode = numeric\nq = 4,0  # generic point\ntol = 1e-9\n").unwrap();
    let out = atl()
        .arg("--config")
        .arg(&cfg)
        .args(["--output", "json", "gluing", "--n", "3"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["q"][0], 4.0);
}

#[test]
fn render_formats() {
    let b2 = json!({"top": 3, "bottom": 1, "circles": 0, "arcs": [
        {"a": "T2", "b": "T3", "w": 0},
        {"a": "B1", "b": "T1", "w": 0},
    ]});
    let p = write_tmp("beta2.json", &b2);
    let out = atl().arg("render").arg(&p).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("cup    T2 - T3  direct"));
    assert!(text.contains("strand B1 -> T1"));

    let out = atl()
        .arg("render")
        .arg(&p)
        .args(["--format", "svg"])
        .output()
        .unwrap();
    let svg = String::from_utf8_lossy(&out.stdout);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("stroke-dasharray"));
}

#[test]
fn ideal_element_succeeds_and_reports_obstruction() {
    let one = json!({"var": "x", "coeffs": {"0": "1"}});
    let zero = json!({"var": "x", "coeffs": {}});
    let b3 = json!([
        [one.clone(), zero.clone(), zero.clone()],
        [zero.clone(), one.clone(), zero.clone()],
        [zero.clone(), zero.clone(), one.clone()]
    ]);
    let p = write_tmp("b3.json", &b3);
    let out = atl()
        .args(["--output", "json", "ideal-element", "--n", "3", "--r", "1"])
        .arg(&p)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert!(v["terms"].as_array().unwrap().len() > 1);

    // even strand count, top component: the zero-sheet residue obstructs
    let b1 = json!([[one.clone()]]);
    let p = write_tmp("b1.json", &b1);
    let out = atl()
        .args(["ideal-element", "--n", "2", "--r", "2"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero-sheet"));
}

#[test]
fn selftest_passes() {
    let out = atl().args(["selftest", "--seed", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all checks passed"));
}
