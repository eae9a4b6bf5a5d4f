//! Integration tests for the `rodmat` binary: verb round trips, exit codes,
//! and byte-level determinism of the JSON output.

use rodmat::catalogue::tomimatsu_sato_delta2;
use rodmat::exact::rat;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn rodmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rodmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("rodmat-test-{}-{}", std::process::id(), name));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn show_kerr_has_nodes_at_plus_minus_five() {
    let out = rodmat(&["show", "kerr", "--m", "3", "--a", "4", "--rod", "top"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["nodes"], serde_json::json!(["-5", "5"]));
    assert_eq!(json["signature"], "riemannian");
}

#[test]
fn inverse_example_reconstructs_kerr() {
    let out = rodmat(&[
        "inverse", "--class", "alf", "--nodes", "2", "--m", "3", "--N", "0", "--L", "12",
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    let solutions = json["solutions"].as_array().unwrap();
    assert_eq!(solutions.len(), 1);
    assert_eq!(solutions[0]["family"], "Kerr");
    let assignment = solutions[0]["assignment"].as_array().unwrap();
    assert!(assignment
        .iter()
        .any(|pair| pair[0] == "sigma" && pair[1] == "5"));
}

#[test]
fn inverse_overextreme_lorentzian_data_exits_4() {
    let out = rodmat(&[
        "inverse", "--class", "alf", "--signature", "l", "--nodes", "2", "--m", "3", "--N",
        "0", "--L", "12",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let json = stdout_json(&out);
    assert_eq!(json["solutions"], serde_json::json!([]));
    assert!(json["certificate"].is_string());
}

#[test]
fn audit_tomimatsu_sato_exits_3_with_double_pole() {
    let ts = tomimatsu_sato_delta2(&rat(3, 5), &rat(4, 5)).unwrap();
    let path = temp_file("ts.json", &rodmat::schema::matrix_to_string(&ts));
    let out = rodmat(&["audit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let json = stdout_json(&out);
    assert_eq!(json["admissible"], false);
    assert_eq!(json["determinant"]["pass"], true);
    let findings = json["findings"].as_array().unwrap();
    assert!(findings
        .iter()
        .any(|f| f["class"] == "double-pole" && f["location"] == "1"));
    std::fs::remove_file(path).ok();
}

#[test]
fn inadmissible_file_is_rejected_on_load_with_exit_3() {
    let ts = tomimatsu_sato_delta2(&rat(3, 5), &rat(4, 5)).unwrap();
    let path = temp_file("ts-load.json", &rodmat::schema::matrix_to_string(&ts));
    let out = rodmat(&["charges", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_file_exits_2() {
    let path = temp_file("bad.json", "{\"signature\": \"euclidean\"}");
    let out = rodmat(&["audit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(path).ok();
}

#[test]
fn unknown_verb_is_rejected_before_computation() {
    let out = rodmat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn show_charges_round_trip_is_bit_exact() {
    let shown = rodmat(&["show", "kerr", "--m", "3", "--a", "4"]);
    assert!(shown.status.success());
    let path = temp_file("kerr.json", std::str::from_utf8(&shown.stdout).unwrap());

    let audited = rodmat(&["audit", path.to_str().unwrap()]);
    assert!(audited.status.success());

    let charges = rodmat(&["charges", path.to_str().unwrap()]);
    assert!(charges.status.success());
    let json = stdout_json(&charges);
    assert_eq!(json["charges"]["mass"], "3");
    assert_eq!(json["charges"]["nut"], "0");
    assert_eq!(json["charges"]["angmom"], "12");

    // identical runs produce byte-identical output
    let again = rodmat(&["charges", path.to_str().unwrap()]);
    assert_eq!(charges.stdout, again.stdout);
    let shown_again = rodmat(&["show", "kerr", "--m", "3", "--a", "4"]);
    assert_eq!(shown.stdout, shown_again.stdout);
    std::fs::remove_file(path).ok();
}

#[test]
fn split_and_verify_run_on_a_stored_matrix() {
    let shown = rodmat(&["show", "gh_mtn"]);
    assert!(shown.status.success());
    let path = temp_file("mtn.json", std::str::from_utf8(&shown.stdout).unwrap());

    let split = rodmat(&[
        "split", path.to_str().unwrap(), "--grid", "0.5,1.5,2,3,5", "--quad", "64",
    ]);
    assert!(split.status.success());
    let json = stdout_json(&split);
    assert_eq!(json["route"], "gibbons-hawking");
    assert_eq!(json["numeric"]["det_error_max"], 0.0);
    assert_eq!(json["numeric"]["j11"].as_array().unwrap().len(), 5);

    let verify = rodmat(&[
        "verify", path.to_str().unwrap(), "--grid", "1,2,4,5,9", "--quad", "64",
    ]);
    assert!(verify.status.success());
    let json = stdout_json(&verify);
    assert!(json["numeric"]["yang_fine"]["max"].as_f64().unwrap() < 1e-2);

    // a tolerance below the achievable residual trips the check
    let strict = rodmat(&[
        "verify", path.to_str().unwrap(), "--grid", "1,2,4,5,9", "--quad", "64", "--tol",
        "1e-15",
    ]);
    assert_eq!(strict.status.code(), Some(2));
    std::fs::remove_file(path).ok();
}

#[test]
fn equiv_finds_gauge_between_conjugate_matrices() {
    let tn = rodmat(&["show", "taub_nut"]);
    assert!(tn.status.success());
    let path1 = temp_file("tn.json", std::str::from_utf8(&tn.stdout).unwrap());

    let normalized = rodmat(&["normalize", path1.to_str().unwrap()]);
    assert!(normalized.status.success());
    let matrix = stdout_json(&normalized)["matrix"].clone();
    let path2 = temp_file("tn-normalized.json", &serde_json::to_string(&matrix).unwrap());

    let equiv = rodmat(&["equiv", path1.to_str().unwrap(), path2.to_str().unwrap()]);
    assert!(equiv.status.success());
    assert_eq!(stdout_json(&equiv)["equivalent"], true);

    // and reports inequivalence with exit 4
    let kerr = rodmat(&["show", "kerr"]);
    let path3 = temp_file("kerr-equiv.json", std::str::from_utf8(&kerr.stdout).unwrap());
    let not = rodmat(&["equiv", path1.to_str().unwrap(), path3.to_str().unwrap()]);
    assert_eq!(not.status.code(), Some(4));
    for p in [path1, path2, path3] {
        std::fs::remove_file(p).ok();
    }
}

#[test]
fn passnode_round_trip_restores_the_matrix() {
    let shown = rodmat(&["show", "schwarzschild"]);
    assert!(shown.status.success());
    let path = temp_file("schw.json", std::str::from_utf8(&shown.stdout).unwrap());

    let down = rodmat(&[
        "passnode", path.to_str().unwrap(), "--node", "1", "--direction", "down",
    ]);
    assert!(down.status.success());
    let middle = stdout_json(&down)["matrix"].clone();
    let path2 = temp_file("schw-middle.json", &serde_json::to_string(&middle).unwrap());

    let up = rodmat(&[
        "passnode", path2.to_str().unwrap(), "--node", "1", "--direction", "up",
    ]);
    assert!(up.status.success());
    let restored = stdout_json(&up)["matrix"].clone();
    let original = stdout_json(&shown);
    assert_eq!(restored["entries"], original["entries"]);
    for p in [path, path2] {
        std::fs::remove_file(p).ok();
    }
}

#[test]
fn rods_lists_intervals_with_kernels() {
    let out = rodmat(&["rods", "double_schwarzschild"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(json["rods"].as_array().unwrap().len(), 5);
    assert_eq!(json["rods"][0]["lower"], "-inf");
    assert_eq!(json["rods"][4]["upper"], "+inf");
}

#[test]
fn list_names_every_family() {
    let out = rodmat(&["list"]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    let names: Vec<&str> = json["families"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    for expected in ["kerr", "schwarzschild", "taub_nut", "gh_mtn", "bazaikin", "chen_teo"] {
        assert!(names.contains(&expected), "missing {}", expected);
    }
}
