use std::io::Write;
use std::process::{Command, Output, Stdio};

use kronwit::io::{MatrixJson, ProjectorJson, ReportJson, StateJson};
use kronwit_core::entangled::phi_plus;
use kronwit_core::wfs::wfs_projector;
use kronwit_core::yyrep::tensor_rep;
use kronwit_core::{ComplexMatrix, Partition, RepContext};
use serde_json::{json, Value};

fn kronwit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kronwit")).args(args).env_remove("KRONWIT_DENSE_CAP").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn state_file(dir: &tempfile::TempDir, name: &str, state: &StateJson) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(state).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(json_of(&kronwit(&["kron", "2,1", "2,1", "2,1", "--route", "both"])), json!({"m": 1, "routes_agree": true}));
    assert_eq!(json_of(&kronwit(&["sym", "dim", "2,1"])), json!({"d": 2}));
    assert_eq!(json_of(&kronwit(&["lightning", "2,1", "2,1"])), json!({"(3)": 0.25, "(1,1,1)": 0.25, "(2,1)": 0.5}));
    assert_eq!(json_of(&kronwit(&["kron", "3,1", "3,1", "2,2", "--route", "rank"])), json!({"m": 1, "route": "rank"}));
}

#[test]
fn symmetric_group_listing() {
    assert_eq!(json_of(&kronwit(&["sym", "partitions", "4"])), json!(["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]));
    assert_eq!(json_of(&kronwit(&["sym", "tableaux", "2,1"])), json!([[[1, 2], [3]], [[1, 3], [2]]]));
}

#[test]
fn matrices_round_trip() {
    let m: MatrixJson = serde_json::from_value(json_of(&kronwit(&["rep", "matrix", "2,1", "2,1,3"]))).unwrap();
    let h = 0.0;
    assert_eq!(m.to_matrix().unwrap(), ComplexMatrix::from_real(2, 2, &[1.0, h, h, -1.0]).unwrap());
    let ft: MatrixJson = serde_json::from_value(json_of(&kronwit(&["rep", "ft", "3"]))).unwrap();
    assert!(ft.to_matrix().unwrap().unitarity_residual() < 1e-12);
    let chars = json_of(&kronwit(&["rep", "char", "2,1x2,1"]));
    let values: Vec<f64> = chars["classes"].as_array().unwrap().iter().map(|c| c["chi"].as_f64().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.contains(&4.0) && values.contains(&0.0) && values.contains(&1.0));
    assert_eq!(json_of(&kronwit(&["rep", "char", "left:3", "1,2,3"])), json!({"chi": 6.0}));
}

#[test]
fn projectors_round_trip_at_full_precision() {
    let out: ProjectorJson = serde_json::from_value(json_of(&kronwit(&["wfs", "project", "2,1x2,1", "2,1"]))).unwrap();
    assert_eq!((out.lambda.as_str(), out.rank), ("2,1", 2));
    let ctx = RepContext::new(3).unwrap();
    let expected = wfs_projector(&ctx, &tensor_rep(&p("2,1"), &p("2,1")).unwrap(), &p("2,1")).unwrap();
    assert_eq!(out.matrix.to_matrix().unwrap(), *expected.matrix());
    let povm: Vec<ProjectorJson> = serde_json::from_value(json_of(&kronwit(&["wfs", "povm", "2,1x2,1"]))).unwrap();
    assert_eq!(povm.iter().map(|x| x.rank).collect::<Vec<_>>(), vec![1, 2, 1]);
    let kraus: ProjectorJson = serde_json::from_value(json_of(&kronwit(&["wfs", "project", "2,1x2,1", "2,1", "--kraus"]))).unwrap();
    assert_eq!((kraus.matrix.rows, kraus.matrix.cols, kraus.rank), (24, 4, 2));
}

#[test]
fn states_round_trip() {
    let phi: StateJson = serde_json::from_value(json_of(&kronwit(&["state", "phi-plus", "3"]))).unwrap();
    assert_eq!(phi.to_state().unwrap(), phi_plus(3));
    let pi: StateJson = serde_json::from_value(json_of(&kronwit(&["state", "phi-pi", "2,1x2,1", "3"]))).unwrap();
    assert_eq!(pi.registers, vec![4, 4]);
    let psi = json_of(&kronwit(&["state", "psi-lambda", "2,1x2,1", "3"]));
    let psi_state: StateJson = serde_json::from_value(psi["state"].clone()).unwrap();
    let diff = psi_state.to_state().unwrap().overlap(&pi.to_state().unwrap());
    assert!((diff.re - 1.0).abs() < 1e-12 && diff.im.abs() < 1e-12);
    assert!(psi["normalization"].as_f64().unwrap() > 0.0);
}

#[test]
fn measurement_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let amps = vec![[0.5, 0.0], [0.0, 0.5], [0.5, 0.0], [0.0, -0.5]];
    let path = state_file(&dir, "psi.json", &StateJson { registers: vec![4], amplitudes: amps });
    let a = kronwit(&["wfs", "measure", "2,1x2,1", "--state", &path, "--seed", "3"]);
    let b = kronwit(&["wfs", "measure", "2,1x2,1", "--state", &path, "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let out = json_of(&a);
    let post: StateJson = serde_json::from_value(out["state"].clone()).unwrap();
    post.to_state().unwrap();
    let labels: std::collections::BTreeSet<String> = (0..40)
        .map(|s| json_of(&kronwit(&["wfs", "measure", "2,1x2,1", "--state", &path, "--seed", &s.to_string()]))["lambda"].to_string())
        .collect();
    assert!(labels.len() > 1);
}

#[test]
fn stdin_state_for_verifier_run() {
    let witness = kronwit(&["state", "phi-pi", "2,1x2,1", "2,1"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_kronwit"))
        .args(["verify", "run", "2,1", "2,1", "2,1", "--state", "-", "--seed", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&witness.stdout).unwrap();
    let out = json_of(&child.wait_with_output().unwrap());
    assert_eq!(out["outcome"], json!("2,1"));
    assert!((out["outcome_probability"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((out["internal_probability"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(out["accepted"], json!(true));
}

#[test]
fn spectrum_and_certification() {
    let s = json_of(&kronwit(&["verify", "spectrum", "2,1", "2,1", "2,1", "--subspace"]));
    assert_eq!(s["accepting_multiplicity"], json!(1));
    assert_eq!(s["m"], json!(1));
    assert_eq!(s["gap"], json!(true));
    assert!(s["soundness"].as_f64().unwrap() <= 8.0 / 9.0);
    assert_eq!(s["spectrum"].as_array().unwrap().len(), 16);
    assert_eq!(s["accepting_subspace"].as_array().unwrap().len(), 1);
    let args = ["verify", "certify", "2,1", "2,1", "2,1", "--trials", "25", "--seed", "4", "--mode", "perturbed"];
    let a = kronwit(&args);
    assert_eq!(a.stdout, kronwit(&args).stdout);
    let reports: Vec<ReportJson> = serde_json::from_slice(&a.stdout).unwrap();
    assert!(reports.iter().all(|r| r.bound_satisfied));
    assert_eq!(reports.iter().filter(|r| r.check == "lemma").count(), 25);
    assert_eq!(reports.iter().filter(|r| r.check == "corollary").count(), 25);
    assert!(reports.iter().any(|r| r.check == "theorem"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| kronwit(args).status.code().unwrap();
    assert_eq!(code(&["sym", "dim", "2,1"]), 0);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["sym", "dim", "1,2"]), 2);
    assert_eq!(code(&["kron", "2,1", "3,1", "2,1"]), 2);
    assert_eq!(code(&["verify", "run", "2,1", "2,1", "2,1", "--state", "/no/such/file.json"]), 2);
    assert_eq!(code(&["selftest", "--n-max", "9"]), 2);
    let limited = kronwit(&["rep", "ft", "7"]);
    assert_eq!(limited.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&limited.stderr).unwrap();
    assert_eq!(err["status"], json!("resource-limit"));
    let msg = err["message"].as_str().unwrap();
    assert!(msg.contains("(n!)^2 * 16") && msg.contains("406425600"), "{msg}");
    let usage = kronwit(&["wfs"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
}

#[test]
fn dense_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_kronwit")).args(["rep", "ft", "3"]).env("KRONWIT_DENSE_CAP", cap).output().unwrap()
    };
    assert_eq!(run("2").status.code(), Some(3));
    assert_eq!(run("3").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn pretty_output_and_timings() {
    let out = kronwit(&["lightning", "2,1", "3", "--pretty", "--timings"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains('\n') && text.contains("  \"(2,1)\": 1.0"), "{text}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("elapsed_ms"));
    let plain = kronwit(&["verify", "spectrum", "2,1", "2,1", "3", "--timings"]);
    assert!(serde_json::from_slice::<Value>(&plain.stdout).is_ok());
    let pretty = json_of(&kronwit(&["verify", "spectrum", "2,1", "2,1", "2,1", "--pretty"]));
    let s = pretty["soundness"].as_f64().unwrap();
    assert_eq!(s, kronwit::io::round_sig6(s));
}

#[test]
fn selftest_small() {
    let out = json_of(&kronwit(&["selftest", "--n-max", "3", "--trials", "10", "--seed", "2"]));
    assert_eq!(out["passed"], json!(true));
    let names: Vec<&str> = out["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["symgroup", "yyrep", "wfs", "kronecker", "entangled", "verifier"]);
}

#[test]
fn bench_reports_identical_kernels() {
    let rows = json_of(&kronwit(&["bench", "--sizes", "3,4", "--repeats", "1", "--threads", "2"]));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert_eq!(r["identical"], json!(true));
        assert_eq!(r["threads"], json!(2));
    }
}
