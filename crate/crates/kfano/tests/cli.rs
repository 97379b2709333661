// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::PathBuf;
use std::process::Command;

use kfano::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

fn kfano(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["kfano"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("kfano-test-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn main_fixture() -> String {
    fixture("sl3-triangles.toml")
}

#[test]
fn validate_ok() {
    let (code, out, err) = kfano(&["validate", &main_fixture()]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "ok\n", ""));
    assert_eq!(kfano(&["validate", &fixture("sl3-triangles-cartan.toml")]).0, 0);
}

#[test]
fn validate_reports_every_violation() {
    let text = std::fs::read_to_string(main_fixture()).unwrap().replace("a = \"2/3\"", "a = \"1/3\"");
    let path = temp_file("degree.toml", &text);
    let (code, _, err) = kfano(&["validate", &path]);
    assert_eq!(code, 1);
    assert!(err.contains("anticanonical degree \u{2260} 2"), "{err}");
    let text = text.replace("name = \"D_x\"", "name = \"W\"");
    let path = temp_file("two.toml", &text);
    let (code, _, err) = kfano(&["validate", &path]);
    assert_eq!(code, 1);
    assert!(err.lines().count() >= 2, "{err}");
}

#[test]
fn parse_failures_exit_2() {
    assert_eq!(kfano(&["validate", "/nonexistent/kfano.toml"]).0, 2);
    let bad = temp_file("bad.toml", "[lattice\nrank = 2");
    assert_eq!(kfano(&["validate", &bad]).0, 2);
    let text = std::fs::read_to_string(main_fixture()).unwrap().replace("rank = 2", "rank = 2\ncolour = 1");
    let unknown = temp_file("unknown.toml", &text);
    let (code, _, err) = kfano(&["validate", &unknown]);
    assert_eq!(code, 2);
    assert!(err.contains("colour"), "{err}");
    let text = std::fs::read_to_string(main_fixture()).unwrap().replace("a = \"2/3\"", "a = \"2/x\"");
    assert_eq!(kfano(&["validate", &temp_file("rat.toml", &text)]).0, 2);
    assert_eq!(kfano(&["futaki", &main_fixture(), "--ell", "1"]).0, 2);
    assert_eq!(kfano(&["futaki", &main_fixture(), "--ell", "a,b"]).0, 2);
    assert_eq!(kfano(&["frobnicate"]).0, 2);
}

#[test]
fn futaki_and_jna() {
    let f = main_fixture();
    let (code, out, _) = kfano(&["futaki", &f, "--point", "x1", "--h", "1", "--ell", "0,0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "166658/575295 (~0.289691375729)\n");
    let (_, out, _) = kfano(&["futaki", &f, "--ell", "-1,0"]);
    assert_eq!(out, "16141/76706 (~0.210426824499)\n");
    let (code, out, _) = kfano(&["jna", &f, "--point", "x1", "--h", "1", "--twist-min"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("jna 741953/575295 "), "{out}");
    assert!(out.contains("twisted_min 741953/575295 (~") && out.contains("at ell' = (0, 0)"), "{out}");
    // outside the valuation cone
    let (code, _, err) = kfano(&["futaki", &f, "--point", "x1", "--h", "1", "--ell", "1,0"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn oracles() {
    let f = main_fixture();
    assert_eq!(kfano(&["oracle", &f, "h0", "--k", "4"]).1, "129725\n");
    assert_eq!(kfano(&["oracle", &f, "wk", "--k", "2", "--point", "x1", "--h", "1"]).1, "8113\n");
    assert_eq!(kfano(&["oracle", &f, "sk", "--k", "2"]).1, "2272\n");
    let (code, _, err) = kfano(&["oracle", &f, "wk", "--k", "2", "--point", "x1", "--h", "1", "--m0", "-5"]);
    assert_eq!(code, 1);
    assert!(err.contains("not admissible"), "{err}");
}

#[test]
fn json_report_round_trips() {
    let (code, out, _) = kfano(&["report", &main_fixture()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["volume"], "5479/192");
    assert_eq!(v["rank"], 2);
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["stability"]["verdict"], "uniformly_k_stable");
    assert!(v["stability"]["witness"].is_null());
    assert_eq!(v["barycenters_minus_kappa"]["x1"]["t"], "-166658/575295");
    assert_eq!(v["barycenters_minus_kappa"]["inf"]["mu"][0], "16141/76706");
    assert_eq!(v["delta_z"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["h0_coefficients"]["second"], "5479/64");
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, out);
    assert_eq!(kfano(&["report", &main_fixture()]).1, out);
}

#[test]
fn markdown_report() {
    let (code, out, _) = kfano(&["report", &main_fixture(), "--format", "markdown"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: **uniformly_k_stable**"));
    assert!(out.contains("5479/192"));
    assert!(out.contains("| x1 |"));
}

#[test]
fn binary_exit_codes_and_lattice_bound() {
    let bin = env!("CARGO_BIN_EXE_kfano");
    let f = main_fixture();
    let st = Command::new(bin).args(["validate", &f]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = Command::new(bin).args(["oracle", &f, "h0", "--k", "4"]).env("KFANO_MAX_LATTICE", "10").output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&st.stderr).contains("bound"));
    let st = Command::new(bin).args(["oracle", &f, "h0", "--k", "1"]).env("KFANO_MAX_LATTICE", "lots").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin).args(["oracle", &f, "h0", "--k", "1"]).env_remove("KFANO_MAX_LATTICE").output().unwrap();
    assert_eq!(String::from_utf8_lossy(&st.stdout), "27\n");
    let st = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(st.status.code(), Some(0));
}
