//! End-to-end tests of the command-line surface: exit codes, JSON output
//! schemas, and agreement with the library routes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eightvertex"))
}

#[test]
fn golden_passes_with_exit_zero() {
    let out = bin().args(["golden"]).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("golden/checksum"));
    assert!(text.contains("0 fail"));
}

#[test]
fn qpoly_output_matches_interchange_format() {
    let out = bin().args(["qpoly", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["poly"]["vars"][0], "x");
    // r_0 of P_3 is 35 + 21z
    assert_eq!(v["coeffs"][0]["coeffs"][0], "35");
    assert_eq!(v["coeffs"][0]["coeffs"][1], "21");
}

#[test]
fn tau_file_output_round_trips() {
    let dir = std::env::temp_dir().join("eightvertex-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tau.json");
    let out = bin()
        .args(["tau", "--xi", "1/6", "--range", "-2..5"])
        .args(["--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["xi"], "1/6");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    // tau_4(z, 1/6) = 1 + 3z + 4z^2
    let tau4 = entries.iter().find(|e| e["n"] == 4).unwrap();
    assert_eq!(tau4["poly"]["coeffs"][2], "4");
}

#[test]
fn eigen_emits_bitstring_component_map() {
    let out = bin().args(["eigen", "--N", "3"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["components"]["100"][0], "1");
    assert_eq!(v["components"]["111"][1], "1");
    assert_eq!(v["orbit_sizes"]["100"], 3);
}

#[test]
fn verify_report_json_schema() {
    let out = bin()
        .args(["verify", "tau", "--n-max", "4", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().len() >= 4);
    assert_eq!(v["summary"]["fail"], 0);
    for check in v["checks"].as_array().unwrap() {
        assert!(check["id"].is_string());
        assert!(check["status"] == "pass" || check["status"] == "soft-fail");
        assert!(check["wall_ms"].is_number());
    }
}

#[test]
fn config_file_applies_and_flags_win() {
    let dir = std::env::temp_dir().join("eightvertex-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"tau_n_max": 3}"#).unwrap();
    let out = bin()
        .args(["verify", "tau", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    // flag overrides the config file
    let out = bin()
        .args([
            "verify",
            "tau",
            "--config",
            cfg.to_str().unwrap(),
            "--n-max",
            "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn bad_input_exits_with_config_error() {
    let out = bin().args(["verify", "bogus-target"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["tau", "--range", "5..1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["tau", "--xi", "1/0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sos_and_factor_outputs_parse() {
    let out = bin()
        .args(["sos", "--p-max", "3", "--P-list", "0,2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["p"].as_array().unwrap().len(), 4);
    assert_eq!(v["bridge"].as_array().unwrap().len(), 2);

    let out = bin()
        .args(["factor", "--k-range", "-2..2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // c_1 = 1/8 per the even-index factorization constants
    let c1 = v["c"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["k"] == 1)
        .unwrap();
    assert_eq!(c1["value"], "1/8");
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let run = || -> serde_json::Value {
        let out = bin()
            .args(["verify", "tau", "--n-max", "4", "--format", "json"])
            .output()
            .unwrap();
        assert!(out.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        for check in v["checks"].as_array_mut().unwrap() {
            check["wall_ms"] = serde_json::json!(0);
        }
        v
    };
    assert_eq!(run(), run());
}
