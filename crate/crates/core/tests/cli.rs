//! The `cmtors` binary end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn cmtors(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmtors"))
        .args(args)
        .env_remove("TAI_DISC")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn bound_exponent_report() {
    let out = cmtors(&[
        "bounds", "--theorem", "tadimzero_hY0", "--N", "3", "--d", "1", "--hV", "1", "--degV", "1", "--ktorV", "1", "--eta", "1/10",
    ]);
    let v = json(&out);
    let texts: Vec<&str> = v["exponents"].as_array().unwrap().iter().map(|f| f["exponent_text"].as_str().unwrap()).collect();
    assert_eq!(texts, ["2+η", "1+η"]);
    assert_eq!(v["direction"], "upper");
}

#[test]
fn out_of_range_parameters_exit_2() {
    let out = cmtors(&["bounds", "--theorem", "mlr", "--N", "3", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2t < N"));
    let out = cmtors(&["bounds", "--theorem", "tadimzero_hY0", "--eta", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identities_hold() {
    let v = json(&cmtors(&["identities"]));
    assert_eq!(v["all_hold"], true);
    assert_eq!(json(&cmtors(&["bounds", "--identities"])), v);
}

#[test]
fn sweep_is_csv() {
    let out = cmtors(&["bounds", "--theorem", "curva_S", "--sweep", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theorem,N,d,r,t,factor,exponent,eta_coef"));
    assert!(lines.any(|l| l == "curva_S,3,1,2,1,(h+deg)*ktor,29,1"));
}

#[test]
fn torsion_point_is_classified_torsion() {
    let v = json(&cmtors(&[
        "classify",
        "--module",
        data("module.json").to_str().unwrap(),
        "--point",
        data("torsion_point.json").to_str().unwrap(),
        "--V",
        data("v2.json").to_str().unwrap(),
    ]));
    assert_eq!(v["verdict"], "torsion");
    assert_eq!(v["dimB"], 0);
}

#[test]
fn coordinate_axes_are_orthogonal() {
    let v = json(&cmtors(&[
        "orthogonal",
        "--A",
        data("e_times_0.mat").to_str().unwrap(),
        "--B",
        data("zero_times_e.mat").to_str().unwrap(),
    ]));
    assert_eq!(v["orthogonal"], true);
}

#[test]
fn reduce_and_lift() {
    let module = data("module.json");
    let gamma = data("gamma.json");
    let v = json(&cmtors(&["reduce", "--module", module.to_str().unwrap(), "--point", gamma.to_str().unwrap()]));
    assert_eq!(v["kind"], "torsion_variety");
    assert_eq!(v["variety"]["codim"], 1);
    let v = json(&cmtors(&["lift", "--module", module.to_str().unwrap(), "--point", gamma.to_str().unwrap()]));
    assert_eq!(v["degenerate"], false);
}

#[test]
fn enumeration_and_budget() {
    let v = json(&cmtors(&["enumerate", "--dim", "1", "--N", "2", "--disc", "-4", "--max-X", "2", "--list"]));
    assert_eq!(v["count"], 6);
    assert_eq!(v["partial"], false);
    let out = cmtors(&["enumerate", "--N", "3", "--max-X", "40", "--time-cap-ms", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["partial"], true);
}

#[test]
fn discriminant_from_environment() {
    let run = |disc: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_cmtors"))
            .args(["enumerate", "--N", "2", "--max-X", "1", "--list"])
            .env("TAI_DISC", disc)
            .output()
            .unwrap();
        json(&out)
    };
    assert_eq!(run("-3")["budget"]["disc"], -3);
    assert_eq!(run("-8")["budget"]["disc"], -8);
}

#[test]
fn siegel_and_complement() {
    let v = json(&cmtors(&["siegel", "--system", data("system.mat").to_str().unwrap(), "--k", "2"]));
    assert_eq!(v["vectors"].as_array().unwrap().len(), 2);
    assert_eq!(v["certificate"]["holds"], true);
    let v = json(&cmtors(&["complement", "--B", data("b.mat").to_str().unwrap()]));
    assert_eq!(v["complement"]["r"], 1);
}

#[test]
fn malformed_input_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mat");
    std::fs::write(&bad, "-4 2 1\n1 x\n").unwrap();
    let out = cmtors(&["complement", "--B", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, entry 2"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"disc\": -4,\n \"gram\": [[{\"q\": \"1\", \"w\": \"0\"}]],\n \"torsion_order\": x}").unwrap();
    let out = cmtors(&[
        "classify",
        "--module",
        bad.to_str().unwrap(),
        "--point",
        data("point.json").to_str().unwrap(),
        "--V",
        data("v3.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = cmtors(&["bounds", "--theorem", "curva_S", "--N", "5", "--r", "3", "--hV", "7/3", "--output", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
