use std::fs;
use std::path::{Path, PathBuf};

use assert_cmd::Command;
use predicates::prelude::*;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn spec(name: &str) -> PathBuf {
    fixtures().join("specs").join(format!("{name}.toml"))
}

fn cycert() -> Command {
    Command::cargo_bin("cycert").unwrap()
}

fn copy_fixtures(to: &Path) {
    for sub in ["specs", "expected", "charts"] {
        fs::create_dir_all(to.join(sub)).unwrap();
        for e in fs::read_dir(fixtures().join(sub)).unwrap() {
            let p = e.unwrap().path();
            fs::copy(&p, to.join(sub).join(p.file_name().unwrap())).unwrap();
        }
    }
}

#[test]
fn certify_exit_codes() {
    cycert()
        .args(["certify"])
        .arg(spec("spp_k2_m2"))
        .assert()
        .code(0)
        .stdout(predicate::str::contains("spp_k2_m2: certified"));
    cycert()
        .args(["certify"])
        .arg(spec("milnor_fiber"))
        .assert()
        .code(2)
        .stdout(predicate::str::contains("rejected at admissibility (window)"));
}

#[test]
fn certify_json_is_the_certificate() {
    let out = cycert().args(["certify", "--json"]).arg(spec("ci_section4")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "cy-cert/1");
    assert_eq!(v["verdict"]["status"], "certified");
    assert_eq!(v["admissibility"]["nu"]["exact"], "1/2");
    let expected = fs::read(fixtures().join("expected/ci_section4.json")).unwrap();
    assert_eq!(out.stdout, expected, "certificate is byte-identical to the fixture");
}

#[test]
fn tolerance_flag_is_recorded() {
    let out = cycert()
        .args(["certify", "--json", "--tolerance", "1e-8"])
        .arg(spec("spp_k2_m2"))
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tolerance"], 1e-8);
}

#[test]
fn markdown_report() {
    cycert()
        .args(["certify", "--markdown"])
        .arg(spec("c3_z22_quadratic"))
        .assert()
        .code(0)
        .stdout(predicate::str::starts_with("# Certificate: c3_z22_quadratic"))
        .stdout(predicate::str::contains("## Charts at infinity"));
}

#[test]
fn json_and_markdown_conflict() {
    cycert().args(["certify", "--json", "--markdown"]).arg(spec("spp_k2_m2")).assert().code(3);
}

#[test]
fn input_errors_exit_3() {
    cycert().args(["certify", "/no/such/spec.toml"]).assert().code(3);
    cycert().args(["certify"]).assert().code(3);
    cycert().args(["frobnicate"]).assert().code(3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    let text = fs::read_to_string(spec("spp_k2_m2")).unwrap().replace("z1^2 + 1", "z1^2 + 1 +");
    fs::write(&bad, text).unwrap();
    cycert()
        .args(["certify"])
        .arg(&bad)
        .assert()
        .code(3)
        .stderr(predicate::str::contains("smoothing.q[0]"));
}

#[test]
fn analyze_reports_transverse_data() {
    cycert()
        .args(["analyze"])
        .arg(spec("ci_section4"))
        .assert()
        .code(0)
        .stdout(predicate::str::contains("v = (2, 2, 2), d_s = 4 (symmetric tie-break)"));
    let out = cycert().args(["analyze", "--json"]).arg(spec("spp_k2_m2")).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["transverse"][0]["d_s"], "4");
    assert!(v["failure"].is_null());
}

#[test]
fn reeb_closed_form() {
    cycert()
        .args(["reeb", "--ckl", "2,1"])
        .assert()
        .code(0)
        .stdout(predicate::str::contains("exact xi = (3, 3/2 + 1/2*sqrt(3), 3 - sqrt(3))"));
    cycert().args(["reeb", "--ckl", "0,1"]).assert().code(3);
    let out = cycert().args(["reeb", "--json"]).arg(spec("spp_k3_m2")).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reeb"]["inexact"], false);
    // v + u = 3 and v + 3u = 4 + sqrt(7) give u = (1 + sqrt(7)) / 2
    assert_eq!(v["weights"][0], "5/2 - 1/2*sqrt(7)");
    assert_eq!(v["weights"][1], "1/2 + 1/2*sqrt(7)");
}

#[test]
fn enumerate_family() {
    cycert()
        .args(["enumerate"])
        .arg(spec("spp_k2_m2"))
        .assert()
        .code(0)
        .stdout(predicate::str::contains("certified: {1, 2, 3}"));
    let out = cycert().args(["enumerate", "--json"]).arg(spec("ckk_k2_m2")).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ok: Vec<i64> = v["members"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|m| m["status"] == "certified")
        .map(|m| m["param"].as_i64().unwrap())
        .collect();
    // 4/3 <= m < 92/27
    assert_eq!(ok, [2, 3]);
    cycert().args(["enumerate"]).arg(spec("ci_section4")).assert().code(3);
}

#[test]
fn charts_match_golden_text() {
    let golden = fs::read_to_string(fixtures().join("charts/ci_section4.txt")).unwrap();
    cycert().args(["charts"]).arg(spec("ci_section4")).assert().code(0).stdout(golden);
    cycert()
        .args(["charts"])
        .arg(spec("milnor_fiber"))
        .assert()
        .code(2)
        .stderr(predicate::str::contains("no charts"));
}

#[test]
fn reproduce_paper_is_clean() {
    cycert()
        .args(["reproduce-paper"])
        .assert()
        .code(0)
        .stdout(predicate::str::contains("8 case(s), 0 difference(s)"));
}

#[test]
fn reproduce_subset() {
    cycert()
        .args(["reproduce-paper", "--only", "orbifold"])
        .assert()
        .code(0)
        .stdout(predicate::str::contains("3 case(s), 0 difference(s)"))
        .stdout(predicate::str::contains("spp").not());
}

#[test]
fn corrupted_fixture_fails_with_named_diff() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let path = dir.path().join("expected/c3_z22_quadratic.json");
    let text = fs::read_to_string(&path).unwrap().replacen("\"branch\": \"B\"", "\"branch\": \"A\"", 1);
    fs::write(&path, text).unwrap();
    cycert()
        .args(["reproduce-paper", "--fixtures"])
        .arg(dir.path())
        .assert()
        .code(1)
        .stdout(predicate::str::contains("DIFF  c3_z22_quadratic"))
        .stdout(predicate::str::contains("/admissibility/branch: expected \"A\", got \"B\""));
}

#[test]
fn missing_fixture_is_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    fs::remove_file(dir.path().join("charts/ckk_k2_m2.txt")).unwrap();
    cycert()
        .args(["reproduce-paper", "--fixtures"])
        .arg(dir.path())
        .assert()
        .code(3)
        .stderr(predicate::str::contains("missing fixture"));
}

#[test]
fn bless_then_clean() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    fs::remove_dir_all(dir.path().join("expected")).unwrap();
    cycert().args(["reproduce-paper", "--bless", "--fixtures"]).arg(dir.path()).assert().code(0);
    cycert().args(["reproduce-paper", "--fixtures"]).arg(dir.path()).assert().code(0);
}
