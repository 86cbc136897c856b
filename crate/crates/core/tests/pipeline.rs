use std::fs;
use std::path::Path;

use cycert::conespec::ConeSpec;
use cycert::exactnum::QuadExt;
use cycert::pipeline::{certified_params, enumerate_spec, run_pipeline, PipelineOptions};
use cycert::reproduce::{bundled_fixtures, reproduce_paper, ReproError, ReproOptions};

fn bundled(name: &str) -> ConeSpec {
    let path = bundled_fixtures().join("specs").join(format!("{name}.toml"));
    ConeSpec::from_toml(&fs::read_to_string(path).unwrap()).unwrap()
}

fn copy_fixtures(to: &Path) {
    for sub in ["specs", "expected", "charts"] {
        let from = bundled_fixtures().join(sub);
        fs::create_dir_all(to.join(sub)).unwrap();
        for e in fs::read_dir(from).unwrap() {
            let p = e.unwrap().path();
            fs::copy(&p, to.join(sub).join(p.file_name().unwrap())).unwrap();
        }
    }
}

#[test]
fn spp_is_certified() {
    let cert = run_pipeline(&bundled("spp_k2_m2").resolve(None).unwrap(), &PipelineOptions::default());
    assert!(cert.is_certified(), "{:?}", cert.verdict);
    assert_eq!(cert.schema, "cy-cert/1");
    let toric = cert.toric.unwrap();
    assert!(!toric.inexact);
    assert!(toric.xi_exact.is_some());
}

#[test]
fn milnor_fiber_is_rejected_by_the_window() {
    let cert = run_pipeline(&bundled("milnor_fiber").resolve(None).unwrap(), &PipelineOptions::default());
    assert_eq!(cert.verdict.status, "rejected");
    assert_eq!(cert.verdict.reason.as_deref(), Some("window"));
    assert_eq!(cert.verdict.stage.as_deref(), Some("admissibility"));
    assert!(cert.charts.is_empty());
}

#[test]
fn complete_intersection_has_half_weight() {
    let cert = run_pipeline(&bundled("ci_section4").resolve(None).unwrap(), &PipelineOptions::default());
    assert!(cert.is_certified());
    let adm = cert.admissibility.unwrap();
    assert_eq!(adm.d_s, QuadExt::from_int(4));
    assert_eq!(adm.nu, Some(QuadExt::from_ratio(1, 2)));
}

#[test]
fn certificates_are_deterministic() {
    let spec = bundled("ci_section4").resolve(None).unwrap();
    let a = run_pipeline(&spec, &PipelineOptions::default()).to_json();
    let b = run_pipeline(&spec, &PipelineOptions::default()).to_json();
    assert_eq!(a, b);
    let again = bundled("ci_section4").resolve(None).unwrap();
    assert_eq!(a, run_pipeline(&again, &PipelineOptions::default()).to_json());
}

#[test]
fn tolerance_is_recorded() {
    let spec = bundled("spp_k2_m2").resolve(None).unwrap();
    let cert = run_pipeline(&spec, &PipelineOptions::with_tolerance(1e-7));
    assert_eq!(cert.tolerance, 1e-7);
    assert!(cert.to_markdown().contains("**Verdict:** certified"));
}

#[test]
fn family_enumeration_matches_table() {
    let e = enumerate_spec(&bundled("spp_k2_m2"), &PipelineOptions::default()).unwrap();
    assert_eq!(certified_params(&e), [1, 2, 3]);
    let e = enumerate_spec(&bundled("spp_k3_m2"), &PipelineOptions::default()).unwrap();
    assert_eq!(certified_params(&e), [1, 2, 3, 4]);
}

#[test]
fn bundled_fixtures_reproduce() {
    let report = reproduce_paper(&bundled_fixtures(), &ReproOptions::default()).unwrap();
    assert!(report.is_clean(), "{}", report.render());
    assert_eq!(report.cases.len(), 8);
}

#[test]
fn tag_selects_subset() {
    let opts = ReproOptions {
        only_tag: Some("toric".into()),
        ..Default::default()
    };
    let report = reproduce_paper(&bundled_fixtures(), &opts).unwrap();
    let names: Vec<&str> = report.cases.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["ckk_k2_m2", "milnor_fiber", "spp_k2_m2", "spp_k3_m2"]);
    let opts = ReproOptions {
        only_tag: Some("no-such-tag".into()),
        ..Default::default()
    };
    assert!(matches!(reproduce_paper(&bundled_fixtures(), &opts), Err(ReproError::UnknownTag(_))));
}

#[test]
fn corrupted_fixture_is_named() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let path = dir.path().join("expected/ci_section4.json");
    let text = fs::read_to_string(&path).unwrap().replacen("\"1/2\"", "\"1/3\"", 1);
    fs::write(&path, text).unwrap();
    let chart = dir.path().join("charts/spp_k2_m2.txt");
    let text = fs::read_to_string(&chart).unwrap().replace("xi^(6 - 2*sqrt(3))", "xi^(6 - sqrt(3))");
    fs::write(&chart, text).unwrap();

    let report = reproduce_paper(dir.path(), &ReproOptions::default()).unwrap();
    assert!(!report.is_clean());
    let bad: Vec<&str> = report.cases.iter().filter(|c| !c.diffs.is_empty()).map(|c| c.name.as_str()).collect();
    assert_eq!(bad, ["ci_section4", "spp_k2_m2"]);
    let ci = report.cases.iter().find(|c| c.name == "ci_section4").unwrap();
    assert!(ci.diffs.iter().all(|d| d.path.starts_with("/admissibility/nu")), "{:?}", ci.diffs);
    assert!(report.render().contains("charts:2"));
}

#[test]
fn missing_fixture_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    fs::remove_file(dir.path().join("expected/milnor_fiber.json")).unwrap();
    let err = reproduce_paper(dir.path(), &ReproOptions::default()).unwrap_err();
    assert!(matches!(err, ReproError::MissingFixture(p) if p.ends_with("milnor_fiber.json")));
    assert!(matches!(
        reproduce_paper(&dir.path().join("nowhere"), &ReproOptions::default()),
        Err(ReproError::NoSpecs(_))
    ));
}

#[test]
fn bless_rewrites_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    fs::remove_dir_all(dir.path().join("expected")).unwrap();
    let opts = ReproOptions {
        bless: true,
        ..Default::default()
    };
    let report = reproduce_paper(dir.path(), &opts).unwrap();
    assert_eq!(report.written.len(), 8 + 7);
    let again = reproduce_paper(dir.path(), &ReproOptions::default()).unwrap();
    assert!(again.is_clean());
}
