use std::path::PathBuf;

use super::*;

const PENDULUM: &str = r#"{
  "schema_version": 1,
  "potential": { "inline": { "n": 2, "s": 1.0, "modes": [ { "k": [1, 0], "re": 1.0, "im": 0.0 } ] } },
  "oned": {
    "eps": 1e-4, "k_max": 1, "max_generators": 1, "profile_points": 6,
    "fit": { "zmin": 1e-3, "zmax": 0.1, "degree": 3, "samples": 24 },
    "minimum_fit": { "zmin": 1e-9, "zmax": 1e-7, "degree": 1, "samples": 24 },
    "twist": { "lo": 0.05, "hi": 0.95, "nodes": 32, "m_max": 2 }
  },
  "kam": { "m": 2.0, "d": 0.5, "r": 1.0, "s": 1.0, "n": 2, "perturbation": 1e-9 },
  "seed": 5
}"#;

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kam-atlas-report-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn parses_and_rejects_unknown_fields() {
    let c = StudyConfig::from_json(PENDULUM).unwrap();
    assert!(c.covering.is_none() && c.genericity.is_none());
    assert_eq!(c.kam.as_ref().unwrap().c_kam, 1.0);
    let typo = PENDULUM.replace("\"seed\"", "\"sead\": 1, \"seed\"");
    assert!(matches!(StudyConfig::from_json(&typo), Err(crate::Error::Config(_))));
    let missing = PENDULUM.replace("\"potential\"", "\"potentiel\"");
    assert!(StudyConfig::from_json(&missing).is_err());
}

#[test]
fn validation_catches_bad_values() {
    let bad_twist = PENDULUM.replace("\"lo\": 0.05", "\"lo\": 0.0");
    assert!(StudyConfig::from_json(&bad_twist).is_err());
    let bad_kam = PENDULUM.replace("\"d\": 0.5", "\"d\": 5.0");
    assert!(StudyConfig::from_json(&bad_kam).is_err());
    let covering_alone = PENDULUM.replace(
        "\"seed\": 5",
        "\"covering\": {\"eps\": [1e-5], \"k0\": 2, \"k\": 6, \"samples\": 10, \"zone_samples\": 10}, \"seed\": 5",
    );
    assert!(StudyConfig::from_json(&covering_alone).is_err());
}

#[test]
fn file_potential_resolves_relative_to_config() {
    let dir = scratch("file");
    std::fs::create_dir_all(dir.join("pot")).unwrap();
    let f = crate::fourier::FourierPotential::prototype(2, 1.0, 4).unwrap();
    std::fs::write(dir.join("pot/f.json"), f.to_json().unwrap()).unwrap();
    let text = PENDULUM.replace(
        r#"{ "inline": { "n": 2, "s": 1.0, "modes": [ { "k": [1, 0], "re": 1.0, "im": 0.0 } ] } }"#,
        r#"{ "file": "pot/f.json" }"#,
    );
    std::fs::write(dir.join("c.json"), &text).unwrap();
    let c = StudyConfig::load(&dir.join("c.json")).unwrap();
    assert_eq!(c.potential().unwrap(), f);
    std::fs::remove_file(dir.join("pot/f.json")).unwrap();
    assert!(matches!(StudyConfig::load(&dir.join("c.json")), Err(crate::Error::Config(_))));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn study_is_reproducible_and_tagged() {
    let c = StudyConfig::from_json(PENDULUM).unwrap();
    let (a, b) = (scratch("a"), scratch("b"));
    let ra = run_study(&c, &a).unwrap();
    run_study(&c, &b).unwrap();
    assert!(ra.passed(), "{:?}", ra.summary);
    assert_eq!(ra.summary.sections["covering"].status, Status::Skipped);
    assert_eq!(ra.summary.sections["oned"].status, Status::Green);
    let kam = &ra.summary.sections["kam"];
    assert_eq!(kam.quantities["max_perturbation"].value, 2f64.powi(-23));
    assert_eq!(kam.quantities["admissible"].value, 1.0);
    for sec in ra.summary.sections.values() {
        for f in &sec.files {
            assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
        }
        assert!(sec.quantities.values().all(|q| !q.op.is_empty()));
    }
    assert_eq!(
        std::fs::read(a.join("summary.json")).unwrap(),
        std::fs::read(b.join("summary.json")).unwrap()
    );
    let _ = std::fs::remove_dir_all(&a);
    let _ = std::fs::remove_dir_all(&b);
}

#[test]
fn plan_limits_sections() {
    let c = StudyConfig::from_json(PENDULUM).unwrap();
    let out = scratch("plan");
    let r = run_plan(
        &c,
        &out,
        Plan {
            portraits: true,
            ..Plan::none()
        },
    )
    .unwrap();
    assert_eq!(r.summary.sections.keys().collect::<Vec<_>>(), ["oned"]);
    assert!(out.join("oned/k_1_0/portrait.svg").exists());
    assert!(!out.join("oned/k_1_0/fits.json").exists());
    let _ = std::fs::remove_dir_all(&out);
}
