use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kam-atlas"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kam-atlas-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn run(args: &[&str], cfg: &Path, out: &Path) -> Output {
    bin().args(args).arg("--config").arg(cfg).arg("--out").arg(out).output().unwrap()
}

fn summary(out: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn missing_potential_is_a_config_error() {
    let dir = scratch("bad");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "seed": 3}"#).unwrap();
    let o = run(&["study"], &cfg, &dir.join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("potential"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn unknown_schema_version_is_rejected() {
    let dir = scratch("schema");
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(config("pendulum.json")).unwrap().replace("\"schema_version\": 1", "\"schema_version\": 9");
    let cfg = dir.join("v9.json");
    std::fs::write(&cfg, text).unwrap();
    assert_eq!(run(&["study"], &cfg, &dir.join("out")).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn pendulum_config_skips_covering() {
    let out = scratch("pendulum");
    let o = run(&["study"], &config("pendulum.json"), &out);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let s = summary(&out);
    assert_eq!(s["sections"]["covering"]["status"], "skipped");
    assert_eq!(s["sections"]["scaling"]["status"], "skipped");
    assert_eq!(s["sections"]["oned"]["status"], "green");
    for f in ["portrait.svg", "profile_r1.csv", "fits.json", "twist_r1.json"] {
        assert!(out.join("oned/k_1_0").join(f).exists(), "{f}");
    }
    let _ = std::fs::remove_dir_all(&out);
}

#[test]
fn every_summary_number_has_provenance() {
    let out = scratch("provenance");
    run(&["study"], &config("pendulum.json"), &out);
    let s = summary(&out);
    for (_, sec) in s["sections"].as_object().unwrap() {
        for (name, q) in sec["quantities"].as_object().unwrap() {
            assert!(q["value"].is_number() || q["value"].is_null(), "{name}");
            assert!(q["op"].as_str().is_some_and(|op| !op.is_empty()), "{name}");
            assert!(q.get("tol").is_some(), "{name}");
        }
    }
    let _ = std::fs::remove_dir_all(&out);
}

#[test]
fn seed_flag_overrides_config() {
    let out = scratch("seed");
    let o = bin()
        .args(["check-potential", "--seed", "77", "--config"])
        .arg(config("benchmark.json"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = summary(&out);
    assert_eq!(s["seed"], 77);
    assert_eq!(s["sections"]["genericity"]["status"], "green");
    assert!(s["sections"].get("oned").is_none());
    let _ = std::fs::remove_dir_all(&out);
}

#[test]
fn failing_section_exits_one() {
    let dir = scratch("red");
    std::fs::create_dir_all(&dir).unwrap();
    // a single mode leaves (0, 1) without coefficients, which the genericity check rejects
    let text = std::fs::read_to_string(config("pendulum.json"))
        .unwrap()
        .replace("\"seed\": 1", "\"genericity\": {\"delta\": 1.0, \"beta\": 1e-5, \"k_max\": 2}, \"seed\": 1");
    let cfg = dir.join("red.json");
    std::fs::write(&cfg, text).unwrap();
    let o = run(&["check-potential"], &cfg, &dir.join("out"));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(summary(&dir.join("out"))["sections"]["genericity"]["status"], "red");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn logring_prints_exact_expansion() {
    let o = bin().args(["logring", "--order", "2", "--m", "2", "--k", "6"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("z^6*D^7 + 18*z^5*D^6 + 98*z^4*D^5 + 184*z^3*D^4 + 100*z^2*D^3 + 8*z*D^2"));
    assert!(text.contains("leading constant (m = 2, k = 6): 92160"));
}

#[test]
fn logring_rejects_oversized_order() {
    let o = bin().args(["logring", "--order", "9"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
