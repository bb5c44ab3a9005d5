use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lg_cli::anchors::anchors;
use lg_cli::explain::{anchor_line, explain};
use lg_cli::{CliError, Report};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lgverify"));
    c.env_remove("REPORT_DIR");
    c
}

fn p3() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/p3.toml")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lgverify-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn verify(config: &Path, suites: &[&str], report: &Path) -> Output {
    let mut c = bin();
    c.arg("verify").arg("--config").arg(config).arg("--report").arg(report);
    for s in suites {
        c.args(["--suite", s]);
    }
    c.output().unwrap()
}

fn with_edit(dir: &Path, from: &str, to: &str) -> PathBuf {
    let text = fs::read_to_string(p3()).unwrap();
    assert!(text.contains(from), "p3.toml lacks {from:?}");
    let path = dir.join("edited.toml");
    fs::write(&path, text.replacen(from, to, 1)).unwrap();
    path
}

#[test]
fn even_prime_is_a_config_error() {
    let d = scratch("p2");
    let cfg = with_edit(&d, "\np = 3", "\np = 2");
    let out = verify(&cfg, &["lambda"], &d.join("r.json"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonOddPrime"));
    assert!(!d.join("r.json").exists());
}

#[test]
fn tolerance_outside_range_is_a_config_error() {
    let d = scratch("tol");
    for bad in ["tol = 1e-3", "tol = 1e-15"] {
        let cfg = with_edit(&d, "\ntol = 1e-9", &format!("\n{bad}"));
        let out = verify(&cfg, &["lambda"], &d.join("r.json"));
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
}

#[test]
fn unknown_suite_is_a_config_error() {
    let d = scratch("suite");
    let out = verify(&p3(), &["no-such-suite"], &d.join("r.json"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_filter_and_byte_identical_reports() {
    let d = scratch("det");
    let (a, b) = (d.join("a.json"), d.join("b.json"));
    for r in [&a, &b] {
        let out = verify(&p3(), &["lambda", "ft-lemmas"], r);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let rep = Report::read(&a).unwrap();
    assert_eq!(rep.suites.keys().collect::<Vec<_>>(), ["ft-lemmas", "lambda"]);
    assert_eq!(rep.config.suites, ["lambda", "ft-lemmas"]);
    let ids: Vec<&str> = rep.suites["lambda"].iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn report_dir_sets_the_default_location() {
    let d = scratch("dir");
    let out = bin()
        .env("REPORT_DIR", &d)
        .args(["verify", "--suite", "lambda", "--config"])
        .arg(p3())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(d.join("report.json").exists());
}

#[test]
fn explain_prints_the_manifest_anchor() {
    let d = scratch("explain");
    let r = d.join("r.json");
    assert_eq!(verify(&p3(), &["minimal-field"], &r).status.code(), Some(0));
    let rep = Report::read(&r).unwrap();
    let id = "minimal-field/identity/unramified/00";
    let text = explain(&rep, id).unwrap();
    let anchor = anchors().kind("minimal-field/identity");
    assert!(anchor.contains("η₁(−1)χ(δ)|δ|_E^{s−1/2}"));
    assert!(text.lines().any(|l| l == anchor_line(anchor)));
    assert!(text.contains("lhs: ") && text.contains("rhs: "));

    let out = bin().args(["explain", "--case", id, "--report"]).arg(&r).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn explain_rejects_unknown_cases() {
    let d = scratch("unknown");
    let r = d.join("r.json");
    assert_eq!(verify(&p3(), &["lambda"], &r).status.code(), Some(0));
    let rep = Report::read(&r).unwrap();
    assert!(matches!(explain(&rep, "lambda/x-free/nowhere"), Err(CliError::UnknownCase(_))));
    let out = bin().args(["explain", "--case", "lambda/x-free/nowhere", "--report"]).arg(&r).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnknownCase"));
}

#[test]
fn catalog_cases_carry_manifest_anchors() {
    let d = scratch("catalog");
    let r = d.join("r.json");
    let out = verify(&p3(), &["jacobians"], &r);
    assert_eq!(out.status.code(), Some(0));
    let rep = Report::read(&r).unwrap();
    for c in rep.cases() {
        assert_eq!(anchors().for_case(&c.id), Some(c.anchor.as_str()), "{}", c.id);
        assert!(explain(&rep, &c.id).unwrap().contains(&anchor_line(&c.anchor)));
    }
}
