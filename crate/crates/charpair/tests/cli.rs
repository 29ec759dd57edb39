//! End-to-end tests of the command-line interface: output shapes, exit
//! codes, fixture loading, and report files.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_charpair"))
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("charpair-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn disc_prints_the_reduced_discriminant() {
    let out = bin().args(["disc", "--prime", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.trim(),
        "u^4*v*w+u^3*v^2*w+u^2*v^3*w+u^2*v^2*w^2+u*v^3*w^2+u^3*w^3+u^2*v*w^3+u^2*w^4"
    );
}

#[test]
fn fibers_lists_the_seven_degenerate_points() {
    let out = bin().arg("fibers").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "(0:1:0)  double-line",
            "(0:1:1)  cross-split",
            "(1:0:0)  cross-split",
            "(1:0:1)  cross-split",
            "(0:0:1)  cross-conjugate",
            "(1:1:0)  cross-conjugate",
            "(1:1:1)  cross-conjugate",
        ]
    );
}

#[test]
fn classify_reads_a_point_off_the_command_line() {
    let out = bin()
        .args(["classify", "--point", "0:1:0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "(0:1:0)  double-line");

    // Over F_4 the conjugate cross at (1:1:1) splits.
    let out = bin()
        .args(["classify", "--point", "1:1:1", "--field-degree", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "(1:1:1)  cross-split");

    // Code 2 is the generator g; the fiber at (1:g:0) stays conjugate.
    let out = bin()
        .args(["classify", "--point", "1:2:0", "--field-degree", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "(1:g:0)  cross-conjugate");
}

#[test]
fn residue_reports_the_canonical_class() {
    let out = bin().args(["residue", "--line", "u"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ramification  (0:1:0)"), "{text}");
    assert!(text.contains("class         canonical-pole"), "{text}");
}

#[test]
fn irreducible_certifies_small_primes() {
    let out = bin()
        .args(["irreducible", "--primes", "3,5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.ends_with("PASS")), "{text}");
}

#[test]
fn verify_rejects_two_as_a_reduction_prime() {
    let out = bin()
        .args(["verify", "--primes", "2,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("configuration"), "{err}");
}

#[test]
fn blowup_prints_the_census() {
    let out = bin().arg("blowup").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total singular length 11"), "{text}");
    assert!(
        text.contains("base (0:0:1) (degree 1)  cross-conjugate  contact 3  length 5"),
        "{text}"
    );
    assert_eq!(text.matches("smooth quadric (rank 4)").count(), 7);
    assert_eq!(
        text.matches("cone with one singular point (rank 3)").count(),
        2
    );
}

#[test]
fn verify_writes_reports_and_exits_zero_on_pass() {
    let json_path = temp_path("report.json");
    let md_path = temp_path("report.md");
    let out = bin()
        .args(["verify", "--primes", "3"])
        .arg("--json")
        .arg(&json_path)
        .arg("--md")
        .arg(&md_path)
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.contains("overall: PASS"), "{text}");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    assert!(checks
        .iter()
        .all(|c| c["status"].as_str() == Some("PASS")));

    let md = std::fs::read_to_string(&md_path).unwrap();
    assert!(md.contains("Overall: **PASS**"));
    assert!(md.contains("| (0:1:0) | double-line | u, w, u+w |"));

    std::fs::remove_file(&json_path).ok();
    std::fs::remove_file(&md_path).ok();
}

#[test]
fn fixture_files_override_the_built_in_bundle() {
    let path = temp_path("companion.json");
    let companion = charpair::fixtures::companion_bundle();
    let json = charpair::fixtures::bundle_to_json(&companion);
    std::fs::write(&path, serde_json::to_string_pretty(&json).unwrap()).unwrap();

    let out = bin()
        .arg("--fixture")
        .arg(&path)
        .arg("disc")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "u^2*w+u*w^2");

    std::fs::remove_file(&path).ok();
}
