//! End-to-end tests of the binary: exit codes, text output, JSON schema.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gensylow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn order_3d4_text() {
    let out = run(&["order", "3D4", "--q", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("q^12 * P1^2 * P2^2 * P3^2 * P6^2 * P12"));
    assert!(text.contains("= 211341312"));
}

#[test]
fn sylow_2g2_json() {
    let out = run(&["sylow", "2G2", "--q", "sqrt3", "--ell", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sylow"]["abelian"], true);
    assert_eq!(v["sylow"]["torus_part"], serde_json::json!(["2", "2", "2"]));
    assert_eq!(v["sylow"]["exception"], "2G2-ell2");
    assert_eq!(v["q"]["eta"], 2);
}

#[test]
fn identical_requests_render_identically() {
    let a = run(&["sylow", "2F4", "--q", "sqrt2", "--ell", "3", "--json"]);
    let b = run(&["sylow", "2F4", "--q", "sqrt2", "--ell", "3", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn sweep_runs() {
    let out = run(&["sweep", "B2", "--q", "2", "--lmax", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ell = 3"));
    assert!(text.contains("ell = 5"));
}

#[test]
fn usage_errors_exit_2() {
    // unknown group series
    let out = run(&["order", "Z9", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // bad q
    let out = run(&["order", "A1", "--q", "12"]);
    assert_eq!(out.status.code(), Some(2));
    // ℓ equal to the characteristic
    let out = run(&["sylow", "A1", "--q", "2", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // clap-level parse error
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_exit_0() {
    let out = run(&["verify", "lemma-div", "--xmax", "40", "--fmax", "12", "--lmax", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no violations"));
    let out = run(&["verify", "divcyclo", "--qmax", "10", "--emax", "12", "--lmax", "7"]);
    assert!(out.status.success());
    let out = run(&["verify", "order-oracle"]);
    assert!(out.status.success());
}

#[test]
fn weyl_commands() {
    let out = run(&["weyl", "torus", "B2", "--w", "12", "--q", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x^2 + 4"));
    assert!(text.contains("[5]"));

    let out = run(&["weyl", "eigenspaces", "B2", "--d", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("max eigenspace dim 1"));
}

#[test]
fn out_file_written() {
    let dir = std::env::temp_dir().join("gensylow-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "sylow",
        "A1",
        "--q",
        "3",
        "--ell",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["sylow"]["sylow_order"], "8");
    std::fs::remove_file(&path).ok();
}
