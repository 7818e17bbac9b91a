//! Byte-exact command output against golden files, plus emit/re-parse round
//! trips through the binary.

use std::path::Path;
use std::process::{Command, Output};

fn zhatool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zhatool"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../.."))
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = zhatool(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn assert_golden(args: &[&str], golden: &str) {
    let expected =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(golden))
            .expect("golden file exists");
    assert_eq!(stdout_of(args), expected, "golden mismatch for {golden}");
}

#[test]
fn rendering_is_deterministic_and_frozen() {
    assert_golden(&["zha", "from-2cg", "fixtures/running.2cg"], "running_plain.txt");
    assert_golden(
        &["zha", "from-2cg", "fixtures/running.2cg", "--cuts"],
        "running_cuts.txt",
    );
    assert_golden(&["slash", "show", "fixtures/three_rungs.2cg"], "three_rungs_slash.txt");
}

#[test]
fn path_table_matches_golden() {
    assert_golden(
        &[
            "slash",
            "table",
            "fixtures/running.2cg",
            "--path",
            "00,01,02,03,04,14,24,34,35,36,46",
        ],
        "running_table.txt",
    );
}

#[test]
fn cube_report_is_stable() {
    assert_golden(&["cube", "report", "--connective", "or", "--bound", "3"], "cube_or.txt");
}

#[test]
fn local_operator_report_is_stable() {
    assert_golden(&["topos", "j", "fixtures/three_rungs.2cg"], "three_rungs_j.txt");
}

#[test]
fn emitted_psh_reparses() {
    let sheafified = stdout_of(&[
        "topos",
        "sheafify",
        "fixtures/three_rungs.2cg",
        "fixtures/sample.psh",
    ]);
    // feeding the output back in: sheafification is idempotent on fibers
    let dir = tempdir();
    let path = dir.join("once.psh");
    std::fs::write(&path, &sheafified).unwrap();
    let twice = stdout_of(&[
        "topos",
        "sheafify",
        "fixtures/three_rungs.2cg",
        path.to_str().unwrap(),
    ]);
    let fiber_sizes = |text: &str| -> Vec<usize> {
        text.lines()
            .filter(|l| l.starts_with("point"))
            .map(|l| l.split(':').nth(1).unwrap().split_whitespace().count())
            .collect()
    };
    assert_eq!(fiber_sizes(&sheafified), fiber_sizes(&twice));
    std::fs::remove_dir_all(dir).ok();
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("zhatool-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn error_paths_exit_one_with_a_diagnostic() {
    let out = zhatool(&["zha", "from-2cg", "fixtures/does_not_exist.2cg"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = zhatool(&["poly", "eval", "(v 22)", "--at", "99", "--grid", "2", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = zhatool(&["topos", "closure", "fixtures/three_rungs.2cg", "--sub", "23", "--of", "11"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = zhatool(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = zhatool(&["cube", "report", "--connective", "xor"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn questions_round_trip_through_the_cli() {
    let shown = stdout_of(&["slash", "show", "fixtures/running.2cg"]);
    let slashing_line = shown.lines().next().unwrap();
    let slashing = slashing_line.strip_prefix("slashing: ").unwrap();
    let questions = stdout_of(&[
        "slash",
        "questions",
        "fixtures/running.2cg",
        "--slashing",
        slashing,
    ]);
    assert_eq!(questions.trim(), "questions L2 L3 L4 R1 R2 R3 R5");
}
