//! Black-box tests of the qteam binary: exit codes, output shape, and the
//! CSV contract.

use std::process::Command;

fn qteam() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qteam"))
}

fn stdout_of(output: &std::process::Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn solve_all_prints_the_three_reference_costs() {
    let out = qteam()
        .args([
            "solve", "--lambda-b", "0.8", "--lambda-h", "0.8", "--chi0", "1", "--chi1", "3",
            "--space", "all",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);

    let value_of = |prefix: &str| -> f64 {
        text.lines()
            .find(|l| l.starts_with(prefix))
            .unwrap_or_else(|| panic!("missing {prefix} line in {text}"))
            .split_whitespace()
            .nth(1)
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((value_of("classical") - (-1.6)).abs() <= 1e-9);
    assert!(value_of("quantum") <= -1.615);
    assert!((value_of("ns") - (-1.76)).abs() <= 1e-9);
}

#[test]
fn solve_single_space_prints_only_that_space() {
    let out = qteam()
        .args([
            "solve", "--lambda-b", "0.8", "--lambda-h", "0.8", "--chi0", "1", "--chi1", "3",
            "--space", "classical",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("classical"));
    assert!(!text.contains("quantum") && !text.contains("ns "));
}

#[test]
fn invalid_problem_parameters_exit_2() {
    let out = qteam()
        .args([
            "solve", "--lambda-b", "1.5", "--lambda-h", "0.8", "--chi0", "1", "--chi1", "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_arguments_exit_2() {
    let out = qteam().args(["solve", "--lambda-b", "0.8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = qteam().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_writes_the_contracted_csv() {
    let dir = std::env::temp_dir().join(format!("qteam-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chi1.csv");

    let out = qteam()
        .args([
            "sweep", "--axis", "chi1", "--from", "0.1", "--to", "6", "--steps", "60", "--out",
        ])
        .arg(&path)
        .args(["--grid-resolution", "10", "--restarts", "4"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,j_classical,j_quantum,j_ns,adv_quantum,adv_ns"
    );
    assert_eq!(lines.count(), 60);
    assert!(!text.contains('\r'));

    let records = qteam::sweep::read_csv_file(&path).unwrap();
    assert_eq!(records.len(), 60);
    assert!((records[0].param - 0.1).abs() <= 1e-9);
    assert!((records[59].param - 6.0).abs() <= 1e-9);
    for r in &records {
        assert!(r.j_ns <= r.j_quantum + 1e-6 && r.j_quantum <= r.j_classical + 1e-6);
    }

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_rejects_degenerate_range() {
    let out = qteam()
        .args([
            "sweep", "--axis", "chi1", "--from", "1", "--to", "1", "--steps", "10", "--out",
            "/tmp/never-written.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = qteam()
        .args([
            "sweep", "--axis", "sideways", "--from", "0", "--to", "1", "--steps", "5", "--out",
            "/tmp/never-written.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_env_var_is_honored_and_validated() {
    let dir = std::env::temp_dir().join(format!("qteam-threads-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lam.csv");

    let out = qteam()
        .env("QTEAM_THREADS", "2")
        .args([
            "sweep", "--axis", "lambda-both", "--from", "0.5", "--to", "1.0", "--steps", "5",
            "--out",
        ])
        .arg(&path)
        .args(["--grid-resolution", "8", "--restarts", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(qteam::sweep::read_csv_file(&path).unwrap().len(), 5);

    let out = qteam()
        .env("QTEAM_THREADS", "zero")
        .args([
            "sweep", "--axis", "lambda-both", "--from", "0.5", "--to", "1.0", "--steps", "5",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn simulate_reports_empirical_against_exact() {
    let out = qteam()
        .args(["simulate", "--samples", "5000", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("BFirst") && text.contains("HFirst"));
    assert!(text.contains("total variation"));
    assert!(text.contains("exact expected cost"));
}

#[test]
fn verify_passes_on_a_correct_build() {
    let out = qteam().arg("verify").output().unwrap();
    let text = stdout_of(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}
