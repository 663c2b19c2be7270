//! Behavior of the binary: output formats and exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multizeta"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn eval_prints_the_gated_value() {
    let (code, stdout, _) = run(&[
        "eval", "--omega", "star", "--d", "2", "--k", "1", "--char", "principal:1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "7/360 * pi^4");
}

#[test]
fn eval_json_shape() {
    let (code, stdout, _) = run(&[
        "eval", "--omega", "star", "--d", "2", "--k", "1", "--char", "principal:1", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["pi_exponent"], 4);
    assert_eq!(v["coefficient"]["order"], 1);
    assert_eq!(v["coefficient"]["coeffs"][0], "7/360");
    assert!(v["numeric"]["re"].as_str().unwrap().starts_with("1.8940"));
}

#[test]
fn central_value_at_zero() {
    let (code, stdout, _) = run(&[
        "central", "--omega", "bullet", "--d", "1", "--k", "0", "--char", "principal:1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-1/2");
}

#[test]
fn oracle_json_shape() {
    let (code, stdout, _) = run(&[
        "oracle", "--omega", "bullet", "--d", "1", "--k", "1", "--char", "principal:1",
        "--cutoff", "2000", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["cutoff"], 2000);
    assert!(v["value"]["re"].as_str().unwrap().starts_with("1.644"));
    assert!(v["tail_bound"].as_str().is_some());
}

#[test]
fn verify_small_suite_exits_zero() {
    let (code, stdout, _) = bin()
        .env("MULTIZETA_THREADS", "2")
        .args(["verify", "--suite", "tables", "--dmax", "2"])
        .output()
        .map(|out| {
            (
                out.status.code().unwrap_or(-1),
                String::from_utf8_lossy(&out.stdout).into_owned(),
                String::from_utf8_lossy(&out.stderr).into_owned(),
            )
        })
        .unwrap();
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("suite tables:"));
    assert!(stdout.contains("0 failed"));
}

#[test]
fn verify_identities_exits_zero() {
    let out = bin()
        .args(["verify", "--suite", "identities", "--kmax", "4", "--dmax", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_json_is_deterministic() {
    let run_json = || {
        let (code, stdout, _) = bin()
            .env("MULTIZETA_THREADS", "3")
            .args(["verify", "--suite", "tables", "--dmax", "1", "--json"])
            .output()
            .map(|out| {
                (
                    out.status.code().unwrap_or(-1),
                    String::from_utf8_lossy(&out.stdout).into_owned(),
                    String::from_utf8_lossy(&out.stderr).into_owned(),
                )
            })
            .unwrap();
        assert_eq!(code, 0);
        stdout
    };
    assert_eq!(run_json(), run_json());
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(&["eval", "--omega", "diagonal", "--d", "1", "--k", "1", "--char", "principal:1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["seq", "--name", "fibonacci", "--n", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["eval", "--nonsense"]);
    assert_eq!(code, 2);
    // divergent request: argument 1 with the principal character
    let (code, _, _) = run(&["eval", "--omega", "bullet", "--d", "1", "--k", "0", "--char", "principal:2"]);
    assert_eq!(code, 2);
}

#[test]
fn chars_and_seq_output() {
    let (code, stdout, _) = run(&["chars", "--modulus", "8", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[0]["label"], "principal:8");
    assert_eq!(v[0]["conductor"], 1);

    let (code, stdout, _) = run(&["seq", "--name", "euler", "--n", "10"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-50521");

    let (code, stdout, _) = run(&[
        "seq", "--name", "genbernoulli", "--n", "1", "--char", "kronecker:-8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-1");
}

#[test]
fn digits_rendering() {
    let (code, stdout, _) = run(&[
        "eval", "--omega", "bullet", "--d", "1", "--k", "0", "--char", "kronecker:-4",
        "--digits", "10",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1/4 * pi^1"));
    assert!(stdout.contains("7.8539816340e-1"));
}
