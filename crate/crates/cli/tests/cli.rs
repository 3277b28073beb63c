//! End-to-end tests of the `rigor` binary: exit codes, report output,
//! the pocket-calculator mode, and certificate round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rigor"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn check_proved_scripts_exit_zero() {
    for file in ["turn_rate.rg", "parabola.rg", "atan_error.rg"] {
        let out = run(&["check", data(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stdout(&out));
        let text = stdout(&out);
        assert!(text.contains("PROVED"), "{file}: {text}");
        assert!(!text.contains("UNKNOWN"), "{file}: {text}");
    }
}

#[test]
fn check_refuted_exits_two() {
    let out = run(&["check", data("refuted.rg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("REFUTED"));
}

#[test]
fn check_unknown_exits_one() {
    let out = run(&["check", data("unknown.rg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("UNKNOWN"));
}

#[test]
fn check_parse_error_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rg");
    std::fs::write(&path, "assert sin(pi/2\n").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let out = run(&["check", "/definitely/not/there.rg"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_certificates_verify_and_tampering_is_caught() {
    let out = run(&["check", data("parabola.rg").to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout(&out);
    assert!(json.trim_start().starts_with('['));

    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("certs.json");
    std::fs::write(&cert_path, &json).unwrap();
    let out = run(&["verify", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("OK"));

    // flip a verdict and watch the replay object
    let tampered = json.replacen("\"proved\"", "\"refuted\"", 1);
    assert_ne!(tampered, json);
    std::fs::write(&cert_path, &tampered).unwrap();
    let out = run(&["verify", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn eval_constant_expressions() {
    let out = run(&["eval", "exp(0)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("enclosure: [1, 1]"), "{text}");

    let out = run(&["eval", "pi", "--approx", "3", "--digits", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3.141592"), "{text}");

    let out = run(&["eval", "ln(0)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("empty (side condition violated)"));

    let out = run(&["eval", "x + 1"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["eval", "sin(pi/2)"]);
    assert!(stdout(&out).contains("enclosure: [1, 1]"));
}

#[test]
fn escalation_rescues_low_depth_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("needs_depth.rg");
    // at n=0 the pi enclosure is far too wide to place 35*pi/180 inside
    // the tangent's increasing range tightly enough
    std::fs::write(
        &path,
        "assert (9.8*tan(35*pi/180)/(250*0.514)) * 180/pi in [3, 3.1]\n",
    )
    .unwrap();
    let strict = run(&["check", path.to_str().unwrap(), "--approx", "0"]);
    assert_eq!(strict.status.code(), Some(1), "{}", stdout(&strict));
    let escalated = run(&[
        "check",
        path.to_str().unwrap(),
        "--approx",
        "0",
        "--escalate",
        "16",
    ]);
    assert_eq!(escalated.status.code(), Some(0), "{}", stdout(&escalated));
}

#[test]
fn parallel_flag_is_deterministic() {
    let sequential = run(&["check", data("parabola.rg").to_str().unwrap(), "--json"]);
    let parallel = run(&[
        "check",
        data("parabola.rg").to_str().unwrap(),
        "--json",
        "--parallel",
        "4",
    ]);
    // wall-clock timings differ run to run; everything else must not
    let strip = |out: &Output| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(out)).expect("json output");
        for cert in v.as_array_mut().expect("array of certificates") {
            cert.as_object_mut().unwrap().remove("timing_ms");
        }
        v
    };
    assert_eq!(strip(&sequential), strip(&parallel));
}
