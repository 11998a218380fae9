//! End-to-end runs of the built binary: golden output, determinism,
//! JSON roundtripping, exit codes, and precision resolution.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arakelov_cli::report::Report;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_arakelov")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut command = Command::new(binary());
    command
        .args(args)
        .env_remove("ARAKELOV_PRECISION_BITS")
        .env_remove("ARAKELOV_MAX_DEPTH");
    for (key, value) in env {
        command.env(key, value);
    }
    command.output().expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is UTF-8")
}

#[test]
fn golden_outputs_are_stable() {
    let cases: [(&[&str], &str); 4] = [
        (&["modular", "--x1", "5", "--json"], "modular_x1_5.json"),
        (
            &["khadjavi", "--branch", "0,1,inf", "--json"],
            "khadjavi_standard.json",
        ),
        (
            &["bound", "--genus", "1", "--belyi-degree", "3", "--json"],
            "bound_g1_d3.json",
        ),
        (&["verify", "theta", "--json"], "verify_theta.json"),
    ];
    for (args, golden_name) in cases {
        let output = run(args, &[]);
        assert_eq!(
            stdout_of(&output),
            golden(golden_name),
            "stdout of {args:?} drifted from {golden_name}"
        );
    }
}

#[test]
fn json_reports_roundtrip_byte_identically() {
    for name in [
        "modular_x1_5.json",
        "khadjavi_standard.json",
        "bound_g1_d3.json",
        "verify_theta.json",
    ] {
        let text = golden(name);
        let report: Report = serde_json::from_str(&text).expect("golden parses");
        assert_eq!(report.to_json(), text, "re-emission of {name} changed bytes");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["bound", "--genus", "2", "--belyi-degree", "5", "--json"];
    let first = run(&args, &[]);
    let second = run(&args, &[]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
}

#[test]
fn triple_file_derives_cover_data() {
    let triple = fixture("trefoil.triple");
    let output = run(
        &["bound", "--triple", triple.to_str().unwrap(), "--json"],
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    let report: Report = serde_json::from_str(stdout_of(&output)).expect("report parses");
    assert_eq!(report.inputs["belyi_degree"], "3");
    assert_eq!(report.inputs["genus"], "1");
    assert_eq!(report.inputs["cusps"], "3");
    assert!(report
        .claims
        .iter()
        .any(|c| c.name == "green_sup_bound_actual_cusps"));
}

#[test]
fn exit_codes_follow_worst_status() {
    assert_eq!(run(&["verify", "theta"], &[]).status.code(), Some(0));
    assert_eq!(run(&["verify", "appendix"], &[]).status.code(), Some(1));
    assert_eq!(
        run(&["bound", "--genus", "5", "--belyi-degree", "3"], &[])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["bound"], &[]).status.code(), Some(3));
    assert_eq!(run(&["modular"], &[]).status.code(), Some(3));
    assert_eq!(
        run(
            &["modular", "--x1", "5", "--congruence-index", "7"],
            &[]
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        run(&["khadjavi", "--branch", "0,zebra"], &[]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn precision_resolution_prefers_flag_over_env() {
    let from_env = run(
        &["verify", "lambda", "--json"],
        &[("ARAKELOV_PRECISION_BITS", "192"), ("ARAKELOV_MAX_DEPTH", "17")],
    );
    let report: Report = serde_json::from_str(stdout_of(&from_env)).unwrap();
    assert_eq!(report.precision_bits, 192);
    assert_eq!(report.max_depth, 17);

    let flag_wins = run(
        &["verify", "lambda", "--json", "--precision", "256"],
        &[("ARAKELOV_PRECISION_BITS", "192")],
    );
    let report: Report = serde_json::from_str(stdout_of(&flag_wins)).unwrap();
    assert_eq!(report.precision_bits, 256);

    let bad_env = run(
        &["verify", "lambda"],
        &[("ARAKELOV_PRECISION_BITS", "not-a-number")],
    );
    assert_eq!(bad_env.status.code(), Some(3));

    let too_low = run(&["verify", "lambda", "--precision", "16"], &[]);
    assert_eq!(too_low.status.code(), Some(3));
}

#[test]
fn human_table_lists_every_claim() {
    let output = run(&["verify", "merkl"], &[]);
    assert_eq!(output.status.code(), Some(0));
    let table = stdout_of(&output);
    for needle in [
        "command: verify",
        "green_sup_bound_tightest",
        "wronskian_scalar_link",
        "Certified",
        "slack >=",
    ] {
        assert!(table.contains(needle), "table lacks {needle:?}:\n{table}");
    }
}
