#![allow(dead_code)]
//! Golden-file cases for the command-line tool.
//!
//! Each case runs the binary on a fixture and compares stdout with
//! `tests/golden/<name>.txt`. Set `BLESS=1` to rewrite the golden files.

use std::path::PathBuf;
use std::process::Command;

use toric_hodge::cli::{table_from_json, TableOutput};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "fan_check_p2", args: &["fan-check", "p2.json"], exit: 0 },
    Case { name: "fan_check_p1423", args: &["fan-check", "p1423.json"], exit: 0 },
    Case { name: "fan_check_cubic", args: &["fan-check", "p2_cubic.json"], exit: 0 },
    Case { name: "fan_check_not_adapted", args: &["fan-check", "not_adapted.json"], exit: 0 },
    Case { name: "fan_check_json", args: &["--json", "fan-check", "p1423.json"], exit: 0 },
    Case { name: "euler_cubic_alt", args: &["euler", "--kind", "alt", "--all-p", "p2_cubic.json"], exit: 0 },
    Case { name: "euler_quadric_alt", args: &["euler", "--kind", "alt", "--all-p", "p3_quadric.json"], exit: 0 },
    Case { name: "euler_quadric_sym", args: &["euler", "--kind", "sym", "-p", "2", "p3_quadric.json"], exit: 0 },
    Case { name: "euler_quadric_tensor", args: &["euler", "--kind", "tensor", "-p", "2", "p3_quadric.json"], exit: 0 },
    Case { name: "euler_above_dimension", args: &["euler", "--kind", "alt", "-p", "5", "p3_quadric.json"], exit: 0 },
    Case { name: "euler_json", args: &["--json", "euler", "--kind", "alt", "--all-p", "p3_quadric.json"], exit: 0 },
    Case { name: "hodge_cubic", args: &["hodge", "p2_cubic.json"], exit: 0 },
    Case { name: "hodge_quadric", args: &["hodge", "p3_quadric.json"], exit: 0 },
    Case { name: "hodge_p1xp1", args: &["hodge", "p1xp1.json"], exit: 0 },
    Case { name: "hodge_blowup", args: &["hodge", "blowup_in_p2xp1.json"], exit: 0 },
    Case { name: "hodge_quadric_graph", args: &["hodge", "quadric_graph_in_p3xp1.json"], exit: 0 },
    Case { name: "hodge_json", args: &["--json", "hodge", "blowup_in_p2xp1.json"], exit: 0 },
    Case { name: "torus_line", args: &["hodge-torus", "torus_line.json"], exit: 0 },
    Case { name: "torus_cubic", args: &["hodge-torus", "torus_cubic.json"], exit: 0 },
    Case { name: "torus_json", args: &["--json", "hodge-torus", "torus_line.json"], exit: 0 },
    Case { name: "wps_hodge_quintic", args: &["wps", "hodge", "quintic.json"], exit: 0 },
    Case { name: "wps_hodge_k3", args: &["wps", "hodge", "k3_2_3.json"], exit: 0 },
    Case { name: "wps_hodge_p1423", args: &["wps", "hodge", "p1423_degree12.json"], exit: 0 },
    Case { name: "wps_euler_quintic", args: &["wps", "euler", "--all-p", "quintic.json"], exit: 0 },
    Case { name: "wps_euler_sym", args: &["wps", "euler", "--kind", "sym", "-p", "2", "p1423_degree12.json"], exit: 0 },
    Case { name: "wps_json", args: &["--json", "wps", "hodge", "quintic.json"], exit: 0 },
    Case { name: "malformed", args: &["hodge-torus", "malformed.json"], exit: 2 },
    Case { name: "broken_syntax", args: &["hodge-torus", "broken_syntax.json"], exit: 2 },
    Case { name: "wrong_shape", args: &["hodge", "torus_line.json"], exit: 2 },
    Case { name: "nonprimitive_fan", args: &["fan-check", "nonprimitive_fan.json"], exit: 3 },
    Case { name: "incomplete_fan", args: &["euler", "--kind", "alt", "-p", "0", "incomplete_fan.json"], exit: 3 },
    Case { name: "too_many_vanishing", args: &["hodge", "not_adapted.json"], exit: 3 },
];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// Runs one case from the fixture directory; returns stdout, stderr and exit status.
pub fn run(case: &Case) -> (String, String, i32) {
    run_args(case.args)
}

pub fn run_args(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_toric-hodge"))
        .args(args)
        .current_dir(root().join("fixtures"))
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
        out.status.code().expect("exit status"),
    )
}

fn golden_path(name: &str) -> PathBuf {
    root().join("golden").join(format!("{name}.txt"))
}

/// The text a case is compared against: stdout on success, stderr otherwise.
pub fn observed(case: &Case) -> (String, i32) {
    let (out, err, code) = run(case);
    (if code == 0 { out } else { err }, code)
}

/// Compares every case with its golden file and returns the mismatches.
pub fn golden_mismatches() -> Vec<String> {
    let bless = std::env::var_os("BLESS").is_some();
    let mut bad = Vec::new();
    for case in CASES {
        let (text, code) = observed(case);
        if code != case.exit {
            bad.push(format!("{}: exit {code}, expected {}", case.name, case.exit));
        }
        let path = golden_path(case.name);
        if bless {
            std::fs::write(&path, &text).expect("write golden file");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == text => {}
            Ok(expected) => bad.push(format!("{}: got {text:?}, expected {expected:?}", case.name)),
            Err(e) => bad.push(format!("{}: {}: {e}", case.name, path.display())),
        }
    }
    bad
}

/// For every table command: the JSON output re-rendered as text equals the text
/// output, and re-serialized equals the JSON output.
pub fn round_trip_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    let table_commands: &[&[&str]] = &[
        &["hodge", "p2_cubic.json"],
        &["hodge", "blowup_in_p2xp1.json"],
        &["hodge", "quadric_graph_in_p3xp1.json"],
        &["hodge-torus", "torus_line.json"],
        &["hodge-torus", "torus_cubic.json"],
        &["wps", "hodge", "quintic.json"],
        &["wps", "hodge", "k3_2_3.json"],
    ];
    for args in table_commands {
        let (text, _, _) = run_args(args);
        let mut with_json = vec!["--json"];
        with_json.extend_from_slice(args);
        let (json, _, _) = run_args(&with_json);
        match table_from_json(&json) {
            Ok(t) => {
                if t.to_string() != text {
                    bad.push(format!("{args:?}: text rendering differs"));
                }
                let again = serde_json::to_string(&TableOutput::from(&t)).expect("serializable") + "\n";
                if again != json {
                    bad.push(format!("{args:?}: JSON not byte-stable: {again:?} vs {json:?}"));
                }
            }
            Err(e) => bad.push(format!("{args:?}: {}", e.message)),
        }
    }
    bad
}
