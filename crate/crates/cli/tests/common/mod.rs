#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.quiver"))
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

/// Runs the binary on a fixture; returns (exit code, stdout).
pub fn run(fixture_name: &str, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tiltbench"))
        .arg(fixture(fixture_name))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

pub fn json(fixture_name: &str, args: &[&str]) -> (i32, serde_json::Value) {
    let (code, text) = run(fixture_name, args);
    (code, serde_json::from_str(&text).expect("json report"))
}

/// Commands recorded in the golden transcript of each fixture.
pub fn transcript_commands(fixture_name: &str) -> Vec<Vec<&'static str>> {
    let list: &[&[&str]] = match fixture_name {
        "a2" => &[
            &["check-tilting", "--T", "P1,S1", "--n", "1"],
            &["check-tilting", "--T", "S1,S2", "--n", "1"],
            &["check-tilting", "--T", "P1,P2", "--n", "0"],
            &["perp", "--T", "P1,S1", "--n", "1"],
            &["enumerate", "--n-max", "1"],
            &["mutate", "--T", "P1,S1", "--M", "P1"],
            &["special-tilt", "--M", "P1", "--n", "1"],
            &["endo", "--M", "S1", "--Q", "P1"],
            &["miyashita-verify", "--T", "P1,S1"],
            &["gldim"],
            &["resolve", "--M", "S1"],
            &["--structure", "relative", "--generators", "P1,P2", "enumerate", "--n-max", "1"],
            &["--structure", "relative", "--generators", "P1,P2", "structure-check"],
        ],
        "a3" => &[
            &["check-tilting", "--T", "P1,M12,S1", "--n", "1"],
            &["enumerate", "--n-max", "1", "--bound", "1,1,1"],
            &["perp", "--T", "P1,P2,P3", "--n", "0"],
            &["miyashita-verify", "--T", "P1,M12,S1"],
            &["gldim"],
            &["resolve", "--M", "S1"],
            &["--structure", "relative", "--generators", "S2", "structure-check"],
        ],
        "dual" => &[
            &["enumerate", "--n-max", "1"],
            &["check-tilting", "--T", "S", "--n", "1"],
            &["gldim"],
            &["resolve", "--M", "S"],
            &["miyashita-verify", "--T", "P1"],
            &["--structure", "relative", "--generators", "S", "enumerate", "--n-max", "1"],
            &["--structure", "relative", "--generators", "S", "gldim"],
            &["--structure", "relative", "--generators", "S", "structure-check"],
        ],
        _ => &[],
    };
    list.iter().map(|c| c.to_vec()).collect()
}

/// The transcript text: each command line, its report and exit code.
pub fn transcript(fixture_name: &str, extra: &[&str]) -> String {
    let mut out = String::new();
    for cmd in transcript_commands(fixture_name) {
        let mut args = cmd.clone();
        args.extend_from_slice(extra);
        let (code, text) = run(fixture_name, &args);
        out.push_str(&format!("$ tiltbench {fixture_name}.quiver {}\n", cmd.join(" ")));
        out.push_str(&text);
        out.push_str(&format!("exit {code}\n"));
    }
    out
}
