//! `--help` output compared against checked-in files. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p fanspec-cli --test help`.

use std::path::PathBuf;
use std::process::Command;

const SUBCOMMANDS: &[&str] = &[
    "construct",
    "lambda",
    "qlambda",
    "charpoly",
    "check",
    "turannum",
    "brute",
    "brute-f",
    "family",
    "verify",
    "perron",
];

fn golden(name: &str, args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_fanspec")).args(args).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(text, expected, "{name} help changed; rerun with UPDATE_GOLDEN=1");
}

#[test]
fn top_level_help() {
    golden("fanspec", &["--help"]);
}

#[test]
fn subcommand_help() {
    for sub in SUBCOMMANDS {
        golden(sub, &[sub, "--help"]);
    }
}
