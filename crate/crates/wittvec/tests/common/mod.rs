//! Shared CLI invocation list for the golden-transcript and determinism
//! suites. Each invocation is (name, argv); fixture paths are resolved
//! relative to the test directory.

use std::path::PathBuf;
use std::process::Command;

pub fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_str().unwrap().to_string()
}

pub fn invocations() -> Vec<(&'static str, Vec<String>)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let f = fixture;
    vec![
        (
            "witt-ghost-teich2",
            s(&["witt", "ghost", "--problem", &f("integers.wp"), "--trunc", "1,2,3", "2,0,0"]),
        ),
        (
            "witt-add-one-one",
            s(&["witt", "add", "--problem", &f("integers.wp"), "--trunc", "1,2", "1,0", "1,0"]),
        ),
        (
            "witt-mul-v2-v2",
            s(&["witt", "mul", "--problem", &f("integers.wp"), "--trunc", "1,2", "0,1", "0,1"]),
        ),
        (
            "witt-from-ghost",
            s(&["witt", "from-ghost", "--problem", &f("integers.wp"), "--trunc", "1,2,3", "2,4,8"]),
        ),
        (
            "witt-teichmuller-z9",
            s(&["witt", "teichmuller", "--problem", &f("z9.wp"), "--trunc", "1,3", "2"]),
        ),
        (
            "witt-frobenius",
            s(&["witt", "frobenius", "--problem", &f("integers.wp"), "--trunc", "1,2,3,4,5,6", "--k", "2", "3,1,0,2,0,1"]),
        ),
        (
            "witt-verschiebung",
            s(&["witt", "verschiebung", "--problem", &f("integers.wp"), "--trunc", "1,2,3", "--k", "2", "--out-trunc", "1,2,3,4,6", "5,1,2"]),
        ),
        (
            "witt-phi-s-ghost-symbolic",
            s(&["witt", "phi-s", "--problem", &f("ghost6.wp"), "--trunc", "1,2,3,4,5,6", "--ghost", "g1,g2,g3,g4,g5,g6"]),
        ),
        (
            "witt-phi-s-components",
            s(&["witt", "phi-s", "--problem", &f("zs2.wp"), "--trunc", "1,2,3,4", "2,0,0,0"]),
        ),
        (
            "witt-phi-bar",
            s(&["witt", "phi-bar", "--problem", &f("zs2.wp"), "--bound", "5", "3,1,0"]),
        ),
        (
            "witt-to-lambda",
            s(&["witt", "to-lambda", "--problem", &f("integers.wp"), "1,2,3"]),
        ),
        (
            "lambda-adams",
            s(&["lambda", "adams", "--problem", &f("z9.wp"), "--n", "6", "[2]"]),
        ),
        (
            "lambda-tau",
            s(&["lambda", "tau", "--problem", &f("z9.wp"), "--k", "3", "[2]"]),
        ),
        (
            "lambda-op-dual",
            s(&["lambda", "op", "--problem", &f("poly3.wp"), "--n", "2", "--check-dual", "X"]),
        ),
        (
            "lambda-op-monoid",
            s(&["lambda", "op", "--problem", &f("z9.wp"), "--n", "2", "x"]),
        ),
        (
            "lambda-series-monoid",
            s(&["lambda", "series", "--problem", &f("z9.wp"), "--precision", "3", "[2]"]),
        ),
        (
            "lambda-series-poly",
            s(&["lambda", "series", "--problem", &f("poly3.wp"), "--precision", "6", "X"]),
        ),
        (
            "lambda-dwork-3",
            s(&["lambda", "dwork", "--prime", "3", "--degree", "5"]),
        ),
        (
            "lambda-dwork-5-json",
            s(&["--json", "lambda", "dwork", "--prime", "5", "--degree", "5"]),
        ),
        (
            "kernel-f2-all",
            s(&["kernel", "--problem", &f("f2.wp"), "--method", "all", "x"]),
        ),
        (
            "kernel-f2-lambda-bound2",
            s(&["kernel", "--problem", &f("f2.wp"), "--method", "lambda", "--bound", "2", "x"]),
        ),
        (
            "kernel-z9-direct",
            s(&["kernel", "--problem", &f("z9.wp"), "--method", "direct", "y"]),
        ),
        (
            "kernel-zs-ghost",
            s(&["kernel", "--problem", &f("zs2.wp"), "--method", "ghost", "x"]),
        ),
        (
            "kernel-zs-all-relation",
            s(&["kernel", "--problem", &f("zs2.wp"), "--method", "all", "[6] - [2]*[3]"]),
        ),
        (
            "witt-ghost-json",
            s(&["--json", "witt", "ghost", "--problem", &f("integers.wp"), "--trunc", "1,2,3", "2,0,0"]),
        ),
        (
            "kernel-z9-lambda-json",
            s(&["--json", "kernel", "--problem", &f("z9.wp"), "--method", "lambda", "x"]),
        ),
        (
            "witt-from-ghost-nonintegral",
            s(&["witt", "from-ghost", "--problem", &f("integers.wp"), "--trunc", "1,2", "0,1"]),
        ),
    ]
}

/// Runs the binary and formats a transcript: exit code, stdout, stderr.
pub fn transcript(args: &[String]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_wittvec"))
        .args(args)
        .output()
        .expect("binary runs");
    format!(
        "exit: {}\n--- stdout ---\n{}--- stderr ---\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    )
}
