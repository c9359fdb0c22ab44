//! End-to-end checks of the `dice` binary: file round-trips, report formats,
//! and the 0/1/2 exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn dice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const THREE_CYCLE: &str = "tournament 3\n1 2\n2 3\n3 1\n";

#[test]
fn construct_writes_verified_partition() {
    let dir = tempdir().unwrap();
    let tfile = dir.path().join("cycle.txt");
    let pfile = dir.path().join("cycle.partition");
    write(&tfile, THREE_CYCLE);

    let out = dice(&[
        "construct",
        tfile.to_str().unwrap(),
        "-o",
        pfile.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let text = std::fs::read_to_string(&pfile).unwrap();
    assert_eq!(text, "partition 3 3\n1: 3 5 7\n2: 2 4 9\n3: 1 6 8\n");

    // what we wrote verifies against the input
    let out = dice(&["verify", pfile.to_str().unwrap(), tfile.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("match: true"));
}

#[test]
fn construct_flags() {
    let dir = tempdir().unwrap();
    let tfile = dir.path().join("t4.txt");
    // transitive order on 4 vertices
    write(&tfile, "tournament 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");

    let out = dice(&["construct", tfile.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("partition 4 9\n"));

    let out = dice(&[
        "construct",
        tfile.to_str().unwrap(),
        "--strong-decomposition",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("partition 4 1\n"));

    let out = dice(&["construct", tfile.to_str().unwrap(), "--order", "4,3,2,1"]);
    assert_eq!(code(&out), 0);

    let out = dice(&["construct", tfile.to_str().unwrap(), "--target-n", "11"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("partition 4 11\n"));

    // unreachable block size is a usage error
    let out = dice(&["construct", tfile.to_str().unwrap(), "--target-n", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_mismatch_and_parse_errors() {
    let dir = tempdir().unwrap();
    let tfile = dir.path().join("cycle.txt");
    let rfile = dir.path().join("reversed.txt");
    let pfile = dir.path().join("p.txt");
    write(&tfile, THREE_CYCLE);
    write(&rfile, "tournament 3\n2 1\n3 2\n1 3\n");
    write(&pfile, "partition 3 3\n1: 3 5 7\n2: 2 4 9\n3: 1 6 8\n");

    let out = dice(&["verify", pfile.to_str().unwrap(), rfile.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("match: false"));

    let out = dice(&[
        "verify",
        pfile.to_str().unwrap(),
        tfile.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"matches\": true"));

    let bad = dir.path().join("bad.txt");
    write(&bad, "partition 3 3\n1: 3 5 7\n");
    let out = dice(&["verify", bad.to_str().unwrap(), tfile.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let out = dice(&["verify", "/nonexistent", tfile.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn switch_apply_and_replay_round_trip() {
    let dir = tempdir().unwrap();
    let pfile = dir.path().join("p.txt");
    let log = dir.path().join("switches.log");
    let moved = dir.path().join("moved.txt");

    // start from a shipped example, apply the documented three switches
    let out = dice(&["example", "eq4.18", "-o", pfile.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = dice(&[
        "switch",
        pfile.to_str().unwrap(),
        "1",
        "10",
        "18",
        "--log",
        log.to_str().unwrap(),
        "-o",
        moved.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let expected = stdout(&dice(&["example", "type3"]));
    assert_eq!(std::fs::read_to_string(&moved).unwrap(), expected);

    // replaying the emitted log reproduces the same result
    let out = dice(&[
        "switch",
        pfile.to_str().unwrap(),
        "--replay",
        log.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), expected);
}

#[test]
fn stratify_command() {
    let dir = tempdir().unwrap();
    let pfile = dir.path().join("p.txt");
    write(&pfile, "partition 3 3\n1: 1 2 9\n2: 3 4 8\n3: 5 6 7\n");
    let log = dir.path().join("s.log");
    let out = dice(&[
        "stratify",
        pfile.to_str().unwrap(),
        "--log",
        log.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("partition 3 3\n"));
    assert!(std::fs::read_to_string(&log).unwrap().lines().count() > 0);

    // wrong block size is a usage error
    let two = dir.path().join("two.txt");
    write(&two, "partition 2 1\n1: 2\n2: 1\n");
    let out = dice(&["stratify", two.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn group_game_and_examples() {
    let out = dice(&["group-game", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "partition 5 3\n1: 5 8 11\n2: 4 7 13\n3: 3 6 15\n4: 2 10 12\n5: 1 9 14\n"
    );

    let out = dice(&["example", "--list"]);
    assert_eq!(code(&out), 0);
    for name in [
        "eq1.2", "eq1.3", "eq4.15", "eq4.16", "eq4.17", "eq4.18", "type3",
    ] {
        assert!(stdout(&out).contains(name));
    }

    let out = dice(&["example", "eq1.2", "--tournament"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("tournament 3\n"));

    let out = dice(&["example", "unknown-name"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_summary() {
    let out = dice(&["enumerate", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("attempted  64"));
    assert!(text.contains("verified   64"));
    assert!(text.contains("failed     0"));

    let out = dice(&[
        "enumerate",
        "6",
        "--random",
        "5",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"verified\": 5"));

    let out = dice(&["enumerate", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn stdin_input() {
    use std::io::Write as _;
    let mut child = Command::new(env!("CARGO_BIN_EXE_dice"))
        .args(["construct", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(THREE_CYCLE.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("partition 3 3\n"));
}
