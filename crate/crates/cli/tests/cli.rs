use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn pcgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcgroup")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_group(name: &str, spec: &str) -> String {
    let out = pcgroup(&["build", "--group", spec]);
    assert_eq!(code(&out), 0);
    let path = tmp(name);
    fs::write(&path, stdout(&out)).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn collect_from_a_group_file() {
    let d4 = write_group("d4.pcp", "d4");
    let out = pcgroup(&["collect", "--group", &d4, "--word", "g2 g1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1,3\n");
    let out = pcgroup(&["collect", "--group", "heisenberg", "--word", "g2 g1"]);
    assert_eq!(stdout(&out), "1,1,1\n");
}

#[test]
fn plain_presentation_files_load() {
    let path = tmp("plain.pcp");
    fs::write(&path, "pcp v1\n# D4 without embedding\ngens 2\norder 1 2\norder 2 4\nconj 2 1 = g2^3\n").unwrap();
    let out = pcgroup(&["collect", "--group", path.to_str().unwrap(), "--word", "g1 g2^3 g1"]);
    assert_eq!(stdout(&out), "0,1\n");
}

#[test]
fn consistency_exit_codes() {
    let h = write_group("heisenberg.pcp", "heisenberg");
    assert_eq!(code(&pcgroup(&["consistency", "--group", &h])), 0);
    let bad = tmp("bad.pcp");
    fs::write(&bad, "pcp v1\ngens 2\norder 1 2\nconj 2 1 = g2^2\nconj 2 -1 = g2^2\n").unwrap();
    let out = pcgroup(&["consistency", "--group", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("inconsistent\n"));
}

#[test]
fn hirsch_lengths() {
    for (g, h) in [("d4", "0"), ("heisenberg", "3"), ("cyclotomic:3", "2"), ("cyclotomic:11", "14")] {
        let out = pcgroup(&["hirsch", "--group", g]);
        assert_eq!(stdout(&out).trim(), h, "{g}");
    }
}

#[test]
fn conjugacy_exit_codes() {
    let out = pcgroup(&["conjugacy", "--group", "d4", "--r", "0,1", "--s", "0,3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("conjugator 1,0\nword x1\n"));
    assert_eq!(code(&pcgroup(&["conjugacy", "--group", "d4", "--r", "0,1", "--s", "1,0"])), 1);
    let out = pcgroup(&["conjugacy", "--group", "heisenberg", "--r", "0,1,0", "--s", "0,1,1", "--solver", "bounded:1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("conjugator 1,0,0\n"));
    let out = pcgroup(&["conjugacy", "--group", "heisenberg", "--r", "0,1,0", "--s", "0,0,1", "--solver", "bounded:3"]);
    assert_eq!(code(&out), 1);
    let multi = pcgroup(&["conjugacy", "--group", "d4", "--r", "0,1;1,0", "--s", "0,3;1,2"]);
    assert_eq!(code(&multi), 0);
}

#[test]
fn kex_and_attack_round_trip() {
    let t = tmp("aag.txt");
    let out = pcgroup(&[
        "kex",
        "aag",
        "--group",
        "dihedral:1024",
        "--sgens",
        "1,5;0,7",
        "--tgens",
        "1,2;0,3",
        "--seed",
        "9",
        "--output",
        t.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&t).unwrap();
    assert!(text.starts_with("kex v1 aag\ngroup dihedral:1024\n"));
    let out = pcgroup(&["attack", "--transcript", t.to_str().unwrap(), "--solver", "finite"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("matches keyA\n"));

    let n = tmp("ncdh.txt");
    let out = pcgroup(&[
        "kex",
        "ncdh",
        "--group",
        "product:d4,d4",
        "--u",
        "1,0,1,0",
        "--sgens",
        "0,1,0,0",
        "--tgens",
        "0,0,0,1",
        "--secret-a",
        "x1",
        "--secret-b",
        "x1",
        "--output",
        n.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(&n).unwrap().contains("keyA 1,2,1,2\n"));
    assert_eq!(code(&pcgroup(&["attack", "--transcript", n.to_str().unwrap()])), 0);
}

#[test]
fn attack_failure_is_a_domain_error() {
    // Commit not reachable from the published subgroup: the finite search
    // proves there is no conjugator in S.
    let t = tmp("forged.txt");
    fs::write(&t, "kex v1 aag\ngroup d4\nsgens 0,2\ntgens 1,0\ncommitA 1,1\ncommitB 0,2\n").unwrap();
    assert_eq!(code(&pcgroup(&["attack", "--transcript", t.to_str().unwrap()])), 1);
}

#[test]
fn non_commuting_ncdh_is_rejected() {
    let out = pcgroup(&[
        "kex",
        "ncdh",
        "--group",
        "product:d4,d4",
        "--u",
        "1,0,1,0",
        "--sgens",
        "0,1,0,0",
        "--tgens",
        "1,0,0,0",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("do not commute"));
}

#[test]
fn classic_dh() {
    let out = pcgroup(&["kex", "dh", "--p", "23", "--g", "5", "--x", "6", "--y", "15"]);
    assert_eq!(stdout(&out), "X 8\nY 19\nk 2\n");
    assert_eq!(code(&pcgroup(&["kex", "dh", "--p", "21", "--g", "5", "--x", "6", "--y", "15"])), 2);
}

#[test]
fn bench_table() {
    let out = pcgroup(&[
        "bench",
        "--suite",
        "cyclotomic",
        "--rs",
        "3,4",
        "--trials",
        "3",
        "--timeout-ms",
        "60000",
        "--seed",
        "42",
        "--format",
        "markdown",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("| group | r | h | coll (ms) | conj (ms) |\n"));
    assert!(text.contains("| cyclotomic:3 | 3 | 2 |"));
    let csv = pcgroup(&["bench", "--group", "d4", "--solver", "finite", "--trials", "2", "--format", "csv"]);
    assert_eq!(code(&csv), 0);
    assert!(stdout(&csv).starts_with("group,r,h,coll_ms,conj_ms\nd4,-,0,"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["collect", "--group", "d4"],
        &["collect", "--group", "d4", "--word", "x1"],
        &["collect", "--group", "d4", "--word", "g3"],
        &["collect", "--group", "no-such-group", "--word", "g1"],
        &["collect", "--group", "dihedral:2", "--word", "g1"],
        &["conjugacy", "--group", "d4", "--r", "0,1", "--s", "0,1,0"],
        &["conjugacy", "--group", "d4", "--r", "0,1;1,0", "--s", "0,1"],
        &["conjugacy", "--group", "heisenberg", "--r", "0,1,0", "--s", "0,1,0", "--solver", "finite"],
        &["conjugacy", "--group", "d4", "--r", "0,1", "--s", "0,1", "--solver", "greedy"],
        &["attack", "--transcript", "/nonexistent/transcript"],
        &["bench", "--suite", "cyclotomic", "--rs", "5"],
        &["bench", "--group", "d4", "--format", "html"],
        &["bench", "--group", "d4", "--trials", "0"],
        &["bench"],
    ];
    for args in cases {
        assert_eq!(code(&pcgroup(args)), 2, "{args:?}");
    }
    let bad = tmp("bad-transcript.txt");
    fs::write(&bad, "kex v1 aag\ngroup d4\n").unwrap();
    assert_eq!(code(&pcgroup(&["attack", "--transcript", bad.to_str().unwrap()])), 2);
}
