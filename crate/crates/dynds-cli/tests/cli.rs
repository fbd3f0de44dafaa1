use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dynds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynds")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SEQUENCE: &str = "# sample\nproblem sequence-mode\ncapacity 8\nSINS 1 4\nSINS 2 7\nSINS 3 4\nSQRY 1 3\nSDEL 1\nSQRY 1 2\n";

#[test]
fn empty_trace_prints_nothing() {
    let dir = TempDir::new().unwrap();
    for text in ["", "# only a comment\n\n", "problem range-mode\n"] {
        let o = dynds(&["solve", s(&file(&dir, "t", text))]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(stdout(&o), "");
    }
}

#[test]
fn sequence_trace_prints_mode_per_query() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "t", SEQUENCE);
    let oracle = dynds(&["solve", s(&p), "--structure", "oracle"]);
    let real = dynds(&["solve", s(&p), "--structure", "real"]);
    assert_eq!(code(&oracle), 0);
    assert_eq!(stdout(&oracle), "(4,2)\n(4,1)\n");
    assert_eq!(stdout(&oracle), stdout(&real));
}

#[test]
fn parse_error_exits_2_with_line() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "t", "problem sequence-mode\n\nSINS 1 2\nSQRY 1\n");
    let o = dynds(&["solve", s(&p)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = dynds(&["solve", s(&file(&dir, "u", "problem nope\n"))]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn semantic_error_exits_3_with_op_index() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "t", "problem sequence-mode\nSINS 1 5\nSQRY 1 1\nSDEL 4\nSQRY 1 1\n");
    for structure in ["oracle", "real"] {
        let o = dynds(&["solve", s(&p), "--structure", structure]);
        assert_eq!(code(&o), 3);
        assert_eq!(stdout(&o), "(5,1)\n");
        assert!(stderr(&o).contains("op 2"), "{}", stderr(&o));
    }
    let p = file(&dir, "k", "problem klee\nside 1\nKINS 1 1\nKDEL 2 2\nKVOL\n");
    let o = dynds(&["solve", s(&p)]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("op 1"), "{}", stderr(&o));
}

#[test]
fn missing_header_field_exits_2() {
    let dir = TempDir::new().unwrap();
    let o = dynds(&["solve", s(&file(&dir, "t", "problem langerman\nLQRY\n"))]);
    assert_eq!(code(&o), 2);
    let o = dynds(&["solve", "/nonexistent/trace"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn every_problem_solves_a_small_trace() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("problem range-mode\ndim 2\nINS 1 1 3\nINS 2 2 3\nINS 2 2 4\nQRY 0 5 0 5\nQRY 3 4 3 4\n", "(3,2)\nnone\n"),
        ("problem common-colors\narray 1 2 1 3\nCON 1\nCON 3\nCQRY 1 2 3 4\nCOFF 1\nCQRY 1 2 3 4\n", "1\n0\n"),
        ("problem color-count\nPINS 1 1 5\nPINS 2 2 6\nPQRY 0 3 0 3\nPDEL 1 1 5\nPQRY 0 3 0 3\n", "2\n1\n"),
        ("problem klee\nside 2\nKINS 2 2\nKINS 3 3\nKVOL\nKDEL 2 2\nKVOL\n", "7\n4\n"),
        ("problem klee\ndim 1\nscale 2\nside 1\nKINS 1\nKVOL\n", "1/2\n"),
        ("problem halfspace\ndim 1\nHMIN\nHPIN 3\nHINS 1 4 0\nHINS -1 -2 1\nHMIN\nHPIN 9\nHMIN\n", "none\n2\n1\n"),
        ("problem skyline\nSOINS 1 1 1 3\nSOINS 2 0 0 9\nSOQRY\nSODEL\nSOQRY\n", "2\n1\n"),
        ("problem langerman\ncapacity 3\nLSET 1 1\nLSET 2 -1\nLQRY\nLSET 2 0\nLQRY\n", "true\nfalse\n"),
        ("problem erickson\ncapacity 2\nEINC 1 2\nEINC 2 2\nEMAX\n", "2\n"),
        ("problem hyperclique\ncapacity 3\nsource 0\nHEINS 0 1\nHEINS 1 2\nHSQ\nHEINS 2 0\nHSQ\n", "false\ntrue\n"),
    ];
    for (i, (text, want)) in cases.iter().enumerate() {
        let p = file(&dir, &format!("t{i}"), text);
        for structure in ["oracle", "real"] {
            let o = dynds(&["solve", s(&p), "--structure", structure]);
            assert_eq!(code(&o), 0, "{text}: {}", stderr(&o));
            assert_eq!(stdout(&o), *want, "{structure} on {text}");
        }
    }
}

const PLANTED: &str = "4 1 1 1 1\n1 1 2 1\n1 1 3 1\n1 1 4 1\n2 1 3 1\n2 1 4 1\n3 1 4 1\n";

#[test]
fn reduce_planted_clique_through_subconn() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "g", PLANTED);
    let o = dynds(&["reduce", s(&p), "--reduction", "subconn", "--adapter", "real"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("true\n"));
    assert!(out.contains("updates="));
}

#[test]
fn reduce_empty_tuple_set_is_all_false() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "o", "2 3 0 2\n1 2\n3\n-\n1 2 3\n");
    let o = dynds(&["reduce", s(&p), "--reduction", "halfspace2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("false\nfalse\nupdates="));
}

#[test]
fn reduce_adapters_agree_on_answers() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "g", "4 2 2 2 2\n1 1 2 1\n1 1 3 2\n1 2 4 1\n2 1 3 2\n2 1 4 1\n3 2 4 1\n1 1 4 1\n");
    for red in ["mode", "subconn", "2pattern", "color", "streach", "dyn-dmode1"] {
        let a = dynds(&["reduce", s(&p), "--reduction", red, "--adapter", "oracle"]);
        let b = dynds(&["reduce", s(&p), "--reduction", red, "--adapter", "real"]);
        assert_eq!(code(&a), 0, "{red}: {}", stderr(&a));
        assert_eq!(stdout(&a).lines().next(), stdout(&b).lines().next(), "{red}");
    }
}

#[test]
fn reduce_arity_mismatch_exits_2() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "g", PLANTED);
    let o = dynds(&["reduce", s(&p), "--reduction", "batch-dmode1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("arity"));
    let o = dynds(&["reduce", s(&file(&dir, "o", "3 2 0 0\n")), "--reduction", "skyline2"]);
    assert_eq!(code(&o), 2);
    let o = dynds(&["reduce", s(&p), "--reduction", "minority", "--adapter", "real"]);
    assert_eq!(code(&o), 2);
    let o = dynds(&["reduce", s(&file(&dir, "bad", "4 1 1 1\n")), "--reduction", "mode"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn crosscheck_exit_status_and_determinism() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let o = dynds(&["crosscheck", "--seed", "7", "--instances", "20", "--out", s(&a)]);
    assert_eq!(code(&o), 0);
    dynds(&["crosscheck", "--seed", "7", "--instances", "20", "--out", s(&b)]);
    let ra = std::fs::read(&a).unwrap();
    assert_eq!(ra, std::fs::read(&b).unwrap());
    assert!(String::from_utf8(ra).unwrap().ends_with("total mismatches=0\n"));

    let f = dir.path().join("f");
    let o = dynds(&["crosscheck", "--scope", "fault", "--instances", "20", "--out", s(&f)]);
    assert_eq!(code(&o), 1);
    assert!(std::fs::read_to_string(&f).unwrap().contains("mismatch subconn fault"));
}

#[test]
fn bench_csv_and_size_check() {
    let o = dynds(&["bench", "--structure", "oracle-scan", "--sizes", "200,400,800", "--no-time"]);
    assert_eq!(code(&o), 2);
    let args = ["bench", "--structure", "oracle-scan", "--sizes", "243,729,2187,6561", "--no-time", "--seed", "3"];
    let o = dynds(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "n,ops,visits,ns,visits_per_op");
    assert_eq!(lines.len(), 7);
    let trailer = lines[6];
    assert!(trailer.starts_with("fit_exponent="), "{trailer}");
    assert!(trailer.contains("target=1.0000 tol=0.20 pass=true"), "{trailer}");
    assert_eq!(out, stdout(&dynds(&args)));
}

#[test]
fn unknown_ids_are_usage_errors() {
    assert_eq!(code(&dynds(&["bench", "--structure", "nope"])), 2);
    assert_eq!(code(&dynds(&["crosscheck", "--scope", "nope"])), 2);
    assert_eq!(code(&dynds(&["solve", "x", "--structure", "nope"])), 2);
}
