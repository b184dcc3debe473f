use std::fs;
use std::process::{Command, Output};

use defcyc_core::group::{make_dihedral, write_cay};

fn defcyc(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_defcyc"));
    cmd.args(args).env_remove("DEFCYC_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_examples() {
    let o = defcyc(&["analyze", "Z6"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("logically cyclic: yes"));
    assert!(text.contains("logical generators: {1, 2, 4, 5}"));
    assert!(text.contains("|Aut|: 2\n"));

    let text = stdout(&defcyc(&["analyze", "D8"], &[]));
    assert!(text.contains("logically cyclic: no"));
    assert!(text.contains("|Aut|: 8\n"));

    assert!(stdout(&defcyc(&["analyze", "Z2xZ4"], &[])).contains("|Aut|: 8\n"));
}

#[test]
fn analyze_reads_cay_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d5.cay");
    fs::write(&path, write_cay(&make_dihedral(5).unwrap(), true)).unwrap();
    let o = defcyc(&["analyze", path.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|Aut|: 20\n"));

    let bad = dir.path().join("bad.cay");
    fs::write(&bad, "2\n0 1\n1 x\n").unwrap();
    let o = defcyc(&["analyze", bad.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn verify_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o1 = defcyc(&["verify", "thm2-1", "--json", a.to_str().unwrap()], &[]);
    let o2 = defcyc(&["verify", "thm2-1", "--jobs", "4", "--json", b.to_str().unwrap()], &[]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o1.stdout, o2.stdout);
    let (ja, jb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["suite"], "thm2-1");
    assert_eq!(v["cases"].as_array().unwrap().len(), 28);
    assert_eq!(v["summary"]["pass"], 28);
    assert_eq!(v["cases"][0]["name"], "Z1");
    assert_eq!(v["cases"][0]["millis"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(defcyc(&["verify", "no-such-suite"], &[]).status.code(), Some(2));
    assert_eq!(defcyc(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(defcyc(&["verify", "rationals"], &[]).status.code(), Some(1));
    let o = defcyc(&["verify", "thm2-1", "--max-order", "8"], &[("DEFCYC_BUDGET", "3")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("skip"));
    assert_eq!(defcyc(&["analyze", "Z4"], &[("DEFCYC_BUDGET", "lots")]).status.code(), Some(2));
    assert_eq!(defcyc(&["analyze", "S4"], &[("DEFCYC_BUDGET", "5")]).status.code(), Some(3));
}

#[test]
fn formula_examples() {
    let o = defcyc(&["formula", "Z3", "--params", "1", "--target", "2", "--emit"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("exists x1 x2 x3 ("), "{text}");
    assert!(text.contains("where a1 = 1"));

    let text = stdout(&defcyc(&["formula", "Z3", "--params", "1", "--target", "2", "--check"], &[]));
    assert_eq!(text, "defines: yes\nsolutions: {2}\n");

    let text = stdout(&defcyc(&["formula", "Z2xZ2", "--target", "(1,1)", "--check"], &[]));
    assert!(text.starts_with("defines: no\n"));
    assert_eq!(text.matches('(').count(), 3, "{text}");

    assert_eq!(defcyc(&["formula", "Z13", "--target", "1", "--check"], &[]).status.code(), Some(3));
}

#[test]
fn aut_lists_small_groups() {
    let text = stdout(&defcyc(&["aut", "D8"], &[]));
    assert!(text.starts_with("|Aut(D8)| = 8\n"));
    assert_eq!(text.lines().count(), 9);
    assert!(stdout(&defcyc(&["aut", "Z2xZ2xZ2xZ2xZ2"], &[])).contains("not listed"));
}

#[test]
fn snf_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    fs::write(&path, "# example\n2 4 4\n-6 6 12\n10 -4 -16\n").unwrap();
    let o = defcyc(&["snf", path.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("invariants: 2 6 12\nrank: 3\n"));
    fs::write(&path, "1 2\n3\n").unwrap();
    assert_eq!(defcyc(&["snf", path.to_str().unwrap()], &[]).status.code(), Some(2));
}
