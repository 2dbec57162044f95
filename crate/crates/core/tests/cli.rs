use std::io::Write;
use std::process::{Command, Output, Stdio};

use tjm_core::cli::{Payload, Report};

fn tjm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tjm")).args(args).output().unwrap()
}

fn tjm_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tjm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Vec<Report> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn dual_of_full_segment() {
    let out = tjm(&["dual", "{1[-3/2..3/2]}"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "{[-3/2..3/2]} -> {[3/2], [1/2], [-1/2], [-3/2]}");
}

#[test]
fn conjecture_for_tau() {
    let reps = json(&tjm(&[
        "--json",
        "conjecture",
        "--n",
        "2",
        "L{1[1/2..3/2],1[-3/2..-1/2]}",
    ]));
    let Payload::Conjecture { report, .. } = &reps[0].result else {
        panic!("wrong payload");
    };
    assert!(!report.predicted_tjm_zero);
    assert_eq!(report.profile.to_string(), "{1:1, 2:1}");
}

#[test]
fn table_xi_json_has_provenance() {
    let reps = json(&tjm(&["tjm-table", "xi", "--json"]));
    let Payload::Table { table } = &reps[0].result else {
        panic!("wrong payload");
    };
    assert_eq!(table.rows.len(), 8);
    assert!(table.rows.iter().all(|r| !r.provenance.is_empty()));
}

#[test]
fn tjm_two_characters() {
    let out = tjm(&["tjm", "--n", "2", "--r", "1", "char(1,chi) x char(3,mu)"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("chi x char(3,mu) (n=2, r=1): zero"));
}

#[test]
fn batch_lines_from_stdin() {
    let out = tjm_stdin(
        &["--json", "product-irred"],
        "Z{[0..1]} x Z{[1..2]}\n# comment\nZ{[0..1]} x Z{[3..4]}\n",
    );
    let reps = json(&out);
    let verdicts: Vec<Option<bool>> = reps
        .iter()
        .map(|r| match &r.result {
            Payload::ProductIrred { irreducible, .. } => *irreducible,
            _ => panic!("wrong payload"),
        })
        .collect();
    assert_eq!(verdicts, [Some(false), Some(true)]);
}

#[test]
fn exit_codes() {
    assert_eq!(tjm(&["dual", "{[0..1"]).status.code(), Some(2));
    assert_eq!(
        tjm(&["tjm", "--n", "3", "char(1,chi) x char(3,mu)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tjm(&["oracle", "tjm-dim", "--n", "2", "--r", "2", "--p", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tjm(&["--help"]).status.code(), Some(0));
    assert_eq!(
        tjm(&["oracle", "tjm-dim", "--n", "2", "--r", "2", "--levi", "st,triv"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn cosets_matrices() {
    let out = tjm(&["cosets", "--n", "2", "--r", "2", "--matrices"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("w_{0,0}  w=[3 4 1 2]"), "{text}");
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn oracle_cosets_json() {
    let reps = json(&tjm(&["--json", "oracle", "cosets", "--n", "2", "--r", "3"]));
    let Payload::OracleCosets { report } = &reps[0].result else {
        panic!("wrong payload");
    };
    assert!(report.coverage_ok());
    assert_eq!(report.cells.len(), 2);
}
