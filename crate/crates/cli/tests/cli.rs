use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn pph(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn decide_from_file() {
    let dir = TempDir::new().unwrap();
    let yes = write(&dir, "yes.txt", "220\n202\n022\n");
    let no = write(&dir, "no.txt", "01\n10\n11\n22\n");
    let bad = write(&dir, "bad.txt", "01\n0x\n");

    let out = pph(&["decide", &yes, "--directed"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "YES\n");

    let out = pph(&["decide", &no, "--directed"], "");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NO gamete-pair 1 2\n");

    let out = pph(&["decide", &bad], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.txt");
    let out = pph(&["decide", missing.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_and_output_file() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("haps.txt");
    let out = pph(
        &["solve", "--directed", "-o", target.to_str().unwrap()],
        "220\n202\n022\n",
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(&target).unwrap(),
        "010\n100\n001\n100\n001\n010\n"
    );

    let out = pph(&["solve"], "00\n");
    assert_eq!(stdout(&out), "00\n00\n");

    let out = pph(&["solve", "--directed"], "01\n10\n11\n22\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("NO "));
}

#[test]
fn tree_of_planted_instance() {
    let dir = TempDir::new().unwrap();
    let genotypes = dir.path().join("g.txt");
    let haps = dir.path().join("h.txt");
    let out = pph(
        &[
            "gen",
            "--seed",
            "3",
            "--rows",
            "30",
            "--cols",
            "25",
            "-o",
            genotypes.to_str().unwrap(),
            "--haplotypes",
            haps.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&haps).unwrap().lines().count(), 60);

    let out = pph(&["tree", genotypes.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph phylogeny {") && dot.ends_with("}\n"));

    let out = pph(&["tree"], "2\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches(" -> ").count(), 1);
}

#[test]
fn crosscheck_reports() {
    let out = pph(&["crosscheck"], "220\n202\n022\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "AGREE YES\n");

    let planted = pph(&["gen", "--seed", "1", "--rows", "50", "--cols", "40"], "");
    let out = pph(&["crosscheck"], &stdout(&planted));
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert!(report.starts_with("AGREE YES routes-only"), "{report}");

    let out = pph(&["crosscheck", "--directed"], "222\n100\n010\n001\n");
    assert_eq!(stdout(&out), "AGREE NO\n");
}

#[test]
fn graphs_and_bipartite_route() {
    let out = pph(&["graphs", "--directed"], "220\n202\n022\n");
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.contains("label=\"1\""));

    let out = pph(
        &["decide", "--directed", "--route", "bipartite"],
        "222\n100\n010\n001\n",
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("NO odd-cycle "));
}

#[test]
fn output_is_deterministic() {
    let input = stdout(&pph(
        &["gen", "--seed", "9", "--rows", "40", "--cols", "40"],
        "",
    ));
    for cmd in ["solve", "tree", "graphs", "decide"] {
        let a = pph(&[cmd], &input);
        let b = pph(&[cmd], &input);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(a.status.code(), Some(0), "{cmd}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pph(&[], "").status.code(), Some(2));
    assert_eq!(pph(&["decide", "--cap", "3"], "").status.code(), Some(2));
    assert_eq!(pph(&["decide"], "").status.code(), Some(2));
}
