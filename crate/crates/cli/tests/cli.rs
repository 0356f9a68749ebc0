use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn lct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lct")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_named(dir: &Path, name: &str, file: &str) -> String {
    let path = dir.join(file);
    let out = lct(&["named", name, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    path.to_str().unwrap().to_string()
}

#[test]
fn lct_on_fig2_prints_value_and_transversal() {
    let dir = TempDir::new().unwrap();
    let g = write_named(dir.path(), "fig2", "fig2.txt");
    let out = lct(&["lct", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "lct 1\nL 8\ntransversal {v1}\n");

    let out = lct(&["--json", "lct", &g]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 1);
    assert_eq!(v["L"], 8);
    assert_eq!(v["transversal"], serde_json::json!([0]));
}

#[test]
fn treedec_check_on_figure_two() {
    let dir = TempDir::new().unwrap();
    let g = write_named(dir.path(), "fig2", "fig2.txt");
    let c = write_named(dir.path(), "fig2c", "fig2c.td");
    let out = lct(&["treedec", "check", &g, &c]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid, width 2, full for k=2\n");

    let b = write_named(dir.path(), "fig2b", "fig2b.td");
    let out = lct(&["treedec", "check", &g, &b]);
    assert_eq!(stdout(&out), "valid, width 3, not full\n");

    let full = dir.path().join("full.td");
    let out = lct(&["treedec", "full", &g, &b, "--k", "3", "--out", full.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = lct(&["treedec", "check", &g, full.to_str().unwrap()]);
    assert_eq!(stdout(&out), "valid, width 3, full for k=3\n");

    let out = lct(&["treedec", "width", &g, &c]);
    assert_eq!(stdout(&out), "2\n");
    let out = lct(&["treedec", "tw", &g]);
    assert!(stdout(&out).starts_with("treewidth 2\norder "));
}

#[test]
fn invalid_decomposition_fails_the_check() {
    let dir = TempDir::new().unwrap();
    let g = write_named(dir.path(), "fig2", "fig2.txt");
    let td = dir.path().join("bad.td");
    fs::write(&td, "td 2 3 8\nb 0 0 1 2\nb 1 3 4 5\ne 0 1\n").unwrap();
    let out = lct(&["treedec", "check", &g, td.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("invalid\n"));
}

#[test]
fn verify_thm2_batch_passes() {
    let out = lct(&["verify", "thm2", "--family", "chordal", "--count", "200", "--n", "12", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 200);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["check"], "thm2");
        assert_eq!(v["verdict"], "pass");
        let omega = v["omega"].as_u64().unwrap();
        assert!(v["lct"].as_u64().unwrap() <= 1.max(omega.saturating_sub(3)));
    }
    assert!(stderr(&out).contains("200 pass, 0 fail"));
}

#[test]
fn verify_single_graph_and_lemma5() {
    let dir = TempDir::new().unwrap();
    let g = write_named(dir.path(), "fig4", "fig4.txt");
    let out = lct(&["verify", "lemma6", "--input", &g]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = lct(&["verify", "thm1", "--input", &g, "--k", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = lct(&["verify", "thm1", "--input", &g, "--k", "3"]);
    assert_eq!(out.status.code(), Some(2), "treewidth 4 exceeds k = 3");

    let out = lct(&["verify", "lemma5", "--family", "ktree", "--k", "3", "--n", "9", "--count", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn size_limit_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let g = write_named(dir.path(), "k16", "k16.txt");
    let out = lct(&["treedec", "tw", &g]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("size limit"));
}

#[test]
fn parse_errors_exit_with_two_and_name_the_line() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("bad.txt");
    fs::write(&g, "3 2\n0 1\n1 1\n").unwrap();
    let out = lct(&["lct", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    assert_eq!(lct(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lct(&["named", "nope"]).status.code(), Some(2));
    assert_eq!(lct(&["lct", "/nonexistent/graph"]).status.code(), Some(2));
}

#[test]
fn chordal_commands() {
    let dir = TempDir::new().unwrap();
    let fig4 = write_named(dir.path(), "fig4", "fig4.txt");
    let out = lct(&["chordal", "check", &fig4]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("chordal\n"));
    assert_eq!(stdout(&lct(&["chordal", "omega", &fig4])), "5\n");

    let tree = dir.path().join("tree.td");
    let out = lct(&["chordal", "cliquetree", &fig4, "--out", tree.to_str().unwrap()]);
    assert!(out.status.success());
    let out = lct(&["treedec", "check", &fig4, tree.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let petersen = write_named(dir.path(), "petersen", "p.txt");
    let out = lct(&["chordal", "check", &petersen]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("not chordal\nchordless cycle "));
    assert_eq!(lct(&["chordal", "omega", &petersen]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_formats_round_trip() {
    let dir = TempDir::new().unwrap();
    let args = ["gen", "partial-ktree", "--n", "10", "--k", "3", "--p", "0.8", "--seed", "5"];
    let a = lct(&args);
    let b = lct(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let g = dir.path().join("g.g6");
    let td = dir.path().join("g.td");
    let mut with_files = args.to_vec();
    with_files.extend(["--out", g.to_str().unwrap(), "--td", td.to_str().unwrap()]);
    assert!(lct(&with_files).status.success());
    let g6 = fs::read_to_string(&g).unwrap();
    assert!(!g6.trim().contains(' '), "written as graph6: {g6}");
    let out = lct(&["treedec", "check", g.to_str().unwrap(), td.to_str().unwrap()]);
    assert_eq!(stdout(&out), "valid, width 3, full for k=3\n");

    let edgelist = lct(&["--format", "edgelist", "gen", "partial-ktree", "--n", "10", "--k", "3", "--p", "0.8", "--seed", "5"]);
    let el = dir.path().join("g.txt");
    fs::write(&el, &edgelist.stdout).unwrap();
    assert_eq!(stdout(&lct(&["lct", el.to_str().unwrap()])), stdout(&lct(&["lct", g.to_str().unwrap()])));

    let dot = lct(&["named", "fig1", "--format", "dot"]);
    assert_eq!(stdout(&dot).matches("[label=").count(), 9);
}

#[test]
fn cycles_listing() {
    let dir = TempDir::new().unwrap();
    let k4 = write_named(dir.path(), "k4", "k4.txt");
    let out = lct(&["cycles", &k4]);
    assert!(stdout(&out).starts_with("3 cycles\n"));
    let out = lct(&["cycles", &k4, "--all"]);
    assert!(stdout(&out).starts_with("7 cycles\n"));
    let out = lct(&["--json", "cycles", &k4]);
    let v: Vec<Vec<usize>> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![0, 2, 1, 3]]);
}
