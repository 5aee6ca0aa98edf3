use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapsoft")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_of_a_catalog_graph() {
    let o = run(&["spectrum", "6.35"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("3 + sqrt(5)"));
    assert!(s.contains("5.2360679775"));
}

#[test]
fn spectrum_from_a_file_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("path4.txt");
    std::fs::write(&p, "4\n1 2\n2 3\n3 4\n").unwrap();
    let o = run(&["spectrum", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 4);
}

#[test]
fn global_soft_node_script() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("s.txt");
    std::fs::File::create(&script).unwrap().write_all(b"ADDSOFT\n").unwrap();
    let o = run(&["transform", "5.1", script.to_str().unwrap(), "--lambda", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["verified"], true);
    assert_eq!(v[0]["output"]["n"], 3);
}

#[test]
fn soft_nodes_of_an_irrational_eigenvalue() {
    let o = run(&["soft", "5.16", "--lambda", "3-sqrt2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("soft nodes: 3"));
}

#[test]
fn enumerate_and_family() {
    let o = run(&["enumerate", "--n", "4"]);
    assert!(stdout(&o).starts_with("6 connected classes on 4 vertices"));
    let o = run(&["family", "--lambda", "2", "--n-max", "5", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5.7"));
}

#[test]
fn tables_match_the_committed_ledger() {
    let o = run(&["verify-tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ledger diff: 0 lines"));
}

#[test]
fn subgraph_of_the_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("ladder.txt");
    std::fs::write(&p, "6\n1 2\n2 3\n4 5\n5 6\n1 4\n2 5\n3 6\n").unwrap();
    let o = run(&["subgraph", p.to_str().unwrap(), "--sub", "1,2,3", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("case ii-link"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "9.99"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "6.103"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--n", "4", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn reproduction_report_is_stable_and_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let oa = run(&["reproduce-paper", "--threads", "2", "--output", a.to_str().unwrap()]);
    let ob = run(&["reproduce-paper", "--threads", "2", "--output", b.to_str().unwrap()]);
    // Two criteria are red on the bundled data.
    assert_eq!(oa.status.code(), Some(1));
    assert_eq!(ob.status.code(), Some(1));
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion ")).count(), 9);
    assert!(text.contains("7/9 criteria pass"));
}
