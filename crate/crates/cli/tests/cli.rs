use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn catroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catroute"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PATH3: &str = "0 1\n1 2\n";
const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn construct_path3_writes_four_categories() {
    let f = Files::new();
    let g = f.write("p3.edges", PATH3);
    let cats = f.path("p3.cats");
    let out = catroute(&["construct", s(&g), "--out", s(&cats)]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(&cats).unwrap().lines().count(), 4);
    assert!(stdout(&out).contains("memdim: 2"));
    assert!(stdout(&out).contains("bound: 16"));
}

#[test]
fn construct_single_vertex() {
    let f = Files::new();
    let g = f.write("one.edges", "# n=1\n");
    let out = catroute(&["construct", s(&g)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn construct_then_check_round_trips() {
    let f = Files::new();
    let graphs = [
        ("p3", PATH3),
        ("k4", K4),
        ("c5", "0 1\n1 2\n2 3\n3 4\n4 0\n"),
        ("star", "0 1\n0 2\n0 3\n0 4\n0 5\n"),
        ("caterpillar", "0 1\n1 2\n2 3\n1 4\n1 5\n2 6\n2 7\n2 8\n"),
    ];
    for (name, text) in graphs {
        let g = f.write(&format!("{name}.edges"), text);
        for method in ["auto", "graph"] {
            let cats = f.path(&format!("{name}.{method}.cats"));
            let out = catroute(&["construct", s(&g), "--method", method, "--out", s(&cats)]);
            assert_eq!(code(&out), 0, "{name} {method}");
            let out = catroute(&["check", s(&g), s(&cats)]);
            assert_eq!(code(&out), 0, "{name} {method}: {}", stdout(&out));
            assert!(stdout(&out).contains("works=true"));
        }
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let f = Files::new();
    let g = f.write("k4.edges", K4);
    let a = f.path("a.cats");
    let b = f.path("b.cats");
    catroute(&["construct", s(&g), "--out", s(&a)]);
    catroute(&["construct", s(&g), "--out", s(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let args = [
        "bench", "--gen", "er,ws", "--n", "16", "--seeds", "2", "--seed", "5",
    ];
    assert_eq!(catroute(&args).stdout, catroute(&args).stdout);
}

#[test]
fn single_category_fails_check() {
    let f = Files::new();
    let g = f.write("p3.edges", PATH3);
    let cats = f.write("one.cats", "0 1 2\n");
    let out = catroute(&["check", s(&g), s(&cats)]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("shattered=false"));
    assert!(text.contains("failing_pair=0->1"));
}

#[test]
fn out_of_range_category_is_an_id_mismatch() {
    let f = Files::new();
    let g = f.write("p3.edges", PATH3);
    let cats = f.write("bad.cats", "0 1\n3\n");
    assert_eq!(code(&catroute(&["check", s(&g), s(&cats)])), 4);
    let good = f.write("good.cats", "0\n");
    assert_eq!(code(&catroute(&["route", s(&g), s(&good), "0", "9"])), 4);
}

#[test]
fn parse_and_connectivity_errors() {
    let f = Files::new();
    let bad = f.write("bad.edges", "0 1\n1 x\n");
    let out = catroute(&["construct", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let split = f.write("split.edges", "0 1\n2 3\n");
    assert_eq!(code(&catroute(&["construct", s(&split)])), 3);
    assert_eq!(code(&catroute(&["construct", "/nonexistent/graph"])), 2);
}

#[test]
fn route_traces() {
    let f = Files::new();
    let g = f.write("p3.edges", PATH3);
    let cats = f.write("p3.cats", "1 2\n0\n2\n0 1\n");
    let out = catroute(&["route", s(&g), s(&cats), "0", "2"]);
    assert_eq!(code(&out), 0);
    let hops: Vec<String> = stdout(&out)
        .lines()
        .filter(|l| l.starts_with("hop"))
        .map(String::from)
        .collect();
    assert_eq!(hops, ["hop 0: 0 (d=2)", "hop 1: 1 (d=1)", "hop 2: 2 (d=0)"]);

    let out = catroute(&["route", s(&g), s(&cats), "1", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("hop"))
            .count(),
        1
    );

    let e = f.write("edge.edges", "0 1\n");
    let one = f.write("edge.cats", "0 1\n");
    let out = catroute(&["route", s(&e), s(&one), "0", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("stuck at 0"));
}

#[test]
fn oracle_reports_and_guards() {
    let f = Files::new();
    let g = f.write("p3.edges", PATH3);
    let out = catroute(&["oracle", s(&g)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("min memdim = 2"));

    let big: String = (0..49).map(|i| format!("{i} {}\n", i + 1)).collect();
    let big = f.write("big.edges", &big);
    assert_eq!(code(&catroute(&["oracle", s(&big)])), 5);
    assert_eq!(code(&catroute(&["oracle", s(&g), "--max-dim", "5"])), 5);
}

#[test]
fn bench_row_count_and_header() {
    let out = catroute(&["bench", "--gen", "tree", "--n", "16,32", "--seeds", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("generator,seed,n,m,diam,memdim,bound,max_route,mean_route,max_stretch")
    );
    assert_eq!(lines.count(), 6);
}

#[test]
fn bench_writes_csv_file() {
    let f = Files::new();
    let csv = f.path("out.csv");
    let out = catroute(&[
        "--quiet",
        "bench",
        "--gen",
        "path",
        "--n",
        "5",
        "--out",
        s(&csv),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&csv).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "path");
    assert_eq!(row[4], row[5], "path rows have memdim = diam");
}
