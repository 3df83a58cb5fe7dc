use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const EXAMPLE: &str = "0,1,2,3\n1,2,3\n2\n0,1,2,4\n2\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercsa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    _dir: TempDir,
    edges: PathBuf,
    index: PathBuf,
}

fn compressed() -> Fixture {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("example.txt");
    let index = dir.path().join("example.hcsa");
    fs::write(&edges, EXAMPLE).unwrap();
    let o = run(&["compress", "-i", path(&edges), "-o", path(&index)]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert!(out.contains("incidences: 13"));
    assert!(out.contains("index bytes: "));
    assert!(out.contains("ratio: "));
    Fixture {
        _dir: dir,
        edges,
        index,
    }
}

#[test]
fn stats_of_example() {
    let f = compressed();
    let o = run(&["stats", "-i", path(&f.index), "--json", "--check"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["incidences"], 13);
    assert_eq!(v["nodes"], 5);
    assert_eq!(v["edges"], 5);
    assert_eq!(v["degree_bits"], 14);

    let o = run(&["stats", "-i", path(&f.index)]);
    assert!(stdout(&o).contains("incidences (M): 13"));
}

#[test]
fn single_queries() {
    let f = compressed();
    let q = |mode: &str, arg: &str| stdout(&run(&["query", "-i", path(&f.index), mode, arg]));
    assert_eq!(q("--exists", "2"), "2\n");
    assert_eq!(q("--exists", "3,2,1"), "1\n");
    assert_eq!(q("--exists", "0,3"), "0\n");
    assert_eq!(q("--degree", "2"), "5\n");
    let mut edges: Vec<String> = q("--contains", "1,3")
        .trim()
        .split(';')
        .map(str::to_string)
        .collect();
    edges.sort();
    assert_eq!(edges, ["0,1,2,3", "1,2,3"]);
    assert_eq!(q("--contains", "0,3,4"), "\n");
}

#[test]
fn batch_engines_agree() {
    let f = compressed();
    let batch = f.edges.with_file_name("batch.txt");
    fs::write(&batch, "c:2\ne:2\nd:4\nc:1,3\ne:0,1,2,4\nd:7\n").unwrap();
    let answers = |engine: &str| {
        let o = run(&["query", "-i", path(&f.index), "--batch", path(&batch), "--engine", engine]);
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .map(|l| {
                let mut parts: Vec<&str> = l.split(';').collect();
                parts.sort();
                parts.join(";")
            })
            .collect::<Vec<_>>()
    };
    let fast = answers("hypercsa");
    assert_eq!(fast.len(), 6);
    assert_eq!(fast[1], "2");
    assert!(fast[5].starts_with("error: unknown node label 7"));
    assert_eq!(fast, answers("naive"));

    let o = run(&["bench", "-i", path(&f.index), "--batch", path(&batch), "--threads", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["queries"], 6);
    assert_eq!(v["errors"], 1);
}

#[test]
fn decompress_recompress_is_byte_identical() {
    let f = compressed();
    let edges2 = f.edges.with_file_name("round.txt");
    let index2 = f.edges.with_file_name("round.hcsa");
    assert!(run(&["decompress", "-i", path(&f.index), "-o", path(&edges2)]).status.success());
    assert_eq!(fs::read_to_string(&edges2).unwrap(), "2\n2\n1,2,3\n0,1,2,4\n0,1,2,3\n");
    assert!(run(&["compress", "-i", path(&edges2), "-o", path(&index2)]).status.success());
    assert_eq!(fs::read(&f.index).unwrap(), fs::read(&index2).unwrap());
}

#[test]
fn exit_codes() {
    let f = compressed();
    let code = |args: &[&str]| run(args).status.code().unwrap();

    assert_eq!(code(&["query", "-i", path(&f.index)]), 2);
    assert_eq!(code(&["compress", "-i", path(&f.edges), "-o", "x", "--t", "0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);

    let bad = f.edges.with_file_name("bad.txt");
    fs::write(&bad, "1,2\n3,x\n").unwrap();
    assert_eq!(code(&["compress", "-i", path(&bad), "-o", "x"]), 3);
    fs::write(&bad, "1,1\n").unwrap();
    assert_eq!(code(&["compress", "-i", path(&bad), "-o", "x"]), 3);
    assert_eq!(code(&["query", "-i", path(&f.index), "--degree", "9"]), 3);
    assert_eq!(code(&["query", "-i", path(&f.index), "--exists", "2,2"]), 3);

    let mut bytes = fs::read(&f.index).unwrap();
    let corrupt = f.edges.with_file_name("corrupt.hcsa");
    fs::write(&corrupt, &bytes[..bytes.len() - 3]).unwrap();
    assert_eq!(code(&["stats", "-i", path(&corrupt)]), 4);
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x10;
    fs::write(&corrupt, &bytes).unwrap();
    assert_eq!(code(&["query", "-i", path(&corrupt), "--exists", "2"]), 4);
    assert_eq!(code(&["stats", "-i", path(&f.edges)]), 4);
    assert_eq!(code(&["stats", "-i", "/nonexistent/index"]), 4);
}
