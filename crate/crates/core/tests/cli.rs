use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn ola(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ola")).args(args).output().unwrap()
}

fn graph_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn keys(v: &Value) -> BTreeSet<String> {
    v.as_object().unwrap().keys().cloned().collect()
}

const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";

#[test]
fn decide_exit_codes_and_schema() {
    let f = graph_file(K3);
    let path = f.path().to_str().unwrap();

    let yes = ola(&["--mode", "decide", "--k", "1", "--input", path]);
    assert_eq!(yes.status.code(), Some(0));
    let v = json(&yes);
    assert_eq!(v["decision"], "yes");
    assert_eq!(v["ola_plus"], 1);
    assert_eq!(v["k"], 1);
    let arrangement: Vec<u64> = serde_json::from_value(v["arrangement"].clone()).unwrap();
    let mut sorted = arrangement.clone();
    sorted.sort();
    assert_eq!(sorted, vec![1, 2, 3]);

    let no = ola(&["--mode", "decide", "--k", "0", "--input", path]);
    assert_eq!(no.status.code(), Some(1));
    let w = json(&no);
    assert_eq!(w["decision"], "no");
    assert_eq!(keys(&v), keys(&w));
    assert_eq!(
        keys(&v),
        ["arrangement", "decision", "k", "kernel_stats", "ola_plus", "timings_ms"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    );
    assert_eq!(
        keys(&v["timings_ms"]),
        ["components", "kernelize", "lift", "parse", "search"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    );
}

#[test]
fn decide_on_generated_instances() {
    for (family, params, k, code) in [
        ("path", "n=50", "0", 0),
        ("cycle", "n=6", "4", 0),
        ("cycle", "n=6", "3", 1),
        ("clique", "n=4", "4", 0),
        ("clique", "n=4", "3", 1),
        ("caterpillar", "spine=2000,legs=1,triangles=1", "3", 0),
    ] {
        let out = ola(&["--mode", "decide", "--k", k, "--family", family, "--params", params]);
        assert_eq!(out.status.code(), Some(code), "{family} {params} k={k}");
        let v = json(&out);
        assert_eq!(v["decision"], if code == 0 { "yes" } else { "no" });
    }
}

#[test]
fn errors_exit_with_two() {
    let missing = ola(&["--mode", "decide", "--k", "1", "--input", "/definitely/not/here"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());

    let bad = graph_file("3 1\n1 4\n");
    let out = ola(&["--mode", "decide", "--k", "1", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let f = graph_file(K3);
    assert_eq!(ola(&["--mode", "decide", "--input", f.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(ola(&["--mode", "decide", "--k", "1"]).status.code(), Some(2));
    assert_eq!(ola(&["--mode", "generate", "--family", "hypercube"]).status.code(), Some(2));
    assert_eq!(ola(&["--mode", "fly"]).status.code(), Some(2));
    assert_eq!(
        ola(&["--mode", "oracle", "--family", "path", "--params", "n=30"]).status.code(),
        Some(2)
    );
}

#[test]
fn oracle_mode() {
    let f = graph_file("5 4\n1 2\n2 3\n3 4\n4 5\n");
    let out = ola(&["--mode", "oracle", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ola"], 4);
    assert_eq!(v["ola_plus"], 0);
    assert_eq!(v["arrangement"].as_array().unwrap().len(), 5);
}

#[test]
fn kernel_mode() {
    let out = ola(&["--mode", "kernel", "--k", "2", "--family", "path", "--params", "n=10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = &v["components"][0];
    assert_eq!(c["kernel_n"], 6);
    assert_eq!(c["suppressed"], serde_json::json!([7, 6, 5, 4]));
    assert_eq!(c["kept"], serde_json::json!([1, 2, 3, 8, 9, 10]));
}

#[test]
fn generate_is_deterministic() {
    let args = ["--mode", "generate", "--family", "random_tree", "--params", "n=50", "--seed", "7", "--format", "text"];
    let a = ola(&args);
    let b = ola(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("50 49\n"));

    let f = graph_file(&text);
    let out = ola(&["--mode", "decide", "--k", "0", "--input", f.path().to_str().unwrap()]);
    assert!(matches!(out.status.code(), Some(0 | 1)));
}

#[test]
fn count_and_bench_modes() {
    let out = ola(&["--mode", "count", "--params", "path_n=5,path_k=1,tree_n=4,tree_k=1"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("family,n,k,j_or_i,exact_count,bound,holds"));
    assert!(lines.all(|l| l.ends_with(",true")));

    let out = ola(&["--mode", "bench", "--k", "2", "--family", "cycle", "--params", "n=4"]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(table.lines().count(), 4);
    assert!(table.lines().nth(2).unwrap().contains(",no,,"));
    assert!(table.lines().nth(3).unwrap().contains(",yes,2,"));
}

#[test]
fn text_format_and_threads() {
    let f = graph_file(K3);
    let path = f.path().to_str().unwrap();
    let out = ola(&["--mode", "decide", "--k", "2", "--input", path, "--format", "text", "--threads", "2", "--symmetry-prune"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("decision yes"));
    assert!(text.contains("ola_plus 1"));
}
