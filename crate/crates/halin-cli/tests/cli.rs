//! End-to-end tests driving the compiled `halin` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Fresh per-test scratch directory, cleaned up on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("halin-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).expect("create scratch dir");
        Scratch(dir)
    }

    fn path(&self, file: &str) -> PathBuf {
        self.0.join(file)
    }

    fn dir(&self) -> &str {
        self.0.to_str().expect("utf-8 path")
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let p = self.path(name);
        fs::write(&p, contents).expect("write scratch file");
        p.to_str().expect("utf-8 path").to_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

/// Whitespace-insensitive row comparison for aligned tables.
fn row_tokens(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

#[test]
fn construct_prints_one_canonical_line() {
    let out = run(&["construct", "--family", "wheel", "--n", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "halin1 (()()()())\n");

    let out = run(&["construct", "--family", "t17", "--n", "17"]);
    assert_eq!(stdout(&out), "halin1 ((((()())(()())(()()))(()()))()())\n");

    let out = run(&[
        "construct",
        "--family",
        "random",
        "--n",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!(
        stdout(&out),
        "halin1 ((((()())(()())(()()))(()())(()()))()())\n"
    );
}

#[test]
fn check_reports_a_witness_or_freeness() {
    let scratch = Scratch::new("check");
    let wheel = scratch.file("w5.txt", "halin1 (()()()())\n");
    let out = run(&["check", "--input", &wheel, "--forbid", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "contains C3: 0 1 2\n");

    let base = scratch.file(
        "t16.txt",
        "# sixteen vertices\n\nhalin1 ((()())(()())(()())(()())(()()))\n",
    );
    let out = run(&["check", "--input", &base, "--forbid", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "C4-free\n");
}

#[test]
fn faces_lists_one_bounded_face_per_cycle_edge() {
    let scratch = Scratch::new("faces");
    let wheel = scratch.file("w5.txt", "halin1 (()()()())\n");
    let out = run(&["faces", "--input", &wheel]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "4 bounded faces\n\
         (1, 2) size 3: 1 2 0\n\
         (2, 3) size 3: 2 3 0\n\
         (3, 4) size 3: 3 4 0\n\
         (4, 1) size 3: 4 1 0\n"
    );
}

#[test]
fn reduce_applies_a_rule_and_prints_the_smaller_graph() {
    let scratch = Scratch::new("reduce");
    let line = stdout(&run(&[
        "construct",
        "--family",
        "random",
        "--n",
        "20",
        "--seed",
        "7",
    ]));
    let input = scratch.file("r20.txt", &line);

    let expected = "rule: contraction\n\
                    site: 1 2\n\
                    edges: 31 -> 30\n\
                    halin1 (((()())(()())(()())(()())(()()))()())\n";
    let out = run(&["reduce", "--input", &input]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), expected);

    let out = run(&["reduce", "--input", &input, "--rule", "contraction"]);
    assert_eq!(stdout(&out), expected);

    let base = scratch.file("t16.txt", "halin1 ((()())(()())(()())(()())(()()))\n");
    let out = run(&["reduce", "--input", &base]);
    assert_eq!(code(&out), 2);
    assert_eq!(stderr(&out), "error: no reduction applies\n");
}

#[test]
fn enumerate_streams_codes_or_counts() {
    let out = run(&["enumerate", "--n", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "halin1 ((()())()())\nhalin1 (()()()()())\n");

    let out = run(&["enumerate", "--n", "8", "--count-only"]);
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn extremal_reports_and_reuses_its_cache() {
    let scratch = Scratch::new("cache");
    let args = [
        "extremal",
        "--n",
        "13",
        "--forbid",
        "4",
        "--cache-dir",
        scratch.dir(),
    ];

    let first = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(
        stdout(&first),
        "ex_H(13, C4) = 20\nextremal graphs: 1 of 106 enumerated\n"
    );
    assert!(scratch.path("ex-n13-c4-v1.txt").is_file());

    let second = run(&args);
    assert_eq!(stdout(&second), stdout(&first));
    assert!(
        stderr(&second).contains("using cached record"),
        "second run should hit the cache: {}",
        stderr(&second)
    );
}

#[test]
fn extremal_prints_witnesses_on_request() {
    let scratch = Scratch::new("witness");
    let out = run(&[
        "extremal",
        "--n",
        "10",
        "--forbid",
        "4",
        "--witnesses",
        "--cache-dir",
        scratch.dir(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "ex_H(10, C4) = 15\n\
         extremal graphs: 1 of 13 enumerated\n\
         halin1 (((()())(()()))()())\n"
    );
}

#[test]
fn audit_prints_classes_and_claims() {
    let out = run(&["audit", "--n", "16"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "audit n=16: 1475 graphs enumerated, 2 C4-free\n\
         classes by longest tree path (edges):\n\
         \x20 k=4: count 1, edges 25..25\n\
         \x20 k=6: count 1, edges 24..24\n\
         claims:\n\
         \x20 ok   every C4-free graph has longest path at most 6 (largest longest-path length observed: 6)\n\
         \x20 ok   no C4-free graph has longest path 5 (no C4-free graphs with longest path 5)\n\
         \x20 ok   every C4-free graph with longest path 6 has exactly 24 edges (1 graph(s) with longest path 6, edges 24..24)\n\
         \x20 ok   every C4-free graph with longest path 4 has exactly 25 edges (1 graph(s) with longest path 4, edges 25..25)\n\
         all claims hold\n"
    );

    let out = run(&["--format", "csv", "audit", "--n", "16"]);
    assert_eq!(
        stdout(&out),
        "n,longest_path,count,min_edges,max_edges\n16,4,1,25,25\n16,6,1,24,24\n"
    );
}

#[test]
fn conjecture_scan_prints_the_bound_table() {
    let out = run(&["conjecture", "--n-min", "8", "--n-max", "12"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        row_tokens(lines[0]),
        [
            "n",
            "graphs",
            "C6-free",
            "ex_H(n,C6)",
            "bound",
            "exceeds",
            "stated",
            "range"
        ]
    );
    assert_eq!(
        row_tokens(lines[1]),
        ["8", "4", "0", "-", "11.2", "no", "no"]
    );
    assert_eq!(
        row_tokens(lines[5]),
        ["12", "50", "0", "-", "17.6", "no", "no"]
    );
    assert_eq!(
        lines[6],
        "no counterexample within the stated range (n >= 21)"
    );

    let out = run(&[
        "--format",
        "csv",
        "conjecture",
        "--n-min",
        "8",
        "--n-max",
        "10",
    ]);
    assert_eq!(
        stdout(&out),
        "n,enumerated_total,ck_free_count,max_edges,bound_num,bound_den,exceeds_bound,gap_fifths,in_stated_range\n\
         8,4,0,,56,5,false,,false\n\
         9,6,0,,64,5,false,,false\n\
         10,13,0,,72,5,false,,false\n"
    );
}

#[test]
fn conjecture_scan_labels_small_exceptions_as_out_of_range() {
    // The tiny wheels beat 8(n-1)/5 but sit below the bound's stated range,
    // so they are reported without being flagged as counterexamples.
    let out = run(&["conjecture", "--n-min", "4", "--n-max", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        row_tokens(lines[1]),
        ["4", "1", "1", "6", "4.8", "yes", "no"]
    );
    assert_eq!(
        row_tokens(lines[2]),
        ["5", "1", "1", "8", "6.4", "yes", "no"]
    );
    assert_eq!(
        row_tokens(lines[3]),
        ["6", "2", "0", "-", "8.0", "no", "no"]
    );
    assert_eq!(
        lines[4],
        "no counterexample within the stated range (n >= 21)"
    );
}

#[test]
fn json_output_is_well_formed() {
    let scratch = Scratch::new("json");
    let wheel = scratch.file("w5.txt", "halin1 (()()()())\n");
    let out = run(&[
        "--format", "json", "check", "--input", &wheel, "--forbid", "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["n"], 5);
    assert_eq!(v["k"], 3);
    assert_eq!(v["contains"], true);
    assert_eq!(v["witness"], serde_json::json!([0, 1, 2]));

    let out = run(&[
        "--format",
        "json",
        "extremal",
        "--n",
        "10",
        "--forbid",
        "4",
        "--cache-dir",
        scratch.dir(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["n"], 10);
    assert_eq!(v["k"], 4);
    assert_eq!(v["max_edges"], 15);
    assert_eq!(v["num_extremal"], 1);
    assert_eq!(v["enumerated_total"], 13);
    assert_eq!(v["witnesses"], serde_json::json!([]));

    let out = run(&["--format", "json", "enumerate", "--n", "6", "--count-only"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["n"], 6);
    assert_eq!(v["count"], 2);
    assert_eq!(v["lines"], serde_json::Value::Null);
}

#[test]
fn version_names_the_formats() {
    let out = run(&["--version"]);
    assert_eq!(
        stdout(&out),
        "halin 0.1.0 (graph format halin1, cache format v1)\n"
    );
    let out = run(&["-V"]);
    assert_eq!(stdout(&out), "halin 0.1.0\n");
}

#[test]
fn failures_use_distinct_exit_codes() {
    // 1: usage errors.
    let out = run(&[
        "--format",
        "csv",
        "construct",
        "--family",
        "wheel",
        "--n",
        "5",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(
        stderr(&out),
        "error: --format csv is only available for `audit` and `conjecture`\n"
    );
    let out = run(&["--limit", "25", "enumerate", "--n", "25"]);
    assert_eq!(code(&out), 1);
    assert_eq!(
        stderr(&out),
        "error: --limit 25 is above the hard maximum 20\n"
    );
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 1);

    // 2: precondition failures.
    let out = run(&["construct", "--family", "t16", "--n", "17"]);
    assert_eq!(code(&out), 2);
    assert_eq!(
        stderr(&out),
        "error: this family is the fixed 16-vertex base tree; got --n 17\n"
    );
    let scratch = Scratch::new("exit-codes");
    let empty = scratch.file("empty.txt", "# nothing here\n");
    let out = run(&["check", "--input", &empty, "--forbid", "4"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("no `halin1` line found"));

    // 3: enumeration limits.
    let out = run(&["enumerate", "--n", "19"]);
    assert_eq!(code(&out), 3);
    assert_eq!(
        stderr(&out),
        "error: n = 19 is above the enumeration limit 18\n"
    );
}
