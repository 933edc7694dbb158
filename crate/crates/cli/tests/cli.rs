use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const INTRO: &str = "x1 y1 x1 x2 y3 x2 x1 y1^-1 x1^3 y2 x3^-1 y3^-1 x3^2 y2^-1 x3";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordmap")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn coefficients(report: &Value) -> Vec<f64> {
    report["characters"].as_array().unwrap().iter().map(|c| c["coefficient"]["re"].as_f64().unwrap()).collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("wordmap-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classify_reports_letter_classes() {
    let classes = |word: &str| -> Vec<String> {
        json(&["classify", word])["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| g["class"].as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(classes("[x,y]"), ["dismissible", "dismissible"]);
    assert_eq!(classes("{x,y}"), ["square", "dismissible"]);
    assert_eq!(classes("x"), ["single"]);
}

#[test]
fn inferred_alphabet_warns() {
    let out = run(&["classify", "x y"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: alphabet inferred"));
    let out = run(&["classify", "x y", "--alphabet", "x,y,z"]);
    assert!(out.stderr.is_empty());
}

#[test]
fn reduce_shows_split_data() {
    let r = json(&["reduce", INTRO]);
    let split = &r["split"];
    assert_eq!(split["n"], 3);
    assert_eq!(split["r"], 2);
    assert_eq!(split["split_words"], serde_json::json!(["x1^4*x3", "x1*x2*x3*x2*x1"]));
    assert!(r["split_prefactor"]["claim"].as_str().unwrap().starts_with("|G|^2/chi(1)^3"));

    let r = json(&["reduce", "[y1,y2][y3,y4]"]);
    assert_eq!(r["split"]["r"], 1);
    assert_eq!(r["split"]["split_words"], serde_json::json!(["1"]));
    assert_eq!(r["normal_form"]["prefactor"]["claim"], "|G|^3/chi(1)^3");

    let r = json(&["reduce", "x"]);
    assert!(r["split"].is_null());
    assert_eq!(r["normal_form"]["prefactor"]["trivial_only"], true);
}

#[test]
fn expand_examples() {
    let c = coefficients(&json(&["expand", "[x,y]", "--group", "S3"]));
    assert_eq!(c, [6.0, 6.0, 3.0]);
    let c = coefficients(&json(&["expand", "{x,y}", "--group", "Z3"]));
    assert_eq!(c, [3.0, 0.0, 0.0]);
    let r = json(&["expand", "1", "--group", "S3"]);
    let exact: Vec<&str> = r["characters"].as_array().unwrap().iter().map(|c| c["exact"].as_str().unwrap()).collect();
    assert_eq!(exact, ["1/6", "1/6", "1/3"]);
}

#[test]
fn expand_verify_agrees() {
    let r = json(&["expand", INTRO, "--group", "S3", "--verify"]);
    assert_eq!(r["oracle_evaluations"], 46656);
    assert!(r["max_delta"].as_f64().unwrap() <= 1e-6);
    let human = run(&["expand", "[[x,y],z]", "--group", "Q8", "--verify"]);
    assert!(human.status.success());
    assert!(String::from_utf8_lossy(&human.stdout).contains("agrees with brute force"));
}

#[test]
fn json_output_is_reproducible() {
    for args in [
        &["expand", INTRO, "--group", "S3", "--verify", "--format", "json"][..],
        &["reduce", "[a,b] d [a,c] d^-1", "--format", "json"][..],
        &["expand", "x^2 y^3", "--group", "A4", "--format", "json"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn group_file_with_computed_table() {
    let g = wordmap::builtin("D5").unwrap();
    let path = temp_file("d5.grp", &g.to_file());
    let args = ["expand", "[x,y]", "--group-file", path.to_str().unwrap(), "--seed", "11", "--format", "json"];
    let a = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["table"], "computed, seed 11");
    assert_eq!(r["seed"], 11);
    let mut c = coefficients(&r);
    c.sort_by(f64::total_cmp);
    assert!((c[0] - 5.0).abs() < 1e-9 && (c[3] - 10.0).abs() < 1e-9);
    assert_eq!(run(&args).stdout, a.stdout);
    std::fs::remove_file(path).ok();
}

#[test]
fn bench_counts_evaluations() {
    let csv = String::from_utf8(run(&["bench", "[x,y]", "--group", "S4"]).stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "method,evaluations,seconds,max_delta,claim,note");
    assert!(lines[1].starts_with("oracle,576,"));
    assert!(lines[2].starts_with("squares-first,0,"));

    let rows = json(&["bench", INTRO, "--group", "S3"]);
    assert_eq!(rows[0]["evaluations"], 46656);
    assert_eq!(rows[2]["method"], "dismissibles-first");
    assert_eq!(rows[2]["evaluations"], 216);

    let rows = json(&["bench", "a x b y a b x^-1 b^-1 y a^2", "--group", "S3"]);
    let squares = rows[1]["evaluations"].as_u64().unwrap();
    let dismissibles = rows[2]["evaluations"].as_u64().unwrap();
    assert!(squares < dismissibles);
}

#[test]
fn genus_command() {
    let r = json(&["genus", "y1 y2 y3 y1^-1 y2^-1 y3^-1"]);
    assert_eq!((r["n"].as_u64(), r["r"].as_u64(), r["genus"].as_u64()), (Some(3), Some(2), Some(1)));
    let out = run(&["genus", "x y x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "x^0", "--group", "S3"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "x", "--group", "Q9"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "x"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "x", "--group", "S3", "--tol", "0"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "x", "--group", "S3", "--budget", "0"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "x y", "--alphabet", "x"]).status.code(), Some(1));

    let over = run(&["expand", "a b c d e f", "--group", "S4", "--verify"]);
    assert_eq!(over.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&over.stderr).contains("budget"));
    let over = run(&["expand", "[a,b][c,d]", "--group", "S3", "--verify", "--budget", "100"]);
    assert_eq!(over.status.code(), Some(3));
}

#[test]
fn corrupt_tables_are_rejected() {
    let text = wordmap::chartable::builtin_table_file("S3").unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[4] = lines[3].clone();
    let path = temp_file("dup.tbl", &lines.join("\n"));
    let out = run(&["expand", "[x,y]", "--group", "S3", "--table-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orthogonality"));
    std::fs::remove_file(path).ok();

    let bad_group = temp_file("bad.grp", "group G order 2\n0 1\n1 1\n");
    let out = run(&["classify", "x", "--group-file", bad_group.to_str().unwrap()]);
    // classify does not load groups
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["expand", "x", "--group-file", bad_group.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(bad_group).ok();
}
