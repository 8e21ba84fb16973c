use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn prac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prac")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = prac(&all);
    let doc: Value = serde_json::from_slice(&out.stdout).expect("structured output is JSON");
    (code(&out), doc)
}

fn without_time(mut doc: Value) -> Value {
    doc.as_object_mut().unwrap().remove("wall_time");
    doc
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [("x^6+x^5+x^4+x^2+1", "3", "7"), ("x^4+x+1", "3", "5"), ("x^12+x^10+x^9+x+1", "7", "13")];
    for (poly, r1, r2) in cases {
        let path = dir.path().join(format!("{r1}x{r2}.txt"));
        let path = path.to_str().unwrap();
        let out = prac(&["construct", "--poly", poly, "--r1", r1, "--r2", r2, "--out", path]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let text = fs::read_to_string(path).unwrap();
        assert!(text.starts_with(&format!("# {r1} {r2} ")));
        let out = prac(&["verify", path]);
        assert_eq!(code(&out), 0, "{poly}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn constructed_file_holds_the_three_cycles() {
    let out = prac(&["construct", "--poly", "x^6+x^5+x^4+x^2+1", "--r1", "3", "--r2", "7"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim_end().split("\n\n").count(), 3);
    assert_eq!(text.lines().next(), Some("# 3 7 2 3"));
}

#[test]
fn exponent_mismatch_names_both_numbers() {
    let out = prac(&["construct", "--poly", "x^4+x+1", "--r1", "3", "--r2", "7"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("15") && err.contains("21"), "{err}");
}

#[test]
fn flipped_bit_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("arrays.txt");
    let out = prac(&["construct", "--poly", "x^6+x^5+x^4+x^2+1", "--r1", "3", "--r2", "7"]);
    let mut lines: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    let row = &mut lines[2];
    let flipped = if row.starts_with('0') { '1' } else { '0' };
    row.replace_range(0..1, &flipped.to_string());
    fs::write(&path, lines.join("\n") + "\n").unwrap();

    let (status, doc) = structured(&["verify", path.to_str().unwrap()]);
    assert_eq!(status, 1);
    assert_eq!(doc["verdicts"][0]["verdict"], "fail");
    let witnesses = doc["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 1);
    assert_eq!(witnesses[0]["kind"], "window");
}

#[test]
fn empty_file_fails_at_precheck() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    fs::write(&path, "").unwrap();
    let (status, doc) =
        structured(&["verify", path.to_str().unwrap(), "--r1", "3", "--r2", "7", "--n1", "2", "--n2", "3"]);
    assert_eq!(status, 1);
    assert_eq!(doc["verdicts"][0]["criterion"], "parameters");
    assert_eq!(doc["verdicts"][0]["verdict"], "fail");
}

#[test]
fn parse_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "# 3 7 2 3\n0000000\n10x1011\n").unwrap();
    let out = prac(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn structured_output_is_deterministic() {
    let runs = [
        vec!["check-fold", "--poly", "x^12+x^10+x^9+x+1", "--r1", "7", "--r2", "13", "--n1", "3", "--n2", "4"],
        vec!["vee", "--f1", "x^4+x+1", "--f2", "x^3+x+1"],
        vec!["conjecture", "--n1", "2", "--n2", "3", "--r1", "3", "--r2", "7"],
    ];
    for args in runs {
        let (s1, d1) = structured(&args);
        let (s2, d2) = structured(&args);
        assert_eq!(s1, s2);
        for key in ["command", "inputs", "params", "verdicts", "witnesses", "counts", "wall_time"] {
            assert!(d1.get(key).is_some(), "{key} missing for {args:?}");
        }
        assert_eq!(
            serde_json::to_string(&without_time(d1)).unwrap(),
            serde_json::to_string(&without_time(d2)).unwrap()
        );
    }
}

#[test]
fn check_fold_all_reports_agreement() {
    let (status, doc) =
        structured(&["check-fold", "--poly", "1010011011111", "--r1", "13", "--r2", "35", "--n1", "4", "--n2", "3"]);
    assert_eq!(status, 0);
    assert_eq!(doc["agreement"], true);
    let criteria: Vec<&str> =
        doc["verdicts"].as_array().unwrap().iter().map(|v| v["criterion"].as_str().unwrap()).collect();
    for c in ["prac", "set-polynomial", "trace-independence", "determinant"] {
        assert!(criteria.contains(&c), "{c} not run");
    }

    let (status, doc) =
        structured(&["check-fold", "--poly", "x^12+x^10+x^9+x+1", "--r1", "7", "--r2", "13", "--n1", "3", "--n2", "4"]);
    assert_eq!(status, 0);
    assert_eq!(doc["agreement"], true);
    assert!(doc["verdicts"].as_array().unwrap().iter().all(|v| v["verdict"] == "pass"));
}

#[test]
fn check_fold_single_criterion() {
    let out = prac(&[
        "check-fold",
        "--poly",
        "1011101001111",
        "--r1",
        "13",
        "--r2",
        "35",
        "--n1",
        "4",
        "--n2",
        "3",
        "--criterion",
        "setpoly",
        "--exhaustive-setpoly",
    ]);
    assert_eq!(code(&out), 1);

    let out = prac(&[
        "check-fold",
        "--factors",
        "x^6+x^5+1,x^6+x+1",
        "--r1",
        "7",
        "--r2",
        "9",
        "--n1",
        "3",
        "--n2",
        "4",
        "--criterion",
        "det",
    ]);
    assert_eq!(code(&out), 1);

    let out = prac(&[
        "check-fold",
        "--factors",
        "x^6+x^5+x^4+x^2+1,x^6+x^4+x^2+x+1",
        "--r1",
        "3",
        "--r2",
        "7",
        "--n1",
        "2",
        "--n2",
        "6",
        "--criterion",
        "det",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn inapplicable_criterion_is_a_usage_error() {
    let out = prac(&[
        "check-fold",
        "--factors",
        "x^6+x^5+1,x^6+x+1",
        "--r1",
        "7",
        "--r2",
        "9",
        "--n1",
        "3",
        "--n2",
        "4",
        "--criterion",
        "setpoly",
    ]);
    assert_eq!(code(&out), 2);
    let out = prac(&[
        "check-fold",
        "--poly",
        "x^4+x+1",
        "--r1",
        "3",
        "--r2",
        "5",
        "--n1",
        "2",
        "--n2",
        "2",
        "--criterion",
        "bogus",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_classify_and_vee() {
    let (status, doc) = structured(&["enumerate", "--r1", "7", "--r2", "13", "--n1", "3", "--n2", "4"]);
    assert_eq!(status, 0);
    assert_eq!(doc["counts"]["polynomials"], 6);

    let (status, doc) = structured(&["classify", "--poly", "x^6+x^3+1"]);
    assert_eq!(status, 0);
    assert_eq!(doc["result"]["kind"], "inp");
    assert_eq!(doc["counts"]["exponent"], 9);

    let (status, doc) = structured(&["classify", "--f1", "x^4+x^3+x^2+x+1", "--f2", "x^9+x+1"]);
    assert_eq!(status, 0);
    assert_eq!(doc["counts"]["row"], 5);

    let (status, doc) = structured(&["vee", "--f1", "x^4+x+1", "--f2", "x^3+x+1"]);
    assert_eq!(status, 0);
    assert_eq!(doc["result"]["g"], "x^12+x^9+x^5+x^4+x^3+x+1");
}

#[test]
fn conjecture_reports_failing_pair() {
    let (status, doc) =
        structured(&["conjecture", "--n1", "3", "--n2", "2", "--r1", "7", "--r2", "9", "--census-limit", "12"]);
    assert_eq!(status, 0, "failure outside the range is not a counterexample");
    assert_eq!(doc["counts"]["counterexamples"], 0);
    let failing = doc["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["k"] == 2 && e["determinant"]["verdict"] == "fail")
        .count();
    assert!(failing >= 1);
}
