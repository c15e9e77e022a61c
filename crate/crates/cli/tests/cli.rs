use std::process::Command;

use gpilab_cli::{run, EXIT_NEGATIVE, EXIT_OK, EXIT_TRUNCATED, EXIT_USAGE};
use gpilab_core::builtins::Builtin;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn gpilab(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("gpilab").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn codim_table_and_total() {
    let r = gpilab(&["codim", "--builtin", "ut2:full", "--n", "3"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.lines().any(|l| l == "c_3 = 22"), "{}", r.out);
    assert!(r.out.contains("2,1          4      3            12"), "{}", r.out);
}

#[test]
fn codim_single_multidegree_json() {
    let r = gpilab(&["codim", "--builtin", "ut2:C", "--multidegree", "2,1", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["rank"], 4);
}

#[test]
fn codim_series_reports_ratios() {
    let r = gpilab(&["codim", "--builtin", "ut2:F", "--n-max", "4", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK);
    let mut rows = csv::Reader::from_reader(r.out.as_bytes());
    let codims: Vec<String> = rows.records().map(|rec| rec.unwrap()[1].to_string()).collect();
    let want: Vec<String> = (1..=4).map(|n| Builtin::F.expected_codim(n).to_string()).collect();
    assert_eq!(codims, want);
}

#[test]
fn row_budget_truncates_with_exit_two() {
    let r = gpilab(&["codim", "--builtin", "ut2:full", "--n", "4", "--max-rows", "50"]);
    assert_eq!(r.code, EXIT_TRUNCATED);
    assert!(r.err.contains("limit is 50"), "{}", r.err);
    let r = gpilab(&["tideal", "--builtin", "ut2:full", "--n", "3", "--max-rows", "200"]);
    assert_eq!(r.code, EXIT_TRUNCATED);
    assert!(r.out.contains("TRUNCATED"), "{}", r.out);
    assert!(!r.out.contains("FAIL"), "{}", r.out);
}

#[test]
fn identity_verdicts() {
    let r = gpilab(&["identity", "--builtin", "ut2:full", "[y1,y2]"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("IDENTITY"));
    let r = gpilab(&["identity", "--builtin", "ut2:full", "y1*z1"]);
    assert_eq!(r.code, EXIT_NEGATIVE);
    assert!(r.out.contains("NOT AN IDENTITY"));
    assert!(r.out.lines().any(|l| l.starts_with("y1 ")), "{}", r.out);
}

#[test]
fn out_of_range_border_is_noted() {
    let r = gpilab(&["identity", "--builtin", "ut2:F", "z*w1"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.err.contains("w1 is outside the acting basis"), "{}", r.err);
}

#[test]
fn custom_variable_prefixes() {
    let r = gpilab(&["identity", "--builtin", "ut2:C", "--vars", "a=0,b=1", "b1*b2"]);
    assert_eq!(r.code, EXIT_OK);
    let r = gpilab(&["identity", "--builtin", "ut2:C", "--vars", "a=0,b=1", "z1*z2"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn tideal_with_generator_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.gen");
    std::fs::write(&path, "# ordinary action\n[y1, y2]\nz1*z2\n").unwrap();
    let p = path.to_str().unwrap();
    let r = gpilab(&["tideal", "--builtin", "ut2:F", "--n", "2", "--generators-file", p]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    assert_eq!(r.out.lines().last(), Some("PASS"));

    std::fs::write(&path, "[y1, y2]\n").unwrap();
    let r = gpilab(&["tideal", "--builtin", "ut2:F", "--n", "2", "--generators-file", p]);
    assert_eq!(r.code, EXIT_NEGATIVE);
    assert!(r.out.contains("FAIL"));

    std::fs::write(&path, "[y1, \n").unwrap();
    let r = gpilab(&["tideal", "--builtin", "ut2:F", "--n", "2", "--generators-file", p]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains(":1: parse error"), "{}", r.err);
}

#[test]
fn cochar_csv_columns() {
    let r = gpilab(&["cochar", "--builtin", "ut2:full", "--n", "4", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("r,λ,μ,m,d_λ,d_μ,contribution"));
    assert!(r.out.lines().any(|l| l == "4,4,∅,7,1,1,7"), "{}", r.out);
    let r = gpilab(&["cochar", "--builtin", "ut2:D", "--n", "3", "--r", "2"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("multidegree 2,1: sum 4 vs codim 4 ok"), "{}", r.out);
}

#[test]
fn exponent_and_multiplier() {
    let r = gpilab(&["exponent", "--builtin", "ut2:C", "--n-max", "4"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("exponent 2"));
    assert!(r.out.contains("growth PASS"));
    let r = gpilab(&["multiplier", "--builtin", "ut2:D", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["split"], serde_json::json!([2, 1]));
    assert_eq!(v["acting_degrees"], serde_json::json!([0, 0]));
}

#[test]
fn algebra_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ut2_d.json");
    std::fs::write(&path, Builtin::D.source()).unwrap();
    let p = path.to_str().unwrap();
    let from_file = gpilab(&["codim", "--algebra", p, "--n", "4", "--format", "json"]);
    let builtin = gpilab(&["codim", "--builtin", "ut2:D", "--n", "4", "--format", "json"]);
    assert_eq!(from_file.code, EXIT_OK, "{}", from_file.err);
    let total = |r: &Run| serde_json::from_str::<serde_json::Value>(&r.out).unwrap()["total"].clone();
    assert_eq!(total(&from_file), total(&builtin));
    let r = gpilab(&["tideal", "--algebra", p, "--n", "2"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn cache_directory_is_filled_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = gpilab(&["codim", "--builtin", "ut2:C", "--n", "3", "--cache", d]);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = gpilab(&["codim", "--builtin", "ut2:C", "--n", "3", "--cache", d]);
    assert_eq!(first.out, second.out);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gpilab(&["codim", "--n", "3"]).code, EXIT_USAGE);
    assert_eq!(gpilab(&["codim", "--builtin", "ut2:X", "--n", "3"]).code, EXIT_USAGE);
    assert_eq!(gpilab(&["codim", "--builtin", "ut2:full"]).code, EXIT_USAGE);
    assert_eq!(gpilab(&["identity", "--builtin", "ut2:full", "y1 +"]).code, EXIT_USAGE);
    assert_eq!(gpilab(&["codim", "--builtin", "ut2:full", "--multidegree", "1,1,1"]).code, EXIT_USAGE);
    assert_eq!(gpilab(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let status = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_gpilab"))
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["identity", "--builtin", "ut2:full", "y1*z1"]), Some(EXIT_NEGATIVE));
    assert_eq!(status(&["bogus"]), Some(EXIT_USAGE));
    assert_eq!(status(&["--version"]), Some(EXIT_OK));
}
