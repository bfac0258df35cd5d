use assert_cmd::Command;
use serde_json::Value;

use mea_core::cli::TableRow;
use mea_core::{Permutation, StatsReport, VerificationReport};

fn mea() -> Command {
    Command::cargo_bin("mea").unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = mea()
        .args(args)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn gen_golden() {
    mea()
        .args(["gen", "6"])
        .assert()
        .success()
        .stdout("[3,4,1,6,2,5]\n");
    mea().args(["gen", "0"]).assert().success().stdout("[]\n");
    mea()
        .args(["gen", "9"])
        .assert()
        .success()
        .stdout("[5,1,9,4,6,2,8,3,7]\n");
    mea()
        .args(["gen", "8", "--naive"])
        .assert()
        .success()
        .stdout("[4,5,1,8,3,6,2,7]\n");
}

#[test]
fn gen_json_and_csv() {
    let p: Permutation =
        serde_json::from_str(&stdout_of(&["--format", "json", "gen", "5"])).unwrap();
    assert_eq!(p.values(), &[3, 1, 5, 2, 4]);
    assert_eq!(
        stdout_of(&["gen", "5", "--format", "csv"]),
        "n,permutation\n5,3 1 5 2 4\n"
    );
}

#[test]
fn naive_and_fast_agree() {
    for n in [0, 1, 2, 17, 64, 301] {
        let n = n.to_string();
        assert_eq!(stdout_of(&["gen", &n]), stdout_of(&["gen", &n, "--naive"]));
    }
}

#[test]
fn unparsable_n_is_usage_error() {
    mea().args(["gen", "six"]).assert().code(2);
    mea().args(["gen", "-3"]).assert().code(2);
    mea().args(["frobnicate"]).assert().code(2);
}

#[test]
fn stats_outputs() {
    let r: StatsReport =
        serde_json::from_str(&stdout_of(&["stats", "5", "--format", "json"])).unwrap();
    assert_eq!(r.inversions, 4);
    assert_eq!(r.descents, vec![1, 3]);
    assert_eq!(r.sign.value(), 1);
    assert_eq!(r.alternation.as_str(), "down_up");

    let one: Value = serde_json::from_str(&stdout_of(&["stats", "1", "--format", "json"])).unwrap();
    assert_eq!(one["inversions"], 0);
    assert_eq!(one["descents"], serde_json::json!([]));
    assert_eq!(one["sign"], 1);
    assert_eq!(one["alternation"], "trivial");

    let three: Value =
        serde_json::from_str(&stdout_of(&["stats", "3", "--format", "json"])).unwrap();
    assert_eq!(three["inversions"], 1);
    assert_eq!(three["sign"], -1);

    let fields: Vec<&str> = one
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    for key in [
        "n",
        "values",
        "inversions",
        "descents",
        "sign",
        "alternation",
        "cycle_type",
        "order",
    ] {
        assert!(fields.contains(&key), "missing {key}");
    }
}

#[test]
fn stats_zero_rejected() {
    let assert = mea().args(["stats", "0"]).assert().code(2).stdout("");
    let stderr = String::from_utf8_lossy(&assert.get_output().stderr).into_owned();
    assert!(stderr.contains("n >= 1"), "{stderr}");
}

#[test]
fn table_plain() {
    let expected = "\
n  permutation  inversions  inv_formula  descent_count  sign  alternation
1  [1]          0           0            0              +1    trivial
2  [1,2]        0           0            0              +1    up_down
3  [2,1,3]      1           1            1              -1    down_up
4  [2,3,1,4]    2           2            1              +1    up_down
";
    mea()
        .args(["table", "4"])
        .assert()
        .success()
        .stdout(expected);
}

#[test]
fn table_single_row() {
    mea()
        .args(["table", "1", "--format", "csv"])
        .assert()
        .success()
        .stdout("n,permutation,inversions,inv_formula,descent_count,sign,alternation\n1,1,0,0,0,1,trivial\n");
}

#[test]
fn table_inversions_column_is_quarter_squares() {
    let csv = stdout_of(&["table", "12", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,permutation,inversions,inv_formula,descent_count,sign,alternation"
    );
    let inversions: Vec<u64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(inversions, [0, 0, 1, 2, 4, 6, 9, 12, 16, 20, 25, 30]);

    let rows: Vec<TableRow> =
        serde_json::from_str(&stdout_of(&["table", "12", "--format", "json"])).unwrap();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[4].permutation, vec![3, 1, 5, 2, 4]);
}

#[test]
fn verify_exit_codes() {
    mea().args(["verify", "1", "100"]).assert().code(0);
    mea().args(["verify", "1", "1"]).assert().code(0);
    mea().args(["verify", "0", "10"]).assert().code(2);
    mea().args(["verify", "10", "1"]).assert().code(2);
    mea()
        .args(["verify", "1", "10", "--oracle-cap", "11"])
        .assert()
        .code(2);
}

#[test]
fn verify_json_details() {
    let report: VerificationReport =
        serde_json::from_str(&stdout_of(&["verify", "1", "8", "--format", "json"])).unwrap();
    assert!(report.passed());
    let inv: Vec<String> = report
        .checks
        .iter()
        .filter(|c| c.claim == mea_core::ClaimId::InvFormula)
        .map(|c| c.detail.clone())
        .collect();
    let expected: Vec<String> = [0, 0, 1, 2, 4, 6, 9, 12]
        .iter()
        .map(|v| format!("inv={v} formula={v}"))
        .collect();
    assert_eq!(inv, expected);
    assert_eq!(report.oracle_cap, 8);
}

#[test]
fn verify_plain_summary() {
    let out = stdout_of(&["verify", "1", "20", "--oracle-cap", "10"]);
    assert!(out.starts_with("range: 1..=20  oracle cap: 10\n"));
    assert!(out.contains("ORACLE_EQ    pass  10/10\n"));
    assert!(out.contains("INV_BUCKETS  pass  20/20\n"));
    assert!(out.ends_with("status: pass\n"));
}

#[test]
fn inverse_golden() {
    for flag in [None, Some("--recursive")] {
        let run = |n: &str| {
            let mut args = vec!["inverse", n];
            args.extend(flag);
            stdout_of(&args)
        };
        assert_eq!(run("4"), "[3,1,2,4]\n");
        assert_eq!(run("1"), "[1]\n");
        assert_eq!(run("5"), "[2,4,1,5,3]\n");
    }
    for n in [6, 33, 250] {
        let n = n.to_string();
        assert_eq!(
            stdout_of(&["inverse", &n]),
            stdout_of(&["inverse", &n, "--recursive"])
        );
    }
    mea().args(["inverse", "0"]).assert().code(2);
}

#[test]
fn decompose_outputs() {
    mea().args(["decompose", "5"]).assert().success().stdout(
        "n: 5\nparity: odd\nprefix: [3,1,5]\nchild_n: 2\nshift_map: r <= 1 -> r+1, r >= 2 -> r+2\n",
    );
    let d: Value =
        serde_json::from_str(&stdout_of(&["decompose", "8", "--format", "json"])).unwrap();
    assert_eq!(
        d,
        serde_json::json!({
            "n": 8,
            "parity": "even",
            "prefix": [4, 5, 1, 8],
            "child_n": 4,
            "shift_map": {"threshold": 2, "low_offset": 1, "high_offset": 3}
        })
    );
    mea().args(["decompose", "2"]).assert().code(2);
}
