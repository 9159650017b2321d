use std::process::{Command, Output};

use abelian_words::{abelian_complexity_profile, StabilizationPolicy, WordSpec};
use abelian_words_cli::export::{power_rows_from_csv, profile_from_csv};
use abelian_words_cli::repro::RunReport;

fn abw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abw"))
        .args(args)
        .env_remove("ABW_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_prints_prefix() {
    let o = abw(&["gen", "--spec", "tm", "--nmax", "16"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0110100110010110\n");
}

#[test]
fn abelian_csv_matches_library() {
    let o = abw(&["abelian", "--spec", "tribonacci", "--nmax", "42"]);
    assert!(o.status.success());
    let parsed = profile_from_csv(&stdout(&o)).unwrap();
    let direct =
        abelian_complexity_profile(&WordSpec::tribonacci(), 42, &StabilizationPolicy::default())
            .unwrap();
    assert_eq!(parsed, direct.entries);
    assert!(stdout(&o).starts_with("n,value,stabilized,L_used\n1,3,true,"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "powers",
        "--spec",
        "fibonacci",
        "--k",
        "3",
        "--positions",
        "300",
        "--mmax",
        "40",
        "--format",
        "json",
    ];
    let a = abw(&args);
    let b = abw(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["balance", "--spec", "img(rauzy,tm)", "--nmax", "60"];
    assert_eq!(abw(&args).stdout, abw(&args).stdout);
}

#[test]
fn powers_csv_round_trips() {
    let o = abw(&[
        "powers",
        "--spec",
        "tm",
        "--k",
        "2",
        "--positions",
        "50",
        "--mmax",
        "10",
    ]);
    assert!(o.status.success());
    let rows = power_rows_from_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 50);
    assert_eq!(
        (rows[0].pos, rows[0].min_period, rows[0].k),
        (0, Some(2), 2)
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cover.json");
    let o = abw(&[
        "cover",
        "--spec",
        "fibonacci",
        "--k",
        "2",
        "--positions",
        "200",
        "--mmax",
        "50",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        "{\"l1\":1,\"l2\":5,\"uncovered\":[]}\n"
    );
}

#[test]
fn reproduce_pass_exits_zero() {
    let o = abw(&["reproduce", "tribonacci-sequence"]);
    assert_eq!(o.status.code(), Some(0));
    let r: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.observed, r.expected);
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(
        abw(&["gen", "--spec", "fix(nosuch,0)", "--nmax", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(abw(&["abelian", "--spec", "tm"]).status.code(), Some(2));
    assert_eq!(abw(&["reproduce", "no-such-target"]).status.code(), Some(2));
    assert_eq!(
        abw(&["powers", "--spec", "tm", "--k", "0", "--mmax", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cap_makes_reproduce_inconclusive() {
    let o = Command::new(env!("CARGO_BIN_EXE_abw"))
        .args(["reproduce", "dekking-free"])
        .env("ABW_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = abw(&["--cap", "10", "gen", "--spec", "tm", "--nmax", "11"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn central_check_passes() {
    let o = abw(&["factors", "--central", "--nmax", "60"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 61);
}
