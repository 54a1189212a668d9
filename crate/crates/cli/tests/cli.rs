use std::process::{Command, Output};

use menon::identities::VerificationReport;

fn menon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_menon"))
        .args(args)
        .env_remove("ARITH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn eval_klee_phi() {
    let out = menon(&["eval", "--fn", "klee_phi", "--n", "12", "--s", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "9\n");
}

#[test]
fn verify_menon_six() {
    let out = menon(&["verify", "--identity", "menon", "--n", "6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((r.lhs.unwrap().get(), r.rhs.unwrap().get(), r.matched), (8, 8, true));
}

#[test]
fn verify_main_small() {
    let out = menon(&[
        "verify",
        "--identity",
        "main",
        "--n",
        "2",
        "--s",
        "2",
        "--k",
        "1",
        "--r",
        "1",
        "--a",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((r.lhs.unwrap().get(), r.rhs.unwrap().get()), (15, 15));
}

#[test]
fn negative_shifts_are_accepted() {
    let out = menon(&["verify", "--identity", "li-kim", "--n", "10", "--k", "2", "--a", "-1,13"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn empty_sweep_exits_zero() {
    let out = menon(&["sweep", "--identity", "menon", "--n", "10..1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "checked=0 matched=0 mismatched=0 skipped=0\n");
}

#[test]
fn sweep_reports_totals() {
    let out = menon(&["sweep", "--identity", "sury", "--n", "1..40", "--k", "1..3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "checked=120 matched=120 mismatched=0 skipped=0\n");
}

#[test]
fn falsified_rhs_exits_one() {
    let out = menon(&["verify", "--identity", "menon", "--n", "6", "--falsify-rhs"]);
    assert_eq!(code(&out), 1);
    let out = menon(&["sweep", "--identity", "menon", "--n", "1..5", "--falsify-rhs"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).ends_with("checked=5 matched=0 mismatched=5 skipped=0\n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--identity", "menon", "--n", "6", "--bogus"][..],
        &["verify", "--identity", "nonsense", "--n", "6"],
        &["verify", "--identity", "menon"],
        &["eval", "--fn", "klee_phi", "--n", "12", "--s", "0"],
        &["sweep", "--identity", "menon", "--n", "1..x"],
        &["eval", "--fn", "klee_phi", "--n", "12", "--jobs", "0"],
        &["verify", "--identity", "li-kim", "--n", "10", "--k", "2", "--a", "1"],
    ] {
        let out = menon(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_aborts_exit_three() {
    let out = menon(&["verify", "--identity", "sury", "--n", "500", "--k", "3", "--budget", "100"]);
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_menon"))
        .args(["verify", "--identity", "sury", "--n", "50", "--k", "2"])
        .env("ARITH_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_menon"))
        .args(["verify", "--identity", "sury", "--n", "50", "--k", "2", "--budget", "5000"])
        .env("ARITH_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "flag overrides the environment");
}

#[test]
fn sweep_skips_are_not_failures() {
    let out = menon(&["sweep", "--identity", "sury", "--n", "1..20", "--k", "1..2", "--budget", "100"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.ends_with("mismatched=0 skipped=8\n"), "{text}");
}

#[test]
fn output_is_identical_across_worker_counts() {
    let base = [
        "sweep",
        "--identity",
        "main",
        "--n",
        "1..64",
        "--s",
        "1..3",
        "--k",
        "1..2",
        "--r",
        "0..1",
        "--max-modulus",
        "64",
        "--random-shifts",
        "2",
        "--seed",
        "7",
    ];
    for format in ["json", "csv", "table"] {
        let runs: Vec<Vec<u8>> = ["1", "8"]
            .iter()
            .map(|jobs| {
                let mut args = base.to_vec();
                args.extend(["--format", format, "--jobs", jobs, "--all"]);
                let out = menon(&args);
                assert_eq!(code(&out), 0);
                out.stdout
            })
            .collect();
        assert_eq!(runs[0], runs[1], "{format}");
    }
}

#[test]
fn json_round_trips() {
    let out =
        menon(&["sweep", "--identity", "progression", "--n", "1..12", "--s", "1..2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for item in doc["reports"].as_array().unwrap() {
        let r: VerificationReport = serde_json::from_value(item.clone()).unwrap();
        assert_eq!(serde_json::to_value(&r).unwrap(), *item);
    }
    assert_eq!(doc["summary"]["mismatched"], 0);
}

#[test]
fn csv_has_the_report_columns() {
    let out = menon(&["sweep", "--identity", "menon", "--n", "1..3", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "identity,params,lhs,rhs,matched,terms,elapsed_ns,failure");
    assert_eq!(lines.next().unwrap(), "menon,n=1,1,1,true,1,0,");
    assert_eq!(lines.count(), 2);
}

#[test]
fn factor_and_group() {
    let out = menon(&["factor", "--n", "18446744073709551617"]);
    assert_eq!(stdout(&out), "18446744073709551617 = 274177 * 67280421310721\n");
    let out = menon(&["factor", "--n", "618970019642690137449562111"]);
    assert_eq!(code(&out), 2, "2^89 - 1 is outside the supported primality range");
    let out = menon(&["group", "--factors", "2,4", "--s", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["klee_phi"], 7);
    assert_eq!(doc["tarnauceanu_phi"], 4);
}

#[test]
fn bench_reports_three_strategies() {
    let out = menon(&[
        "bench",
        "--fn",
        "klee_phi",
        "--limit",
        "1000000",
        "--oracle-limit",
        "200",
        "--reps",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let strategies: Vec<&str> =
        doc["rows"].as_array().unwrap().iter().map(|r| r["strategy"].as_str().unwrap()).collect();
    assert_eq!(strategies, ["oracle", "closed_form", "sieve"]);
    assert_eq!(doc["spot_check"]["agree"], true);
    assert_eq!(doc["spot_check"]["points"], 100);
}
