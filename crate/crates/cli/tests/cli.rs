use std::fs;
use std::process::{Command, Output};

use chrobak::fixtures;
use chrobak::oracle::determinize_with_limit;
use chrobak::semilinear::{EventuallyPeriodicSet, ProgressionSet};
use tempfile::TempDir;

fn chrobak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chrobak"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn single_state_accepts_only_zero() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one.nfa", "states 1\ninitial 0\nfinal 0\n");
    let out = chrobak(&["convert", &f]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn empty_language_prints_nothing_and_a_note() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "none.nfa", "states 2\ninitial 0\nedge 0 1\n");
    let out = chrobak(&["convert", &f]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
}

#[test]
fn example1_conversion_matches_determinization() {
    let out = chrobak(&["convert", "--fixture", "example1"]);
    assert_eq!(code(&out), 0);
    let ps: ProgressionSet = stdout(&out).parse().unwrap();
    let got = EventuallyPeriodicSet::from_progressions(&ps).unwrap();
    let expected = determinize_with_limit(&fixtures::example1_graph(), 24).unwrap();
    assert_eq!(got, expected);

    let oracle = chrobak(&["oracle", "--fixture", "example1"]);
    assert_eq!(stdout(&oracle), expected.to_string());
}

#[test]
fn json_output_carries_schema_and_bounds() {
    let out = chrobak(&["convert", "--fixture", "self-loop", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["zero_accepted"], true);
    assert!(v["n_prime"].as_u64().unwrap() >= 1);
    assert!(v["progressions"].is_array());
}

#[test]
fn equal_on_itself_and_across_formats() {
    let dir = TempDir::new().unwrap();
    let cycle = write(
        &dir,
        "cycle.nfa",
        "states 2\ninitial 0\nfinal 0\nedge 0 1\nedge 1 0\n",
    );
    let evens = write(&dir, "evens.aps", "0+2N\n");
    let all = write(&dir, "all.aps", "0+2N\n1+2N\n");

    assert_eq!(code(&chrobak(&["equal", &cycle, &cycle])), 0);
    let out = chrobak(&["equal", &evens, &cycle]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "equal\n");

    let out = chrobak(&["equal", &evens, &all]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "not equal\nwitness 1\n");
}

#[test]
fn explicit_kind_overrides_extension() {
    let dir = TempDir::new().unwrap();
    let aps = write(&dir, "evens.txt", "0+2N\n");
    let nfa = write(
        &dir,
        "cycle.txt",
        "states 2\ninitial 0\nfinal 0\nedge 0 1\nedge 1 0\n",
    );
    let out = chrobak(&["equal", &aps, &nfa, "--lhs-kind", "aps"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn converted_output_is_equal_to_its_source() {
    let dir = TempDir::new().unwrap();
    for name in fixtures::NAMES {
        let nfa = write(
            &dir,
            &format!("{name}.nfa"),
            &fixtures::by_name(name).unwrap().to_string(),
        );
        let aps = dir.path().join(format!("{name}.aps"));
        let out = chrobak(&["convert", "--fixture", name]);
        fs::write(&aps, out.stdout).unwrap();
        let out = chrobak(&["equal", &nfa, aps.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
    }
}

#[test]
fn cnf_output_passes_check_and_keeps_the_language() {
    let dir = TempDir::new().unwrap();
    // large normal forms go through determinization, small ones through conversion
    for (name, det_limit) in [
        ("example1", "2000"),
        ("parallel-cycles", "0"),
        ("sequential-sccs", "0"),
    ] {
        let out = chrobak(&["convert", "--fixture", name, "--format", "cnf"]);
        assert_eq!(code(&out), 0);
        let cnf = write(&dir, &format!("{name}.cnf"), &stdout(&out));
        assert_eq!(code(&chrobak(&["check-cnf", &cnf])), 0, "{name}");
        let src = write(
            &dir,
            &format!("{name}.nfa"),
            &fixtures::by_name(name).unwrap().to_string(),
        );
        let out = chrobak(&["equal", &src, &cnf, "--det-limit", det_limit]);
        assert_eq!(code(&out), 0, "{name}");
    }
    assert_eq!(code(&chrobak(&["check-cnf", "--fixture", "single-scc"])), 1);
}

#[test]
fn dot_export_writes_a_digraph() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("out.dot");
    let out = chrobak(&[
        "convert",
        "--fixture",
        "two-cycle",
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("digraph"));
}

#[test]
fn gcd_of_three_cycle_with_tail() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "tail.nfa",
        "states 5\ninitial 0\nfinal 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 1\nedge 3 4\n",
    );
    let out = chrobak(&["gcds", &f]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("size 3 gcd 3"), "{text}");
}

#[test]
fn member_reports_through_exit_code() {
    let out = chrobak(&["member", "--fixture", "example1", "--length", "17"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "true\n"));
    let out = chrobak(&["member", "--fixture", "example1", "--length", "30"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (1, "false\n"));
}

#[test]
fn sccs_lists_condensation() {
    let out = chrobak(&["sccs", "--fixture", "sequential-sccs"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("nontrivial")).count(), 2);
    assert!(text.lines().any(|l| l.starts_with("edge ")));
}

#[test]
fn fuzz_with_no_instances_still_checks_fixtures() {
    let out = chrobak(&["fuzz", "--count", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn fuzz_default_campaign_passes() {
    let out = chrobak(&[
        "fuzz",
        "--count",
        "500",
        "--max-states",
        "10",
        "--seed",
        "42",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn naive_method_is_caught() {
    let out = chrobak(&["fuzz", "--count", "200", "--naive"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn fuzz_rejects_oversized_instances() {
    assert_eq!(code(&chrobak(&["fuzz", "--max-states", "30"])), 2);
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.nfa", "states 2\ninitial 0\nedge 0 5\n");
    let out = chrobak(&["convert", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.nfa"));

    let bad_aps = write(&dir, "bad.aps", "3+0N\n");
    assert_eq!(code(&chrobak(&["equal", &bad_aps, &bad_aps])), 2);
    assert_eq!(code(&chrobak(&["convert", "/nonexistent/x.nfa"])), 2);
    assert_eq!(code(&chrobak(&["convert"])), 2);
}

#[test]
fn oracle_limit_exits_with_three() {
    let out = chrobak(&["oracle", "--fixture", "example1", "--det-limit", "5"]);
    assert_eq!(code(&out), 3);
}
