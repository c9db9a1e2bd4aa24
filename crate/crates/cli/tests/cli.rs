use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use duality_cli::{counterexample_exit_code, exit_code};
use duality_core::verify::Verdict;

fn gmcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmcheck")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gm_over_z8_exits_zero_and_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = gmcheck(&["verify", "gm", "--ring", "Z/8", "--seq", "2", "--mode", "S", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let g = golden("z8_gm.json");
    if !g.exists() {
        std::fs::create_dir_all(g.parent().unwrap()).unwrap();
        std::fs::write(&g, &body).unwrap();
    }
    assert_eq!(body, std::fs::read_to_string(&g).unwrap());
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["targets"][0]["verdict"], "verified");
    assert!(!body.contains("wall_time"));
    let timing: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json.timing.json")).unwrap()).unwrap();
    assert!(timing["wall_time_ms"].is_u64());
}

#[test]
fn report_bytes_do_not_depend_on_threads() {
    let run = |t: &str| {
        let out = gmcheck(&["verify", "gm", "--ring", "Z/8", "--seq", "2", "--mode", "S", "--format", "json", "--threads", t]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("2"));
}

#[test]
fn counterexample_exits_zero_on_refutation() {
    let out = gmcheck(&["counterexample", "--ring", "Z", "--elem", "2", "--jmax", "6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["targets"][0]["verdict"], "refuted-at-levels");
    let rhs = &v["targets"][0]["towers"]["rhs"]["levels"];
    for j in 0..=6u32 {
        assert_eq!(rhs[j as usize]["cohomology"]["0"], format!("Z/{}", 1u64 << (j + 1)));
    }
    let out = gmcheck(&["counterexample", "--ring", "F2[t]", "--elem", "t", "--jmax", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("counterexample\tverdict\trefuted-at-levels\n"));
}

#[test]
fn wpr_certifies_the_unit_ideal() {
    let out = gmcheck(&["wpr", "--ring", "Z", "--seq", "2,3", "--jmax", "4", "--bound", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["verdict"].as_str().unwrap().starts_with("certified"));
}

#[test]
fn mixed_variance_in_mode_t_is_inconclusive() {
    let out = gmcheck(&["verify", "gm", "--ring", "Z", "--seq", "2", "--jmax", "5", "--bound", "3"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).ends_with("gm\tverdict\tinconclusive\n"));
}

#[test]
fn small_bound_is_inconclusive() {
    let out = gmcheck(&["verify", "lemma20", "--ring", "Z", "--seq", "2", "--jmax", "4", "--bound", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn refuted_verdicts_map_to_two() {
    assert_eq!(exit_code(Verdict::Verified), 0);
    assert_eq!(exit_code(Verdict::RefutedAtLevels), 2);
    assert_eq!(exit_code(Verdict::Inconclusive), 3);
    assert_eq!(counterexample_exit_code(Verdict::RefutedAtLevels), 0);
    assert_eq!(counterexample_exit_code(Verdict::Verified), 2);
    assert_eq!(counterexample_exit_code(Verdict::Inconclusive), 3);
}

#[test]
fn errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["verify", "gm", "--ring", "Z/0x"],
        &["verify", "lemma1", "--ring", "Z/8", "--seq", "3", "--mode", "S"],
        &["verify", "lemma1", "--ring", "Z/8", "--seq", "q"],
        &["verify", "lemma1", "--ring", "Z/8", "--seq", "2", "--m-complex", "/nonexistent.json"],
        &["counterexample", "--ring", "Z", "--elem", "1"],
        &["wpr", "--ring", "Z", "--seq", "2", "--jmax", "2", "--bound", "4"],
        &["frobnicate"],
        &["verify", "lemma9"],
    ];
    for args in cases {
        let out = gmcheck(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(code(&gmcheck(&["--help"])), 0);
}

#[test]
fn complexes_load_from_literals() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, r#"{"ring": "Z/8", "lo": 0, "ranks": [1, 1], "diffs": [[[2]]]}"#).unwrap();
    let out = gmcheck(&["verify", "lemma1", "--ring", "Z/8", "--seq", "2", "--mode", "S", "--m-complex", m.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, r#"{"ring": "Z/4", "lo": 0, "ranks": [1]}"#).unwrap();
    let out = gmcheck(&["verify", "lemma1", "--ring", "Z/8", "--seq", "2", "--mode", "S", "--m-complex", wrong.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn text_output_has_one_line_per_map() {
    let out = gmcheck(&["verify", "lemma4", "--ring", "Z/8", "--seq", "2", "--mode", "S"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let maps = text.lines().filter(|l| l.contains("\tpass\t") || l.contains("\tfail\t")).count();
    assert_eq!(maps, 2);
    assert!(text.lines().all(|l| l.starts_with("lemma4\t")));
}

#[test]
fn towers_over_a_nilpotent_element_are_ess_iso() {
    for which in ["rgamma", "llambda"] {
        let out = gmcheck(&["tower", which, "--ring", "Z/8", "--seq", "2", "--format", "json"]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["certificate"]["kind"], "ess-iso");
    }
    let out = gmcheck(&["tower", "rgamma", "--ring", "Z", "--seq", "2"]);
    assert_eq!(code(&out), 3);
}
