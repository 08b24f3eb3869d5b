//! End-to-end checks of the command-line surface: output shapes, exit
//! codes, the object-cap environment override, and trace files.

use ggc_core::families;
use ggc_core::graph::total_graph;
use ggc_core::play::MatchTrace;
use std::process::Command;

fn ggc() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ggc"));
    cmd.env_remove("GGC_OBJECT_CAP");
    cmd
}

fn run(cmd: &mut Command) -> (String, String, i32) {
    let out = cmd.output().expect("ggc runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn solve_fixed_k_winner() {
    let (stdout, _, code) = run(ggc().args([
        "solve", "--param", "chi-g", "--mode", "total", "--graph6", "Bw", "--k", "4",
    ]));
    assert_eq!(code, 0);
    assert!(stdout.contains("winner=Bob"), "{stdout}");

    let (stdout, _, code) = run(ggc().args([
        "solve", "--param", "gcol", "--mode", "total", "--graph6", "Bw", "--k", "5",
    ]));
    assert_eq!(code, 0);
    assert!(stdout.contains("winner=Alice"), "{stdout}");
}

#[test]
fn solve_emits_win_vector() {
    let (stdout, _, code) = run(ggc().args([
        "solve", "--param", "chi-g", "--mode", "total", "--graph6", "Bw",
    ]));
    assert_eq!(code, 0);
    assert!(stdout.contains("k-winners: 1=B 2=B 3=B 4=B 5=A"), "{stdout}");
}

#[test]
fn orient_lists_arcs_in_edge_order() {
    let (stdout, _, code) = run(ggc().args(["orient", "--graph6", "Bw"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("dplus=1"), "{stdout}");
    let arcs = stdout
        .lines()
        .find_map(|l| l.strip_prefix("orientation: "))
        .expect("orientation line");
    assert_eq!(arcs.split_whitespace().count(), 3);
    // infeasible request shows the dense-subgraph certificate
    let (stdout, _, code) = run(ggc().args(["orient", "--graph6", "C~", "--k", "1"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("feasible=no"), "{stdout}");
    assert!(stdout.contains("certificate: 4 vertices"), "{stdout}");
}

#[test]
fn verify_writes_replayable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace_path = dir.path().join("match.trace");
    let (stdout, _, code) = run(ggc().args([
        "verify",
        "--strategy",
        "activation",
        "--graph6",
        "Bw",
        "--trace",
        trace_path.to_str().unwrap(),
        "--seed",
        "1",
    ]));
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("winner=Alice"), "{stdout}");
    let text = std::fs::read_to_string(&trace_path).unwrap();
    let trace = MatchTrace::parse(&text).unwrap();
    let t = total_graph(&families::complete(3).unwrap());
    trace.replay(&t).unwrap();
    assert_eq!(trace.k, 6); // delta + 3*dplus + 1 = 2 + 3 + 1
}

#[test]
fn verify_exhaustive_ok_exit_zero() {
    let (stdout, _, code) = run(ggc().args([
        "verify", "--strategy", "activation", "--graph6", "Cw", "--exhaustive",
    ]));
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("outcome=ok"), "{stdout}");
}

#[test]
fn verify_budget_exit_three() {
    let (stdout, _, code) = run(ggc().args([
        "verify",
        "--strategy",
        "activation",
        "--graph6",
        "Cw",
        "--exhaustive",
        "--budget-nodes",
        "2",
    ]));
    assert_eq!(code, 3, "{stdout}");
    assert!(stdout.contains("outcome=budget"), "{stdout}");
}

#[test]
fn lab_budget_skips_exit_three_with_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rows.csv");
    let (stdout, _, code) = run(ggc().args([
        "lab",
        "--corpus",
        "g6:Bw",
        "--tasks",
        "gcol_total",
        "--out",
        out.to_str().unwrap(),
        "--budget-nodes",
        "1",
    ]));
    assert_eq!(code, 3, "{stdout}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("skipped"), "partial output missing: {text}");
}

#[test]
fn lab_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rows.json");
    let (_, _, code) = run(ggc().args([
        "lab",
        "--corpus",
        "g6:Bw",
        "--tasks",
        "all",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, 0);
    let rows =
        ggc_core::lab::read_rows_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].chi_g_total.and_then(ggc_core::lab::Stat::value), Some(5));
}

#[test]
fn object_cap_env_is_honored() {
    let (_, stderr, code) = run(ggc()
        .env("GGC_OBJECT_CAP", "5")
        .args(["solve", "--param", "gcol", "--mode", "edge", "--graph6", "Bw"]));
    assert_eq!(code, 1, "{stderr}");
    assert!(stderr.contains("cap"), "{stderr}");
    // a bad cap value is rejected outright
    let (_, stderr, code) = run(ggc()
        .env("GGC_OBJECT_CAP", "900")
        .args(["solve", "--param", "gcol", "--mode", "edge", "--graph6", "Bw"]));
    assert_eq!(code, 1);
    assert!(stderr.contains("GGC_OBJECT_CAP"), "{stderr}");
}

#[test]
fn usage_errors_exit_one() {
    let (_, _, code) = run(ggc().args(["solve", "--param", "nonsense"]));
    assert_eq!(code, 1);
    let (_, stderr, code) = run(ggc().args([
        "verify", "--strategy", "unknown", "--graph6", "Bw",
    ]));
    assert_eq!(code, 1);
    assert!(stderr.contains("activation"), "{stderr}");
}

#[test]
fn corpus_file_source_with_comments() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("graphs.g6");
    std::fs::write(&corpus, "# two graphs\nBw\n@\n").unwrap();
    let out = dir.path().join("rows.csv");
    let (stdout, _, code) = run(ggc().args([
        "lab",
        "--corpus",
        &format!("file:{}", corpus.display()),
        "--tasks",
        "bounds",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("rows=2"), "{stdout}");
}
