use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use geolab_core::Position;
use geolab_reductions::ReductionArtifact;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("geolab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn geolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geolab")).args(args).env_remove("GEOLAB_SEED").output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_geolab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn draw_path_with_draw_on_is_a_draw() {
    let o = geolab(&["solve", p(&data("draw_path.json")), "--draw-on", "v5:L", "--pv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("result      Draw"), "{out}");
    assert!(out.contains("pv "), "{out}");
}

#[test]
fn variant_override_changes_the_winner() {
    let uir = stdout(&geolab(&["solve", p(&data("triangle_tail.json"))]));
    assert!(uir.contains("RightWins") && uir.contains("maximum matching"), "{uir}");
    let uif = stdout(&geolab(&["solve", p(&data("triangle_tail.json")), "--variant", "UIF"]));
    assert!(uif.contains("LeftWins") && uif.contains("0 2 3"), "{uif}");
}

#[test]
fn malformed_json_exits_1_with_location() {
    let o = geolab(&["solve", p(&data("broken.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("broken.json:4:10"), "{}", stderr(&o));
}

#[test]
fn tiny_budget_exits_2() {
    let o = geolab(&["solve", p(&data("grid.json")), "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("exhausted"));
}

#[test]
fn solve_json_report() {
    let o = geolab(&["solve", p(&data("edge.json")), "--json"]);
    let r: geolab_core::SolveReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.result(), geolab_core::GameResult::LeftWins);
}

#[test]
fn dif_on_worked_formula_has_38_vertices_and_round_trips() {
    let out = scratch("fig4.dif.json");
    let dot = scratch("fig4.dif.dot");
    let o = geolab(&["reduce", "dif", p(&data("fig4.qdimacs")), "--out", p(&out), "--dot", p(&dot)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("vertices    38"));
    assert!(stdout(&o).contains("structure   PASS"));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let text = std::fs::read_to_string(&out).unwrap();
    let a: ReductionArtifact = serde_json::from_str(&text).unwrap();
    let pos: Position = serde_json::from_str(&text).unwrap();
    assert_eq!(pos, a.position);
    assert_eq!(a.rebuild().unwrap(), a);
    let solved = geolab(&["solve", p(&out), "--budget", "100000000"]);
    assert_eq!(solved.status.code(), Some(0), "{}", stderr(&solved));
}

#[test]
fn dpf_pads_one_clause_to_four_with_a_notice() {
    let out = scratch("one.dpf.json");
    let o = geolab(&["reduce", "DPF", p(&data("one_clause.qdimacs")), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("notice: normalized the formula for DPF: n 2 -> 2, m 1 -> 4"), "{}", stdout(&o));
    let a: ReductionArtifact = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    match a.source {
        geolab_reductions::Source::Qbf(q) => assert_eq!(q.m(), 4),
        other => panic!("{other:?}"),
    }
}

#[test]
fn uir4_on_a_position_gives_a_k4_undirected_artifact() {
    let out = scratch("cycle.uir4.json");
    let o = geolab(&["reduce", "uir4", p(&data("dir_cycle.json")), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let a: ReductionArtifact = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(a.position.variant().to_string(), "UIR4");
}

#[test]
fn reduce_surfaces_preconditions() {
    let o = geolab(&["reduce", "uir4", p(&data("triangle_tail.json")), "--out", p(&scratch("x.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("UIR4 needs"), "{}", stderr(&o));
    let o = geolab(&["reduce", "dif", p(&data("draw_path.json")), "--out", p(&scratch("y.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}

#[test]
fn bundled_goldens_pass() {
    let report = scratch("goldens.json");
    let o = geolab(&["verify", "--goldens", "--report", p(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["campaigns"].as_array().unwrap().len() >= 10);
}

#[test]
fn fault_spec_exits_nonzero() {
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("../geolab-verify/campaigns/fault.json");
    let o = geolab(&["verify", p(&spec)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn empty_spec_passes_with_a_warning() {
    let spec = scratch("empty.json");
    std::fs::write(&spec, "{\"campaigns\": []}").unwrap();
    let o = geolab(&["verify", p(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).contains("0 campaigns, 0 failed"));
}

#[test]
fn illegal_climb_is_reprompted_with_the_height_rule() {
    let o = with_stdin(&["play", p(&data("climb.json")), "--human", "L"], "a b a\n0 3 0\nquit\n");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("illegal move: height rule"), "{out}");
    assert!(out.contains("computer plays"), "{out}");
}

#[test]
fn stuck_computer_means_you_win() {
    let o = with_stdin(&["play", p(&data("edge.json")), "--ai", "random"], "a b a\n");
    assert!(stdout(&o).contains("You win"), "{}", stdout(&o));
}

#[test]
fn human_as_right_waits_for_the_computer() {
    let o = with_stdin(&["play", p(&data("edge.json")), "--human", "R"], "");
    assert!(stdout(&o).contains("computer plays 0 1 0"), "{}", stdout(&o));
    assert!(stdout(&o).contains("You lose"), "{}", stdout(&o));
}

#[test]
fn matching_ai_refuses_non_bipartite_uif() {
    let o = with_stdin(&["play", p(&data("triangle_tail_uif.json")), "--ai", "matching"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("non-bipartite"), "{}", stderr(&o));
}

#[test]
fn random_play_is_reproducible_under_geolab_seed() {
    let run = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_geolab"))
            .args(["play", p(&data("draw_path.json")), "--human", "R", "--ai", "random"])
            .env("GEOLAB_SEED", seed)
            .stdin(Stdio::null())
            .output()
            .unwrap();
        stdout(&o)
    };
    assert_eq!(run("5"), run("5"));
    let bad = Command::new(env!("CARGO_BIN_EXE_geolab")).args(["verify", "--goldens"]).env("GEOLAB_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
