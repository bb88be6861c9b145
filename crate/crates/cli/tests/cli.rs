use std::path::PathBuf;
use std::process::{Command, Output};

use piano_core::cyclic_geometry::ArcSet;
use piano_core::generators::{enumerate_limit_generators, fan_generator};
use piano_core::surface_dissections::{ChordArc, DissectionSet};

fn piano_cat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_piano-cat"))
        .args(args)
        .env_remove("PIANO_CAT_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("piano-cat-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn keyboard_example() -> DissectionSet {
    let c = ChordArc::of;
    DissectionSet::new(
        5,
        vec![c(0, 4), c(0, 8), c(2, 4), c(6, 8)],
        vec![c(0, 1), c(3, 4), c(4, 5), c(8, 9), c(6, 7)],
    )
    .unwrap()
}

#[test]
fn enumerate_counts_and_round_trip() {
    let o = piano_cat(&["enumerate", "--n", "2", "--equiv", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed: Vec<ArcSet> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed.len(), 3);
    assert_eq!(parsed, enumerate_limit_generators(2, true).unwrap());

    let o = piano_cat(&["enumerate", "--n", "1"]);
    let parsed: Vec<ArcSet> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed.len(), 1);

    let o = piano_cat(&["enumerate", "--n", "3", "--objects", "dissections"]);
    let parsed: Vec<DissectionSet> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed.len(), enumerate_limit_generators(3, false).unwrap().len());

    let o = piano_cat(&["enumerate", "--n", "2", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 4);
}

#[test]
fn enumerate_cap_is_a_usage_error() {
    assert_eq!(piano_cat(&["enumerate", "--n", "9"]).status.code(), Some(2));
    assert_eq!(piano_cat(&["enumerate", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn enumerate_renders_each_record() {
    let o = piano_cat(&["enumerate", "--n", "2", "--equiv", "--render", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("<svg").count(), 3);
}

#[test]
fn verify_small_sizes() {
    let o = piano_cat(&["verify", "all", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn literal_piano_as_paths_fails_at_three() {
    let o = piano_cat(&["verify", "all", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summaries: Vec<_> = lines.iter().filter(|v| v.get("failures").is_some()).collect();
    for s in &summaries {
        assert_eq!(s["pass"], s["check"] != "piano-as-paths", "{s}");
    }
    assert!(lines.iter().any(|v| v["check"] == "piano-as-paths" && v.get("witness").is_some()));
}

#[test]
fn verify_derived_equivalence_choices() {
    let o = piano_cat(&["verify", "derived-equiv", "--n", "4", "--choice", "delta:1", "--window", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = piano_cat(&["verify", "beta-delta", "--n", "4", "--choice", "beta:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(piano_cat(&["verify", "beta-delta", "--n", "2", "--choice", "gamma:1"]).status.code(), Some(2));
}

#[test]
fn render_fan_arc_diagram() {
    let path = scratch("fan3.json", &serde_json::to_string(&fan_generator(3)).unwrap());
    let p = path.to_str().unwrap();
    let o = piano_cat(&["render", "--input", p, "--kind", "arc-diagram", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("<path class=\"chord").count(), 5);
    assert_eq!(s.matches("fill=\"white\"").count(), 3);
    let again = piano_cat(&["render", "--input", p, "--kind", "arc-diagram", "--format", "svg"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn render_keyboard_quiver_dot() {
    let path = scratch("keyboard.json", &serde_json::to_string(&keyboard_example()).unwrap());
    let o = piano_cat(&["render", "--input", path.to_str().unwrap(), "--kind", "quiver", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("label=").count(), 9);
    assert_eq!(s.matches("style=solid").count(), 8);
    assert_eq!(s.matches("style=dotted").count(), 3);
    let q = piano_cat(&["quiver", "--input", path.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(q.stdout, o.stdout);
}

#[test]
fn render_empty_dissection() {
    let path = scratch("empty.json", r#"{"n": 1, "red": [], "binding": []}"#);
    let o = piano_cat(&["render", "--input", path.to_str().unwrap(), "--kind", "dissection"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("class=\"boundary\"").count(), 1);
    assert_eq!(s.matches("<path").count(), 0);
}

#[test]
fn render_errors_are_usage_errors() {
    let bad = scratch("bad.json", "{\"n\": 3, \"arcs\": [");
    let o = piano_cat(&["render", "--input", bad.to_str().unwrap(), "--kind", "arc-diagram"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parsing"));
    let good = scratch("fan2.json", &serde_json::to_string(&fan_generator(2)).unwrap());
    let o = piano_cat(&["render", "--input", good.to_str().unwrap(), "--kind", "stave"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn window_from_environment() {
    let run = |w: &str| {
        Command::new(env!("CARGO_BIN_EXE_piano-cat"))
            .args(["homtable", "--source", "{a0, m0(0)}", "--target", "{a0, m0(2)}"])
            .env("PIANO_CAT_WINDOW", w)
            .output()
            .unwrap()
    };
    let o = run("3");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dims"].as_object().unwrap().len(), 7);
    assert_eq!(run("1").status.code(), Some(2));
}

#[test]
fn homtable_of_fan_generator() {
    let o = piano_cat(&["homtable", "--fan", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    // Header plus five rows for each of the thirteen degrees.
    assert_eq!(s.lines().count(), 1 + 5 * 13);
    assert!(s.lines().any(|l| l == "1,0,0,1,1,1,1"));
}
