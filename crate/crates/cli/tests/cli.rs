use std::path::PathBuf;
use std::process::{Command, Output};

fn horizon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horizon"))
        .args(args)
        .env_remove("HORIZON_PARALLEL")
        .output()
        .expect("binary runs")
}

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_games_tags_natures() {
    let o = horizon(&["list-games"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines.iter().filter(|l| l.ends_with("\tD")).count(), 3);
    assert_eq!(lines.iter().filter(|l| l.ends_with("\tS")).count(), 3);
}

#[test]
fn play_is_reproducible() {
    let args = ["play", "--game", "corridor_race", "--level", "0", "--agent", "random", "--seed", "1"];
    let a = horizon(&args);
    let b = horizon(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let record: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(record["agent"], "random");
    assert!(record["win"] == 0 || record["win"] == 1);
}

#[test]
fn play_trace_goes_to_stderr() {
    let o = horizon(&["play", "--game", "invaders", "--agent", "rhea:P=2,L=4", "--budget", "16", "--trace"]);
    assert!(o.status.success());
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let first: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(first["budget"], 16);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(horizon(&["list-games", "--bogus"]).status.code(), Some(1));
    assert_eq!(horizon(&["play", "--game", "invaders"]).status.code(), Some(1));
    assert_eq!(horizon(&["play", "--game", "invaders", "--agent", "rhea:P=0"]).status.code(), Some(1));
    assert_eq!(horizon(&["--help"]).status.code(), Some(0));
}

#[test]
fn runtime_failures_exit_2() {
    assert_eq!(horizon(&["play", "--game", "nosuchgame", "--agent", "random"]).status.code(), Some(2));
    assert_eq!(horizon(&["sweep", "--config", "/nonexistent.toml"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().to_string_lossy().into_owned();
    assert_eq!(horizon(&["rank", "--results", &r]).status.code(), Some(2));
}

#[test]
fn smoke_sweep_fills_the_grid_and_renders() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let o = horizon(&["sweep", "--config", &config("paper.toml"), "--smoke", "--out", &out, "--parallel", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let grid: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("sweep.json")).unwrap()).unwrap();
    let cells = grid["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 49);
    for c in cells {
        // 6 games x 2 levels x 2 repeats behind every cell.
        assert_eq!(c["all"]["records"], 24);
    }
    assert!(dir.path().join("records.csv").is_file());
    assert!(dir.path().join("grid.txt").is_file());

    let rendered = horizon(&["render", "--results", &out, "--table", "grid"]);
    assert!(rendered.status.success());
    assert_eq!(stdout(&rendered), std::fs::read_to_string(dir.path().join("grid.txt")).unwrap().trim_end_matches('\n').to_string() + "\n");

    let ranked = horizon(&["rank", "--results", &out]);
    assert!(ranked.status.success());
    assert!(stdout(&ranked).contains("Total"));

    let sig = horizon(&["render", "--results", &out, "--table", "significance"]);
    assert!(sig.status.success());
    assert!(stdout(&sig).contains("rhea:P=20,L=20"));
}

#[test]
fn budget_study_has_five_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("b.toml");
    std::fs::write(&cfg, "name = \"b\"\ngames = [\"corridor_race\", \"invaders\"]\nlevels = [0]\nrepeats = 1\nbudgets = [480, 960]\n").unwrap();
    let out = dir.path().join("out");
    let o = horizon(&["budget-study", "--config", &cfg.to_string_lossy(), "--out", &out.to_string_lossy()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("RHEA/RS-480") && text.contains("RHEA-960") && text.contains("OLMCTS-480"));
    let again = horizon(&["render", "--results", &out.to_string_lossy(), "--table", "budget"]);
    assert_eq!(stdout(&again), text);
}
