use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mentor_tune::eval::EvalParams;
use mentor_tune::genome::{decode, Chromosome};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mentor-tune"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Self-play games plus an ingested dataset in `dir`.
fn dataset(dir: &Path, games: usize, count: usize) {
    let d = path(dir);
    ok(&["--out", d, "selfplay", "--games", &games.to_string(), "--max-plies", "40"]);
    let pgn = dir.join("games.pgn");
    ok(&["--out", d, "ingest", "--pgn", path(&pgn), "--count", &count.to_string()]);
}

#[test]
fn ingest_splits_evenly() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 10, 10);
    let train = fs::read_to_string(dir.path().join("train.tsv")).unwrap();
    let test = fs::read_to_string(dir.path().join("test.tsv")).unwrap();
    assert_eq!(train.lines().count(), 5);
    assert_eq!(test.lines().count(), 5);
    for line in train.lines().chain(test.lines()) {
        let (fen, score) = line.split_once('\t').unwrap();
        assert!(fen.contains(" w "), "{fen}");
        assert!(score.parse::<i32>().unwrap().abs() <= 3000);
    }
}

#[test]
fn ingest_rejects_more_positions_than_games() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path());
    ok(&["--out", d, "selfplay", "--games", "4", "--max-plies", "40"]);
    let pgn = dir.path().join("games.pgn");
    let out = run(&["--out", d, "ingest", "--pgn", path(&pgn), "--count", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("distinct positions"));
}

#[test]
fn train_outputs_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 40, 30);
    let ds = path(dir.path());
    let before = fs::read(dir.path().join("train.tsv")).unwrap();

    let run_dir = dir.path().join("run");
    let args = ["--out", path(&run_dir), "train", "--dataset", ds, "--population", "10", "--generations", "6", "--positions", "10"];
    ok(&args);
    let csv = fs::read_to_string(run_dir.join("generations.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "generation,best_error_cp,mean_error_cp,seconds");
    assert_eq!(lines.len(), 7);
    for (g, line) in lines[1..].iter().enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0], g.to_string());
        assert_eq!(cols[3], "");
    }

    let bits = fs::read_to_string(run_dir.join("best.chromosome")).unwrap();
    let chromosome = Chromosome::from_bit_string(bits.trim()).unwrap();
    let params = EvalParams::from_kv_text(&fs::read_to_string(run_dir.join("best.params")).unwrap()).unwrap();
    assert_eq!(decode(&chromosome), params);

    // The dataset is read, never rewritten.
    assert_eq!(fs::read(dir.path().join("train.tsv")).unwrap(), before);

    let manifest = run_dir.join("train.manifest.json");
    let stdout = ok(&["--out", path(&run_dir), "replay", "--manifest", path(&manifest)]);
    assert!(stdout.contains("reproduced"), "{stdout}");

    // A second run elsewhere with the same arguments writes the same CSV.
    let other = dir.path().join("other");
    let mut again = args;
    again[1] = path(&other);
    ok(&again);
    assert_eq!(fs::read(other.join("generations.csv")).unwrap(), csv.as_bytes());

    // Timing fills the seconds column.
    let timed = dir.path().join("timed");
    let mut with_timing = args.to_vec();
    with_timing[1] = path(&timed);
    with_timing.push("--timing");
    ok(&with_timing);
    let timed_csv = fs::read_to_string(timed.join("generations.csv")).unwrap();
    assert!(timed_csv.lines().skip(1).all(|l| !l.ends_with(',')));
}

#[test]
fn zero_generations_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 40, 30);
    let run_dir = dir.path().join("run");
    ok(&[
        "--out", path(&run_dir), "train", "--dataset", path(dir.path()), "--population", "10", "--generations", "0", "--positions", "10",
    ]);
    let csv = fs::read_to_string(run_dir.join("generations.csv")).unwrap();
    assert_eq!(csv, "generation,best_error_cp,mean_error_cp,seconds\n");
    assert_eq!(fs::read_to_string(run_dir.join("best.chromosome")).unwrap().trim().len(), 230);
}

#[test]
fn ingest_replay_reproduces_digest() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 12, 10);
    let manifest = dir.path().join("ingest.manifest.json");
    let text = fs::read_to_string(&manifest).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["command"], "ingest");
    assert!(json["outputs"]["train.tsv"].is_string(), "{text}");
    let stdout = ok(&["--out", path(dir.path()), "replay", "--manifest", path(&manifest)]);
    assert!(stdout.contains("reproduced"), "{stdout}");
}

#[test]
fn replay_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 12, 10);
    let manifest = dir.path().join("ingest.manifest.json");
    let text = fs::read_to_string(&manifest).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let digest = json["outputs"]["train.tsv"].as_str().unwrap();
    fs::write(&manifest, text.replace(digest, &"0".repeat(64))).unwrap();
    let out = run(&["--out", path(dir.path()), "replay", "--manifest", path(&manifest)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn match_between_identical_players_is_even() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path());
    ok(&["--out", d, "--depth", "1", "match", "--params-a", "@reference", "--params-b", "@reference", "--games", "10"]);
    let csv = fs::read_to_string(dir.path().join("match.csv")).unwrap();
    assert_eq!(csv, "games,score_a,win_pct,elo_diff\n10,5,0.5000,0.0\n");
    let pgn = fs::read_to_string(dir.path().join("match.pgn")).unwrap();
    assert_eq!(pgn.matches("[Result ").count(), 10);
}

#[test]
fn suite_reports_solved_count() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(&["--out", path(dir.path()), "--depth", "2", "suite", "--params", "@material"]);
    let (solved, total) = stdout.trim().split_once('/').unwrap();
    assert_eq!(total, "20");
    assert!(solved.parse::<u32>().unwrap() <= 20);
    let csv = fs::read_to_string(dir.path().join("suite.csv")).unwrap();
    assert_eq!(csv.lines().count(), 21);
}

#[test]
fn eval_prints_white_score() {
    let start = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.txt");
    fs::write(&zero, EvalParams::zero().to_kv_text()).unwrap();
    assert_eq!(ok(&["--out", path(dir.path()), "eval", "--fen", start, "--params", path(&zero)]).trim(), "0");
    let lone_pawn = "4k3/8/8/8/8/8/4P3/4K3 w - - 0 1";
    let white = ok(&["--out", path(dir.path()), "eval", "--fen", lone_pawn]);
    let black = ok(&["--out", path(dir.path()), "eval", "--fen", "4k3/4p3/8/8/8/8/8/4K3 b - - 0 1"]);
    assert_eq!(white.trim().parse::<i32>().unwrap(), -black.trim().parse::<i32>().unwrap());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path());
    assert_eq!(run(&["--out", d, "eval", "--fen", "x", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--out", d, "frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--out", d, "eval", "--fen", "8/8/8/8/8/8/8/8 w - - 0 1"]).status.code(), Some(1));
    assert_eq!(run(&["--out", d, "train", "--dataset", "/nonexistent"]).status.code(), Some(2));
    assert_eq!(run(&["--out", d, "match", "--params-a", "@zero", "--params-b", "@zero", "--games", "3"]).status.code(), Some(1));
}

#[test]
fn environment_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    ok(&["--out", path(&a), "--seed", "9", "selfplay", "--games", "3", "--max-plies", "20"]);
    let out = run_env(
        &["selfplay", "--games", "3"],
        &[("MENTOR_TUNE_OUT", path(&b)), ("MENTOR_TUNE_SEED", "9"), ("MENTOR_TUNE_MAX_PLIES", "20")],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(a.join("games.pgn")).unwrap(), fs::read(b.join("games.pgn")).unwrap());
}
