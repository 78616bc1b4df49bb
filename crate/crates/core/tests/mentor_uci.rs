//! The UCI mentor backend driven against small scripted engines.

use std::path::{Path, PathBuf};

use mentor_tune::chess::Position;
use mentor_tune::mentor::{Mentor, MentorConfig, MentorError};

const ECHO_LENGTH: &str = r#"
while read -r line; do
  case "$line" in
    uci) echo "id name fake"; echo "uciok" ;;
    isready) echo "readyok" ;;
    "position fen "*) pos="$line" ;;
    go*) echo "info depth 1 score cp 1"; echo "info depth 2 score cp ${#pos} pv e2e4"; echo "bestmove e2e4" ;;
    quit) exit 0 ;;
  esac
done
"#;

const MATES: &str = r#"
while read -r line; do
  case "$line" in
    uci) echo "uciok" ;;
    isready) echo "readyok" ;;
    go*) echo "info depth 2 score mate 3"; echo "bestmove a1a8" ;;
  esac
done
"#;

const DIES_AFTER_HANDSHAKE: &str = r#"
while read -r line; do
  case "$line" in
    uci) echo "uciok" ;;
    isready) echo "readyok" ;;
    go*) exit 3 ;;
  esac
done
"#;

const SILENT: &str = r#"
while read -r line; do
  case "$line" in
    uci) echo "uciok" ;;
    isready) echo "readyok" ;;
  esac
done
"#;

const GARBLED: &str = r#"
while read -r line; do
  case "$line" in
    uci) echo "uciok" ;;
    isready) echo "readyok" ;;
    go*) echo "info depth 2 score cp twelve"; echo "bestmove e2e4" ;;
  esac
done
"#;

fn script(dir: &Path, name: &str, body: &str) -> String {
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, body).unwrap();
    format!("sh {}", path.display())
}

fn positions() -> Vec<Position> {
    [
        "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq - 0 1",
        "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
        "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
        "4k3/8/8/8/8/8/4P3/4K3 w - - 0 1",
        "4k3/8/8/8/8/8/4P3/4K3 b - - 0 1",
    ]
    .iter()
    .map(|f| Position::from_fen(f).unwrap())
    .collect()
}

fn expected_echo(p: &Position) -> i32 {
    let line_len = format!("position fen {}", p.to_fen()).len() as i32;
    line_len * p.side_to_move().sign()
}

fn uci_config(command: String, processes: usize) -> MentorConfig {
    let mut cfg = MentorConfig::uci(command, 2);
    cfg.processes = processes;
    cfg.timeout_ms = 2000;
    cfg
}

#[test]
fn last_score_before_bestmove_normalized_to_white() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = script(dir.path(), "echo.sh", ECHO_LENGTH);
    let ps = positions();
    let scores = Mentor::new(uci_config(cmd, 1)).unwrap().score_positions(&ps).unwrap();
    for (p, s) in ps.iter().zip(&scores) {
        assert_eq!(s.position_id, p.to_fen());
        assert_eq!(s.score_cp, expected_echo(p), "{}", p.to_fen());
    }
}

#[test]
fn several_processes_keep_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = script(dir.path(), "echo.sh", ECHO_LENGTH);
    let ps = positions();
    let one = Mentor::new(uci_config(cmd.clone(), 1)).unwrap().score_positions(&ps).unwrap();
    let three = Mentor::new(uci_config(cmd, 3)).unwrap().score_positions(&ps).unwrap();
    assert_eq!(one, three);
}

#[test]
fn cache_file_avoids_engine_calls() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = script(dir.path(), "echo.sh", ECHO_LENGTH);
    let cache = dir.path().join("scores.tsv");
    let ps = positions();
    let mut first = Mentor::new(uci_config(cmd.clone(), 1)).unwrap().with_cache_file(&cache).unwrap();
    let a = first.score_positions(&ps).unwrap();
    let again = first.score_positions(&ps).unwrap();
    assert_eq!(first.queries(), ps.len() as u64);
    assert_eq!(a, again);
    let text = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(text.lines().count(), ps.len());
    assert!(text.lines().all(|l| l.split('\t').count() == 3));

    // The engine command is never run when every position is cached.
    let broken = script(dir.path(), "dies.sh", DIES_AFTER_HANDSHAKE);
    let mut second = Mentor::new(uci_config(broken, 1)).unwrap().with_cache_file(&cache).unwrap();
    assert_eq!(second.score_positions(&ps).unwrap(), a);
    assert_eq!(second.queries(), 0);
}

#[test]
fn mate_scores_are_clamped() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = script(dir.path(), "mates.sh", MATES);
    let ps = positions();
    let scores = Mentor::new(uci_config(cmd, 1)).unwrap().score_positions(&ps).unwrap();
    for (p, s) in ps.iter().zip(scores) {
        assert_eq!(s.score_cp, 3000 * p.side_to_move().sign());
    }
}

#[test]
fn engine_failures_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let ps = positions();

    let dies = script(dir.path(), "dies.sh", DIES_AFTER_HANDSHAKE);
    let err = Mentor::new(uci_config(dies, 1)).unwrap().score_positions(&ps).unwrap_err();
    assert!(matches!(err, MentorError::Crashed { .. }), "{err}");

    let silent = script(dir.path(), "silent.sh", SILENT);
    let mut cfg = uci_config(silent, 1);
    cfg.timeout_ms = 300;
    let err = Mentor::new(cfg).unwrap().score_positions(&ps).unwrap_err();
    match err {
        MentorError::Timeout { transcript } => assert!(transcript.contains("go depth 2"), "{transcript}"),
        other => panic!("{other}"),
    }

    let garbled = script(dir.path(), "garbled.sh", GARBLED);
    let err = Mentor::new(uci_config(garbled, 1)).unwrap().score_positions(&ps).unwrap_err();
    match err {
        MentorError::Protocol { line, .. } => assert!(line.contains("twelve")),
        other => panic!("{other}"),
    }

    let missing = uci_config("/nonexistent/engine".into(), 1);
    let err = Mentor::new(missing).unwrap().score_positions(&ps).unwrap_err();
    assert!(matches!(err, MentorError::Spawn { .. }), "{err}");
}

#[test]
fn own_binary_as_uci_mentor() {
    let cmd = format!("{} uci --params @reference", env!("CARGO_BIN_EXE_mentor-tune"));
    let ps: Vec<Position> = positions().into_iter().filter(|p| !p.in_check()).collect();
    let mirrored: Vec<Position> = ps.iter().map(Position::mirrored).collect();
    let mut mentor = Mentor::new(uci_config(cmd, 1)).unwrap();
    let a = mentor.score_positions(&ps).unwrap();
    let b = mentor.score_positions(&mirrored).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.score_cp, -y.score_cp, "{}", x.position_id);
    }
}
