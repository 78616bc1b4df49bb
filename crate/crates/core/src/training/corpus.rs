use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arena::{bundled_openings, near_best_moves, GameOutcome, SearchConfig};
use crate::chess::{write_pgn, Color, Move, PgnGame, Position};
use crate::eval::{evaluate, EvalParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfPlayConfig {
    pub games: usize,
    /// Candidate moves within this many centipawns of the best are equally likely.
    pub window_cp: i32,
    /// Probability of a uniformly random legal move.
    pub blunder_rate: f64,
    pub max_plies: usize,
    /// Plies searched (with capture resolution) to score candidates; 0 scores
    /// them with the static evaluation.
    pub search_depth: u32,
    pub seed: u64,
}

impl Default for SelfPlayConfig {
    fn default() -> Self {
        SelfPlayConfig {
            games: 2000,
            window_cp: 40,
            blunder_rate: 0.08,
            max_plies: 160,
            search_depth: 0,
            seed: 0,
        }
    }
}

fn choose_move(pos: &Position, params: &EvalParams, cfg: &SelfPlayConfig, rng: &mut ChaCha8Rng) -> Option<Move> {
    let moves = pos.legal_moves();
    if moves.is_empty() {
        return None;
    }
    if rng.gen::<f64>() < cfg.blunder_rate {
        return moves.choose(rng).copied();
    }
    let near: Vec<Move> = if cfg.search_depth == 0 {
        let sign = pos.side_to_move().sign();
        let scored: Vec<(Move, i32)> = moves.iter().map(|&m| (m, sign * evaluate(&pos.play(m), params))).collect();
        let best = scored.iter().map(|s| s.1).max().expect("nonempty");
        scored.iter().filter(|s| s.1 >= best - cfg.window_cp).map(|s| s.0).collect()
    } else {
        near_best_moves(pos, params, SearchConfig::new(cfg.search_depth), cfg.window_cp)
            .into_iter()
            .map(|s| s.0)
            .collect()
    };
    near.choose(rng).copied()
}

/// Plays one noisy game: random among near-best moves, with occasional
/// random moves.
fn play_noisy(start: &Position, params: &EvalParams, cfg: &SelfPlayConfig, rng: &mut ChaCha8Rng) -> (Vec<Move>, &'static str) {
    let mut pos = start.clone();
    let mut moves = Vec::new();
    while moves.len() < cfg.max_plies && pos.halfmove_clock() < 100 {
        match choose_move(&pos, params, cfg, rng) {
            Some(m) => {
                pos.make_move(m);
                moves.push(m);
            }
            None => break,
        }
    }
    let result = if pos.legal_moves().is_empty() && pos.in_check() {
        match pos.side_to_move() {
            Color::White => GameOutcome::BlackWins.pgn(),
            Color::Black => GameOutcome::WhiteWins.pgn(),
        }
    } else if pos.legal_moves().is_empty() || pos.halfmove_clock() >= 100 {
        GameOutcome::Draw.pgn()
    } else {
        "*"
    };
    (moves, result)
}

/// Generates a synthetic game collection. Each game starts from a randomly
/// chosen bundled opening; game `i` uses its own RNG stream.
pub fn generate_games(params: &EvalParams, cfg: &SelfPlayConfig) -> Vec<PgnGame> {
    use rayon::prelude::*;
    let openings = bundled_openings();
    (0..cfg.games)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let start = openings.choose(&mut rng).expect("openings").clone();
            let (moves, result) = play_noisy(&start, params, cfg, &mut rng);
            let mut headers = std::collections::BTreeMap::new();
            headers.insert("Event".to_string(), "self-play".to_string());
            headers.insert("Round".to_string(), (i + 1).to_string());
            headers.insert("Result".to_string(), result.to_string());
            headers.insert("FEN".to_string(), start.to_fen());
            PgnGame { headers, start, moves }
        })
        .collect()
}

/// Writes games as a PGN collection.
pub fn games_to_pgn(games: &[PgnGame]) -> String {
    games
        .iter()
        .map(|g| {
            let tags: Vec<(&str, String)> = ["Event", "Round", "Result", "FEN"]
                .iter()
                .map(|&k| (k, g.headers.get(k).cloned().unwrap_or_else(|| "?".into())))
                .chain([("SetUp", "1".to_string())])
                .collect();
            write_pgn(&tags, &g.start, &g.moves, g.result())
        })
        .collect()
}
