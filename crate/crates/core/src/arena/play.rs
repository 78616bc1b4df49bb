use std::collections::HashMap;

use rayon::prelude::*;

use crate::chess::{write_pgn, Color, Move, Position};
use crate::eval::EvalParams;

use super::elo::elo_diff;
use super::search::{search_best_move, SearchError};

/// Games longer than this many plies are declared drawn.
pub const MAX_PLIES: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameOutcome {
    WhiteWins,
    BlackWins,
    Draw,
}

impl GameOutcome {
    pub fn pgn(self) -> &'static str {
        match self {
            GameOutcome::WhiteWins => "1-0",
            GameOutcome::BlackWins => "0-1",
            GameOutcome::Draw => "1/2-1/2",
        }
    }

    /// Points earned by `color`.
    pub fn points(self, color: Color) -> f64 {
        match (self, color) {
            (GameOutcome::Draw, _) => 0.5,
            (GameOutcome::WhiteWins, Color::White) | (GameOutcome::BlackWins, Color::Black) => 1.0,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Checkmate,
    Stalemate,
    FiftyMoves,
    Repetition,
    MoveCap,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Checkmate => "checkmate",
            Termination::Stalemate => "stalemate",
            Termination::FiftyMoves => "fifty-move rule",
            Termination::Repetition => "threefold repetition",
            Termination::MoveCap => "move cap",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameRecord {
    pub opening: usize,
    /// Whether the first parameter set had White.
    pub a_is_white: bool,
    pub start: Position,
    pub moves: Vec<Move>,
    pub outcome: GameOutcome,
    pub termination: Termination,
}

impl GameRecord {
    pub fn to_pgn(&self, round: usize, name_a: &str, name_b: &str) -> String {
        let (white, black) = if self.a_is_white { (name_a, name_b) } else { (name_b, name_a) };
        let headers = [
            ("Event", "mentor-tune match".to_string()),
            ("Site", "?".to_string()),
            ("Date", "????.??.??".to_string()),
            ("Round", round.to_string()),
            ("White", white.to_string()),
            ("Black", black.to_string()),
            ("Result", self.outcome.pgn().to_string()),
            ("FEN", self.start.to_fen()),
            ("SetUp", "1".to_string()),
            ("Termination", self.termination.as_str().to_string()),
        ];
        write_pgn(&headers, &self.start, &self.moves, self.outcome.pgn())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub games: usize,
    pub score_a: f64,
    pub score_b: f64,
    pub win_pct: f64,
    pub records: Vec<GameRecord>,
}

impl MatchResult {
    /// Rating difference of the first side, if its score is not 0% or 100%.
    pub fn elo_diff(&self) -> Option<f64> {
        elo_diff(self.win_pct).ok()
    }

    /// CSV with header `games,score_a,win_pct,elo_diff`.
    pub fn summary_csv(&self) -> String {
        let elo = self.elo_diff().map(|e| format!("{e:.1}")).unwrap_or_default();
        format!(
            "games,score_a,win_pct,elo_diff\n{},{},{:.4},{}\n",
            self.games, self.score_a, self.win_pct, elo
        )
    }

    pub fn to_pgn(&self, name_a: &str, name_b: &str) -> String {
        self.records
            .iter()
            .enumerate()
            .map(|(i, r)| r.to_pgn(i + 1, name_a, name_b))
            .collect()
    }
}

/// Plays one game from `start` between fixed-depth searchers.
pub fn play_game(start: &Position, white: &EvalParams, black: &EvalParams, depth: u32) -> (Vec<Move>, GameOutcome, Termination) {
    let mut pos = start.clone();
    let mut moves = Vec::new();
    let mut seen: HashMap<_, u32> = HashMap::new();
    *seen.entry(pos.repetition_key()).or_default() += 1;
    loop {
        let params = if pos.side_to_move() == Color::White { white } else { black };
        let m = match search_best_move(&pos, params, depth) {
            Ok(m) => m,
            Err(SearchError::Checkmate) => {
                let outcome = match pos.side_to_move() {
                    Color::White => GameOutcome::BlackWins,
                    Color::Black => GameOutcome::WhiteWins,
                };
                return (moves, outcome, Termination::Checkmate);
            }
            Err(SearchError::Stalemate) => return (moves, GameOutcome::Draw, Termination::Stalemate),
        };
        pos.make_move(m);
        moves.push(m);
        let reps = seen.entry(pos.repetition_key()).or_default();
        *reps += 1;
        let draw = if *reps >= 3 {
            Some(Termination::Repetition)
        } else if pos.halfmove_clock() >= 100 && !pos.legal_moves().is_empty() {
            Some(Termination::FiftyMoves)
        } else if moves.len() >= MAX_PLIES && !pos.legal_moves().is_empty() {
            Some(Termination::MoveCap)
        } else {
            None
        };
        if let Some(t) = draw {
            return (moves, GameOutcome::Draw, t);
        }
    }
}

/// Plays `games` games (must be even). Game pair `k` starts from opening
/// `k % openings.len()`, first with `a` as White and then with colors swapped.
pub fn play_match(a: &EvalParams, b: &EvalParams, games: usize, depth: u32, openings: &[Position]) -> MatchResult {
    assert!(games % 2 == 0, "games must be even");
    assert!(!openings.is_empty(), "no openings");
    let records: Vec<GameRecord> = (0..games)
        .into_par_iter()
        .map(|g| {
            let opening = (g / 2) % openings.len();
            let a_is_white = g % 2 == 0;
            let start = openings[opening].clone();
            let (white, black) = if a_is_white { (a, b) } else { (b, a) };
            let (moves, outcome, termination) = play_game(&start, white, black, depth);
            GameRecord {
                opening,
                a_is_white,
                start,
                moves,
                outcome,
                termination,
            }
        })
        .collect();
    let score_a: f64 = records
        .iter()
        .map(|r| r.outcome.points(if r.a_is_white { Color::White } else { Color::Black }))
        .sum();
    MatchResult {
        games,
        score_a,
        score_b: games as f64 - score_a,
        win_pct: if games == 0 { 0.5 } else { score_a / games as f64 },
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::bundled_openings;

    #[test]
    fn forced_draw_opening_splits_points() {
        let stalemate = Position::from_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1").unwrap();
        let r = play_match(&EvalParams::reference(), &EvalParams::zero(), 2, 2, &[stalemate]);
        assert_eq!((r.score_a, r.score_b), (1.0, 1.0));
        assert!(r.records.iter().all(|g| g.termination == Termination::Stalemate));
    }

    #[test]
    fn identical_params_score_half() {
        let ops = bundled_openings();
        let p = EvalParams::reference();
        let r = play_match(&p, &p, 6, 1, &ops);
        assert_eq!(r.score_a, 3.0);
        assert_eq!(r.win_pct, 0.5);
    }

    #[test]
    fn games_replay_legally() {
        let ops = bundled_openings();
        let r = play_match(&EvalParams::material_only(), &EvalParams::zero(), 4, 1, &ops[..2]);
        for g in &r.records {
            let mut pos = g.start.clone();
            for &m in &g.moves {
                assert!(pos.is_legal(m));
                pos.make_move(m);
            }
            assert!(g.moves.len() <= MAX_PLIES);
        }
        let pgn = r.to_pgn("a", "b");
        let parsed = crate::chess::parse_pgn(&pgn).unwrap();
        assert_eq!(parsed.len(), 4);
        for (p, g) in parsed.iter().zip(&r.records) {
            assert_eq!(p.moves, g.moves);
            assert_eq!(p.result(), g.outcome.pgn());
        }
    }

    #[test]
    fn mate_is_scored_for_the_winner() {
        let start = Position::from_fen("6k1/5ppp/8/8/8/8/5PPP/R5K1 w - - 0 1").unwrap();
        let (moves, outcome, t) = play_game(&start, &EvalParams::zero(), &EvalParams::zero(), 2);
        assert_eq!(moves.len(), 1);
        assert_eq!((outcome, t), (GameOutcome::WhiteWins, Termination::Checkmate));
    }
}
