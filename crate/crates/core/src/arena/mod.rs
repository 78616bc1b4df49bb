//! Fixed-depth play for validating parameter sets: search, matches,
//! tactical suites and Elo conversion.

mod elo;
mod openings;
mod play;
mod search;
mod suite;

pub use elo::{elo_diff, elo_expected_score, UndefinedRating};
pub use openings::{bundled_openings, parse_openings};
pub use play::{play_game, play_match, GameOutcome, GameRecord, MatchResult, Termination, MAX_PLIES};
pub use search::{near_best_moves, search, search_best_move, search_score_white, SearchConfig, SearchError, SearchResult, MATE};
pub use suite::{mini_suite, run_epd_suite, SuiteEntry, SuiteResult};
