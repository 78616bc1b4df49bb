use crate::chess::{EpdRecord, Move};
use crate::eval::EvalParams;

use super::search::search_best_move;

const MINI_SUITE: &str = include_str!("../../data/mini_suite.epd");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteEntry {
    pub id: String,
    pub solved: bool,
    pub chosen: Option<Move>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub solved: usize,
    pub total: usize,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteResult {
    /// CSV with header `id,solved,chosen_move`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,solved,chosen_move\n");
        for e in &self.entries {
            let chosen = e.chosen.map(|m| m.uci()).unwrap_or_default();
            out.push_str(&format!("{},{},{}\n", e.id, u8::from(e.solved), chosen));
        }
        out
    }
}

/// Searches every record at `depth`; a record is solved when the chosen move
/// is one of its `bm` moves. Records without an id are numbered from 1.
pub fn run_epd_suite(suite: &[EpdRecord], params: &EvalParams, depth: u32) -> SuiteResult {
    let entries: Vec<SuiteEntry> = suite
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let chosen = search_best_move(&rec.position, params, depth).ok();
            SuiteEntry {
                id: rec.id().map_or_else(|| (i + 1).to_string(), str::to_string),
                solved: chosen.is_some_and(|m| rec.bm.contains(&m)),
                chosen,
            }
        })
        .collect();
    SuiteResult {
        solved: entries.iter().filter(|e| e.solved).count(),
        total: entries.len(),
        entries,
    }
}

/// The bundled twenty-position tactical suite.
pub fn mini_suite() -> Vec<EpdRecord> {
    crate::chess::parse_epd_file(MINI_SUITE).expect("bundled suite is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::parse_epd;

    #[test]
    fn single_mate_in_one() {
        let rec = parse_epd("6k1/5ppp/8/8/8/8/5PPP/R5K1 w - - bm Ra8#; id \"m1\";").unwrap();
        let r = run_epd_suite(&[rec], &EvalParams::zero(), 2);
        assert_eq!((r.solved, r.total), (1, 1));
        assert_eq!(r.to_csv(), "id,solved,chosen_move\nm1,1,a1a8\n");
    }

    #[test]
    fn empty_suite() {
        let r = run_epd_suite(&[], &EvalParams::reference(), 3);
        assert_eq!((r.solved, r.total), (0, 0));
    }

    #[test]
    fn mini_suite_has_twenty_records_with_bm() {
        let s = mini_suite();
        assert_eq!(s.len(), 20);
        assert!(s.iter().all(|r| !r.bm.is_empty() && r.id().is_some()));
    }
}
