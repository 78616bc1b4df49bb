use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use super::MentorError;

/// Mentor scores keyed by canonical FEN and search depth.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoreCache {
    entries: BTreeMap<(String, u32), i32>,
}

impl ScoreCache {
    pub fn new() -> ScoreCache {
        ScoreCache::default()
    }

    pub fn get(&self, fen: &str, depth: u32) -> Option<i32> {
        self.entries.get(&(fen.to_string(), depth)).copied()
    }

    pub fn insert(&mut self, fen: String, depth: u32, score: i32) {
        self.entries.insert((fen, depth), score);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `<FEN>\t<depth>\t<score_cp>` lines.
    pub fn from_text(text: &str) -> Result<ScoreCache, MentorError> {
        let mut cache = ScoreCache::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: &str| MentorError::Cache {
                line: i + 1,
                reason: reason.to_string(),
            };
            let mut cols = line.split('\t');
            let (Some(fen), Some(depth), Some(score), None) = (cols.next(), cols.next(), cols.next(), cols.next()) else {
                return Err(bad("expected three tab-separated columns"));
            };
            let depth = depth.trim().parse().map_err(|_| bad("depth is not an integer"))?;
            let score = score.trim().parse().map_err(|_| bad("score is not an integer"))?;
            cache.insert(fen.to_string(), depth, score);
        }
        Ok(cache)
    }

    /// Sorted by FEN then depth so the file is byte-stable.
    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|((fen, depth), score)| format!("{fen}\t{depth}\t{score}\n"))
            .collect()
    }

    /// Loads `path`, or an empty cache when it does not exist.
    pub fn load(path: &Path) -> Result<ScoreCache, MentorError> {
        match fs::read_to_string(path) {
            Ok(text) => ScoreCache::from_text(&text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(ScoreCache::new()),
            Err(e) => Err(MentorError::Io(e)),
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), MentorError> {
        fs::write(path, self.to_text()).map_err(MentorError::Io)
    }
}
