use std::collections::HashSet;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use sha2::{Digest, Sha256};

use crate::chess::{Color, PgnGame, Position};
use crate::mentor::{MentorScore, SCORE_CLAMP};

use super::TrainingError;

/// Plies at the start of every game that are never sampled.
pub const BOOK_PLIES: usize = 8;

/// Positions of `game` eligible for sampling: after the book plies, White to
/// move and White not in check.
pub fn eligible_positions(game: &PgnGame) -> Vec<Position> {
    game.positions()
        .into_iter()
        .enumerate()
        .filter(|(ply, p)| *ply > BOOK_PLIES && p.side_to_move() == Color::White && !p.in_check())
        .map(|(_, p)| p)
        .collect()
}

/// Picks at most one position per game, uniformly among its eligible plies,
/// visiting games in random order and skipping repeated FENs.
pub fn sample_positions<R: Rng + ?Sized>(games: &[PgnGame], count: usize, rng: &mut R) -> Result<Vec<Position>, TrainingError> {
    let mut order: Vec<usize> = (0..games.len()).collect();
    order.shuffle(rng);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut usable = 0;
    for i in order {
        if out.len() == count {
            break;
        }
        let candidates = eligible_positions(&games[i]);
        let Some(p) = candidates.choose(rng) else { continue };
        usable += 1;
        if seen.insert(p.to_fen()) {
            out.push(p.clone());
        }
    }
    if out.len() < count {
        let usable = usable.max(out.len());
        return Err(TrainingError::TooFewGames {
            usable,
            distinct: out.len(),
            requested: count,
        });
    }
    Ok(out)
}

/// A position with its mentor score (White's view, centipawns).
#[derive(Debug, Clone, PartialEq)]
pub struct Labeled {
    pub position: Position,
    pub score_cp: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub train: Vec<Labeled>,
    pub test: Vec<Labeled>,
    /// Digest of the material the dataset was built from.
    pub source_digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `<FEN>\t<score_cp>` per line.
pub fn labeled_to_tsv(items: &[Labeled]) -> String {
    items
        .iter()
        .map(|l| format!("{}\t{}\n", l.position.to_fen(), l.score_cp))
        .collect()
}

pub fn labeled_from_tsv(text: &str) -> Result<Vec<Labeled>, TrainingError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| TrainingError::DatasetLine { line: i + 1, reason };
        let (fen, score) = line.split_once('\t').ok_or_else(|| bad("expected <FEN>\\t<score>".into()))?;
        let position = Position::from_fen(fen).map_err(|e| bad(e.to_string()))?;
        let score_cp: i32 = score.trim().parse().map_err(|_| bad(format!("bad score `{score}`")))?;
        if score_cp.abs() > SCORE_CLAMP {
            return Err(bad(format!("score {score_cp} outside ±{SCORE_CLAMP}")));
        }
        out.push(Labeled { position, score_cp });
    }
    Ok(out)
}

impl Dataset {
    /// Splits scored positions: the first `train_size` go to training, the rest to test.
    pub fn from_scored(positions: Vec<Position>, scores: &[MentorScore], train_size: usize, source_digest: String) -> Dataset {
        assert_eq!(positions.len(), scores.len());
        let mut all: Vec<Labeled> = positions
            .into_iter()
            .zip(scores)
            .map(|(position, s)| Labeled {
                position,
                score_cp: s.score_cp,
            })
            .collect();
        let test = all.split_off(train_size.min(all.len()));
        Dataset {
            train: all,
            test,
            source_digest,
        }
    }

    /// Digest of the train and test files' contents.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(labeled_to_tsv(&self.train));
        h.update(b"--\n");
        h.update(labeled_to_tsv(&self.test));
        hex::encode(h.finalize())
    }

    /// Writes `train.tsv` and `test.tsv` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<(), TrainingError> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("train.tsv"), labeled_to_tsv(&self.train))?;
        fs::write(dir.join("test.tsv"), labeled_to_tsv(&self.test))?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Dataset, TrainingError> {
        let read = |name: &str| -> Result<String, TrainingError> {
            fs::read_to_string(dir.join(name)).map_err(|e| TrainingError::File {
                path: dir.join(name).display().to_string(),
                source: e,
            })
        };
        let (train_text, test_text) = (read("train.tsv")?, read("test.tsv")?);
        Ok(Dataset {
            train: labeled_from_tsv(&train_text)?,
            test: labeled_from_tsv(&test_text)?,
            source_digest: sha256_hex(format!("{train_text}--\n{test_text}").as_bytes()),
        })
    }

    /// Checks that no FEN occurs in both splits.
    pub fn check_disjoint(&self) -> Result<(), TrainingError> {
        let train: HashSet<String> = self.train.iter().map(|l| l.position.to_fen()).collect();
        match self.test.iter().find(|l| train.contains(&l.position.to_fen())) {
            Some(l) => Err(TrainingError::Overlap(l.position.to_fen())),
            None => Ok(()),
        }
    }
}
