//! Mentor oracles: the reference scores the evolving evaluation is fitted to.
//!
//! Two backends sit behind [`Mentor`]: a synthetic oracle that evaluates with
//! hidden parameters (optionally searched and perturbed with seeded noise),
//! and an external engine spoken to over UCI. Scores are White-relative
//! centipawns clamped to ±3000 and cached by canonical FEN and depth.

mod cache;
mod uci;

use std::path::PathBuf;
use std::str::FromStr;
use std::thread;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arena::search_score_white;
use crate::chess::Position;
use crate::eval::{evaluate, EvalParams};

pub use cache::ScoreCache;
pub use uci::{parse_info_score, serve_uci, uci_handshake_and_score, UciEngine};

/// Bound applied to every mentor and organism score.
pub const SCORE_CLAMP: i32 = 3000;

#[derive(Debug, thiserror::Error)]
pub enum MentorError {
    #[error("mentor configuration: {0}")]
    Config(String),
    #[error("cannot start engine `{command}`: {source}")]
    Spawn {
        command: String,
        #[source]
        source: std::io::Error,
    },
    #[error("engine timed out; transcript tail:\n{transcript}")]
    Timeout { transcript: String },
    #[error("engine exited unexpectedly; transcript tail:\n{transcript}")]
    Crashed { transcript: String },
    #[error("engine protocol error ({reason}) at `{line}`; transcript tail:\n{transcript}")]
    Protocol {
        reason: String,
        line: String,
        transcript: String,
    },
    #[error("score cache line {line}: {reason}")]
    Cache { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Synthetic,
    Uci,
}

impl FromStr for Backend {
    type Err = MentorError;

    fn from_str(s: &str) -> Result<Backend, MentorError> {
        match s {
            "synthetic" => Ok(Backend::Synthetic),
            "uci" => Ok(Backend::Uci),
            _ => Err(MentorError::Config(format!("unknown mentor backend `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MentorConfig {
    pub backend: Backend,
    pub search_depth: u32,
    pub engine_command: Option<String>,
    /// Hidden parameters of the synthetic backend.
    pub hidden_params: Option<EvalParams>,
    pub noise_cp: u32,
    /// Seeds the synthetic noise.
    pub seed: u64,
    /// Number of engine processes for the UCI backend.
    pub processes: usize,
    pub timeout_ms: u64,
}

impl MentorConfig {
    pub fn synthetic(hidden: EvalParams, depth: u32) -> MentorConfig {
        MentorConfig {
            backend: Backend::Synthetic,
            search_depth: depth,
            engine_command: None,
            hidden_params: Some(hidden),
            noise_cp: 0,
            seed: 0,
            processes: 1,
            timeout_ms: 30_000,
        }
    }

    pub fn uci(command: impl Into<String>, depth: u32) -> MentorConfig {
        MentorConfig {
            backend: Backend::Uci,
            search_depth: depth,
            engine_command: Some(command.into()),
            hidden_params: None,
            noise_cp: 0,
            seed: 0,
            processes: 1,
            timeout_ms: 30_000,
        }
    }

    pub fn validate(&self) -> Result<(), MentorError> {
        match self.backend {
            Backend::Synthetic if self.hidden_params.is_none() => {
                Err(MentorError::Config("synthetic mentor needs hidden parameters".into()))
            }
            Backend::Uci if self.engine_command.as_deref().is_none_or(|c| c.trim().is_empty()) => {
                Err(MentorError::Config("uci mentor needs an engine command".into()))
            }
            _ if self.processes == 0 => Err(MentorError::Config("at least one engine process".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentorScore {
    /// Canonical FEN.
    pub position_id: String,
    pub score_cp: i32,
}

/// Synthetic score of one position: hidden-parameter evaluation (a plain
/// negamax at depth 2 and beyond) plus noise drawn from a stream keyed by
/// the seed and the FEN, so the value does not depend on scoring order.
pub fn synthetic_score(pos: &Position, hidden: &EvalParams, depth: u32, noise_cp: u32, seed: u64) -> i32 {
    let base = if depth <= 1 {
        evaluate(pos, hidden)
    } else {
        search_score_white(pos, hidden, depth, false)
    };
    let noise = if noise_cp == 0 {
        0
    } else {
        let digest = Sha256::new()
            .chain_update(seed.to_le_bytes())
            .chain_update(pos.to_fen().as_bytes())
            .finalize();
        let mut key = [0u8; 32];
        key.copy_from_slice(&digest);
        let n = noise_cp as i32;
        ChaCha8Rng::from_seed(key).gen_range(-n..=n)
    };
    base.saturating_add(noise).clamp(-SCORE_CLAMP, SCORE_CLAMP)
}

/// A configured mentor with its score cache and, for the UCI backend, the
/// engine processes (started on first use).
pub struct Mentor {
    cfg: MentorConfig,
    cache: ScoreCache,
    cache_path: Option<PathBuf>,
    engines: Vec<UciEngine>,
    queries: u64,
}

impl Mentor {
    pub fn new(cfg: MentorConfig) -> Result<Mentor, MentorError> {
        cfg.validate()?;
        Ok(Mentor {
            cfg,
            cache: ScoreCache::new(),
            cache_path: None,
            engines: Vec::new(),
            queries: 0,
        })
    }

    /// Loads the cache file if present and saves back to it after scoring.
    pub fn with_cache_file(mut self, path: impl Into<PathBuf>) -> Result<Mentor, MentorError> {
        let path = path.into();
        self.cache = ScoreCache::load(&path)?;
        self.cache_path = Some(path);
        Ok(self)
    }

    pub fn config(&self) -> &MentorConfig {
        &self.cfg
    }

    pub fn cache(&self) -> &ScoreCache {
        &self.cache
    }

    /// Positions scored by the backend so far (cache hits excluded).
    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// One score per position, in input order.
    pub fn score_positions(&mut self, positions: &[Position]) -> Result<Vec<MentorScore>, MentorError> {
        let depth = self.cfg.search_depth;
        let fens: Vec<String> = positions.iter().map(Position::to_fen).collect();
        let mut missing: Vec<usize> = Vec::new();
        for (i, fen) in fens.iter().enumerate() {
            if self.cache.get(fen, depth).is_none() && !missing.iter().any(|&j| fens[j] == *fen) {
                missing.push(i);
            }
        }
        let fresh = match self.cfg.backend {
            Backend::Synthetic => self.score_synthetic(positions, &missing),
            Backend::Uci => self.score_uci(&fens, &missing)?,
        };
        self.queries += missing.len() as u64;
        for (&i, score) in missing.iter().zip(fresh) {
            self.cache.insert(fens[i].clone(), depth, score);
        }
        if let Some(path) = &self.cache_path {
            if !missing.is_empty() {
                self.cache.save(path)?;
            }
        }
        Ok(fens
            .into_iter()
            .map(|fen| MentorScore {
                score_cp: self.cache.get(&fen, depth).expect("scored above"),
                position_id: fen,
            })
            .collect())
    }

    fn score_synthetic(&self, positions: &[Position], which: &[usize]) -> Vec<i32> {
        let hidden = self.cfg.hidden_params.as_ref().expect("validated");
        let (depth, noise, seed) = (self.cfg.search_depth, self.cfg.noise_cp, self.cfg.seed);
        which
            .par_iter()
            .map(|&i| synthetic_score(&positions[i], hidden, depth, noise, seed))
            .collect()
    }

    fn score_uci(&mut self, fens: &[String], which: &[usize]) -> Result<Vec<i32>, MentorError> {
        if which.is_empty() {
            return Ok(Vec::new());
        }
        let timeout = Duration::from_millis(self.cfg.timeout_ms);
        let command = self.cfg.engine_command.clone().expect("validated");
        while self.engines.len() < self.cfg.processes.min(which.len()) {
            let mut e = UciEngine::spawn(&command, timeout)?;
            e.handshake()?;
            self.engines.push(e);
        }
        let k = self.engines.len();
        let depth = self.cfg.search_depth;
        // Engine j takes every k-th position; results are merged back in order.
        let shards: Vec<Result<Vec<i32>, MentorError>> = thread::scope(|s| {
            let handles: Vec<_> = self
                .engines
                .iter_mut()
                .enumerate()
                .map(|(j, engine)| {
                    s.spawn(move || {
                        which
                            .iter()
                            .skip(j)
                            .step_by(k)
                            .map(|&i| engine.score(&fens[i], depth))
                            .collect()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("engine thread")).collect()
        });
        let shards = shards.into_iter().collect::<Result<Vec<_>, _>>()?;
        Ok((0..which.len()).map(|n| shards[n % k][n / k]).collect())
    }
}

/// Scores `positions` with a fresh mentor built from `cfg`.
pub fn score_positions(positions: &[Position], cfg: &MentorConfig) -> Result<Vec<MentorScore>, MentorError> {
    Mentor::new(cfg.clone())?.score_positions(positions)
}
