//! The mentor-assisted learning pipeline: sample positions from games, label
//! them with a mentor, and evolve evaluation parameters to match the labels.

mod corpus;
mod dataset;
mod evolution;

use serde::{Deserialize, Serialize};

use crate::ga::{GaConfig, GaConfigError};

pub use corpus::{games_to_pgn, generate_games, SelfPlayConfig};
pub use dataset::{eligible_positions, labeled_from_tsv, labeled_to_tsv, sample_positions, sha256_hex, Dataset, Labeled, BOOK_PLIES};
pub use evolution::{
    organism_error, params_error, prepare, run_evolution, run_evolution_with, EvolutionOptions, EvolutionResult, Sample,
};

#[derive(Debug, thiserror::Error)]
pub enum TrainingError {
    #[error("only {distinct} distinct positions from {usable} usable games, {requested} requested")]
    TooFewGames {
        usable: usize,
        distinct: usize,
        requested: usize,
    },
    #[error("training split has {have} positions, {need} needed per generation")]
    SmallTrainingSet { have: usize, need: usize },
    #[error("test position also in training split: {0}")]
    Overlap(String),
    #[error("dataset line {line}: {reason}")]
    DatasetLine { line: usize, reason: String },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("generation {generation}: {source}")]
    Generation {
        generation: usize,
        #[source]
        source: Box<TrainingError>,
    },
    #[error(transparent)]
    Ga(#[from] GaConfigError),
    #[error(transparent)]
    Mentor(#[from] crate::mentor::MentorError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Named run sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Population 50, 100 generations, 500 positions per generation, 1000/1000 split.
    Desk,
    /// Population 1000, 300 generations, 1000 positions per generation, 5000/5000 split.
    Paper,
}

impl Profile {
    pub fn ga_config(self, seed: u64) -> GaConfig {
        match self {
            Profile::Desk => GaConfig {
                population_size: 50,
                generations: 100,
                positions_per_generation: 500,
                seed,
                ..GaConfig::default()
            },
            Profile::Paper => GaConfig { seed, ..GaConfig::default() },
        }
    }

    /// Training and test split sizes.
    pub fn split(self) -> (usize, usize) {
        match self {
            Profile::Desk => (1000, 1000),
            Profile::Paper => (5000, 5000),
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "desk" => Ok(Profile::Desk),
            "paper" => Ok(Profile::Paper),
            _ => Err(format!("unknown profile `{s}` (expected desk or paper)")),
        }
    }
}
