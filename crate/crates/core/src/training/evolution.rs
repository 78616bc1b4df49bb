use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arena::search_score_white;
use crate::chess::Position;
use crate::eval::{extract_features, EvalParams, FeatureVector};
use crate::ga::{best_index, compute_fitness, evolve_generation, summarize, GaConfig, GenerationReport, Organism};
use crate::genome::{decode, Chromosome};
use crate::mentor::{MentorScore, SCORE_CLAMP};

use super::dataset::{Dataset, Labeled};
use super::TrainingError;

/// A labeled position with its features extracted once.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub position: Position,
    pub features: FeatureVector,
    pub score_cp: i32,
}

pub fn prepare(items: &[Labeled]) -> Vec<Sample> {
    items
        .par_iter()
        .map(|l| Sample {
            position: l.position.clone(),
            features: extract_features(&l.position),
            score_cp: l.score_cp,
        })
        .collect()
}

fn clamp(s: i32) -> i32 {
    s.clamp(-SCORE_CLAMP, SCORE_CLAMP)
}

/// Mean absolute difference between the mentor's scores and `params`'
/// evaluation (a plain search when `depth` > 0). Summed exactly in integers.
pub fn params_error<'a, I>(params: &EvalParams, batch: I, depth: u32) -> f64
where
    I: IntoIterator<Item = &'a Sample>,
{
    let mut total: i64 = 0;
    let mut n: i64 = 0;
    for s in batch {
        let own = if depth == 0 {
            s.features.dot(params)
        } else {
            search_score_white(&s.position, params, depth, false)
        };
        total += i64::from((s.score_cp - clamp(own)).abs());
        n += 1;
    }
    assert!(n > 0, "empty batch");
    total as f64 / n as f64
}

/// Mean error of the decoded chromosome over scored positions.
pub fn organism_error(c: &Chromosome, batch: &[(Position, MentorScore)]) -> f64 {
    let params = decode(c);
    let samples: Vec<Sample> = batch
        .iter()
        .map(|(p, m)| Sample {
            position: p.clone(),
            features: extract_features(p),
            score_cp: m.score_cp,
        })
        .collect();
    params_error(&params, &samples, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvolutionOptions {
    /// Draw a fresh training batch every generation; otherwise one batch is drawn and kept.
    pub resample: bool,
    /// Search depth individuals use to score positions (0 = static evaluation).
    pub individual_depth: u32,
}

impl Default for EvolutionOptions {
    fn default() -> Self {
        EvolutionOptions {
            resample: true,
            individual_depth: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub best: Organism,
    pub reports: Vec<GenerationReport>,
    /// Best organism's error on the test split, if it is nonempty.
    pub test_error_cp: Option<f64>,
}

impl EvolutionResult {
    pub fn best_params(&self) -> EvalParams {
        decode(&self.best.chromosome)
    }
}

pub fn run_evolution(dataset: &Dataset, ga: &GaConfig, opts: &EvolutionOptions) -> Result<EvolutionResult, TrainingError> {
    run_evolution_with(dataset, ga, opts, |_| Ok(()))
}

/// Runs the GA against the training split. Generation `g` is evaluated on
/// its own batch of positions, reported through `on_report`, and then bred
/// into generation `g + 1`. A run of `G` generations yields `G` reports;
/// with `G = 0` the random population is evaluated once and its best kept.
pub fn run_evolution_with<F>(dataset: &Dataset, ga: &GaConfig, opts: &EvolutionOptions, mut on_report: F) -> Result<EvolutionResult, TrainingError>
where
    F: FnMut(&GenerationReport) -> Result<(), TrainingError>,
{
    ga.validate()?;
    let n = ga.positions_per_generation;
    if dataset.train.len() < n {
        return Err(TrainingError::SmallTrainingSet {
            have: dataset.train.len(),
            need: n,
        });
    }
    let train = prepare(&dataset.train);
    let mut rng = ChaCha8Rng::seed_from_u64(ga.seed);
    let depth = opts.individual_depth;
    let error_on = |batch: &[usize], c: &Chromosome| params_error(&decode(c), batch.iter().map(|&i| &train[i]), depth);

    let draw = |rng: &mut ChaCha8Rng| rand::seq::index::sample(rng, train.len(), n).into_vec();
    let mut started = Instant::now();
    let chromosomes: Vec<Chromosome> = (0..ga.population_size).map(|_| Chromosome::random(&mut rng)).collect();
    let mut batch = draw(&mut rng);
    let errors: Vec<f64> = chromosomes.par_iter().map(|c| error_on(&batch, c)).collect();
    let mut population: Vec<Organism> = chromosomes
        .into_iter()
        .zip(errors)
        .map(|(c, e)| Organism::evaluated(c, e))
        .collect();

    let mut reports = Vec::with_capacity(ga.generations);
    for g in 0..ga.generations {
        let (best_error_cp, mean_error_cp) = summarize(&population);
        let report = GenerationReport {
            generation: g,
            best_error_cp,
            mean_error_cp,
            best_chromosome: population[best_index(&population)].chromosome,
            wall_time: started.elapsed(),
        };
        on_report(&report).map_err(|e| TrainingError::Generation {
            generation: g,
            source: Box::new(e),
        })?;
        reports.push(report);
        if g + 1 == ga.generations {
            break;
        }
        started = Instant::now();
        let weights = compute_fitness(&population.iter().map(|o| o.error_cp.expect("evaluated")).collect::<Vec<_>>());
        if opts.resample {
            batch = draw(&mut rng);
        }
        population = evolve_generation(&population, &weights, ga, &mut rng, |c| error_on(&batch, c));
    }

    let best = population[best_index(&population)];
    let test = prepare(&dataset.test);
    let test_error_cp = (!test.is_empty()).then(|| params_error(&decode(&best.chromosome), &test, depth));
    Ok(EvolutionResult {
        best,
        reports,
        test_error_cp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::encode;

    fn labeled(fens: &[&str], params: &EvalParams) -> Vec<Labeled> {
        fens.iter()
            .map(|f| {
                let position = Position::from_fen(f).unwrap();
                let score_cp = clamp(crate::eval::evaluate(&position, params));
                Labeled { position, score_cp }
            })
            .collect()
    }

    const FENS: [&str; 6] = [
        "4k3/8/8/8/8/8/4P3/4K3 w - - 0 1",
        "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
        "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
        "r1bq1rk1/pp2bppp/2n1pn2/3p4/2PP4/2N2N2/PP2BPPP/R2QKB1R w KQ - 0 8",
        "rnbqkbnr/pp1ppppp/8/2p5/4P3/5N2/PPPP1PPP/RNBQKB1R w KQkq - 1 2",
        "6k1/5ppp/8/8/8/8/5PPP/R5K1 w - - 0 1",
    ];

    #[test]
    fn self_distance_is_zero() {
        let hidden = EvalParams::reference();
        let items = labeled(&FENS, &hidden);
        let batch: Vec<(Position, MentorScore)> = items
            .iter()
            .map(|l| {
                (
                    l.position.clone(),
                    MentorScore {
                        position_id: l.position.to_fen(),
                        score_cp: l.score_cp,
                    },
                )
            })
            .collect();
        assert_eq!(organism_error(&encode(&hidden).unwrap(), &batch), 0.0);
    }

    #[test]
    fn single_position_error() {
        let p = Position::from_fen("4k3/8/8/8/8/8/3P4/4K3 w - - 0 1").unwrap();
        let mut params = EvalParams::zero();
        params.set(crate::eval::Param::PawnValue, 72);
        let s = Sample {
            features: extract_features(&p),
            position: p,
            score_cp: 100,
        };
        assert_eq!(params_error(&params, [&s], 0), 28.0);
    }

    #[test]
    fn errors_are_bounded_by_clamp() {
        let p = Position::from_fen("4k3/8/8/8/8/8/8/QQQQK3 w - - 0 1").unwrap();
        let s = Sample {
            features: extract_features(&p),
            position: p,
            score_cp: -3000,
        };
        let mut max = EvalParams::zero();
        max.values_mut().iter_mut().enumerate().for_each(|(i, v)| *v = crate::eval::param_max(i));
        assert_eq!(params_error(&max, [&s], 0), 6000.0);
    }

    fn tiny_dataset() -> Dataset {
        let items = labeled(&FENS, &EvalParams::reference());
        Dataset {
            train: items[..4].to_vec(),
            test: items[4..].to_vec(),
            source_digest: String::new(),
        }
    }

    #[test]
    fn zero_generations_evaluates_once() {
        let ga = GaConfig {
            population_size: 8,
            generations: 0,
            positions_per_generation: 4,
            seed: 1,
            ..Default::default()
        };
        let r = run_evolution(&tiny_dataset(), &ga, &EvolutionOptions::default()).unwrap();
        assert!(r.reports.is_empty());
        assert!(r.best.error_cp.is_some());
        assert!(r.test_error_cp.is_some());
    }

    #[test]
    fn fixed_batch_best_error_never_rises() {
        let ga = GaConfig {
            population_size: 16,
            generations: 30,
            positions_per_generation: 3,
            seed: 2,
            ..Default::default()
        };
        let opts = EvolutionOptions {
            resample: false,
            individual_depth: 0,
        };
        let r = run_evolution(&tiny_dataset(), &ga, &opts).unwrap();
        assert_eq!(r.reports.len(), 30);
        for w in r.reports.windows(2) {
            assert!(w[1].best_error_cp <= w[0].best_error_cp);
        }
        assert!(r.reports.iter().all(|x| x.best_error_cp <= x.mean_error_cp));
        assert!(r.reports.iter().all(|x| x.wall_time > std::time::Duration::ZERO));
    }

    #[test]
    fn undersized_training_split_is_rejected() {
        let ga = GaConfig {
            population_size: 4,
            positions_per_generation: 5,
            ..Default::default()
        };
        assert!(matches!(
            run_evolution(&tiny_dataset(), &ga, &EvolutionOptions::default()),
            Err(TrainingError::SmallTrainingSet { have: 4, need: 5 })
        ));
    }
}
