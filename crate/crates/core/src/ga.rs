//! Generational genetic algorithm over 230-bit chromosomes: roulette
//! selection, single-point crossover, per-bit mutation and single elitism.

use std::time::Duration;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::genome::{Chromosome, CHROMOSOME_BITS};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid GA configuration: {0}")]
pub struct GaConfigError(pub String);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_rate: f64,
    /// Per-bit flip probability.
    pub mutation_rate: f64,
    pub generations: usize,
    /// Training positions drawn for each generation.
    pub positions_per_generation: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 1000,
            crossover_rate: 0.75,
            mutation_rate: 0.002,
            generations: 300,
            positions_per_generation: 1000,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), GaConfigError> {
        if self.population_size < 2 || self.population_size % 2 != 0 {
            return Err(GaConfigError(format!(
                "population size must be even and at least 2, got {}",
                self.population_size
            )));
        }
        for (name, r) in [("crossover", self.crossover_rate), ("mutation", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&r) {
                return Err(GaConfigError(format!("{name} rate {r} outside [0, 1]")));
            }
        }
        if self.positions_per_generation == 0 {
            return Err(GaConfigError("positions per generation must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Organism {
    pub chromosome: Chromosome,
    /// Mean absolute error against the mentor, once evaluated.
    pub error_cp: Option<f64>,
}

impl Organism {
    pub fn new(chromosome: Chromosome) -> Organism {
        Organism {
            chromosome,
            error_cp: None,
        }
    }

    pub fn evaluated(chromosome: Chromosome, error_cp: f64) -> Organism {
        Organism {
            chromosome,
            error_cp: Some(error_cp),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationReport {
    pub generation: usize,
    pub best_error_cp: f64,
    pub mean_error_cp: f64,
    pub best_chromosome: Chromosome,
    pub wall_time: Duration,
}

pub const REPORT_CSV_HEADER: &str = "generation,best_error_cp,mean_error_cp,seconds";

impl GenerationReport {
    /// One CSV row. The seconds column stays empty unless `timing` is set so
    /// that runs with equal inputs produce identical files.
    pub fn csv_row(&self, timing: bool) -> String {
        let seconds = if timing {
            format!("{:.3}", self.wall_time.as_secs_f64())
        } else {
            String::new()
        };
        format!(
            "{},{:.3},{:.3},{}",
            self.generation, self.best_error_cp, self.mean_error_cp, seconds
        )
    }
}

/// Selection weight `max(E) - E_i + 1` for each error.
///
/// # Panics
/// On an empty slice.
pub fn compute_fitness(errors: &[f64]) -> Vec<f64> {
    assert!(!errors.is_empty(), "no organisms to weigh");
    let max = errors.iter().copied().fold(f64::MIN, f64::max);
    errors.iter().map(|e| max - e + 1.0).collect()
}

/// Draws an index with probability proportional to its weight.
pub fn select_parent<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    WeightedIndex::new(weights).expect("positive weights").sample(rng)
}

/// With probability `rate`, swaps the suffixes of `a` and `b` after a cut
/// drawn uniformly from 1..=229; otherwise returns copies.
pub fn crossover<R: Rng + ?Sized>(a: &Chromosome, b: &Chromosome, rate: f64, rng: &mut R) -> (Chromosome, Chromosome) {
    if rng.gen::<f64>() < rate {
        let cut = rng.gen_range(1..CHROMOSOME_BITS);
        (a.splice(b, cut), b.splice(a, cut))
    } else {
        (*a, *b)
    }
}

/// Flips each bit independently with probability `rate`.
pub fn mutate<R: Rng + ?Sized>(c: &Chromosome, rate: f64, rng: &mut R) -> Chromosome {
    let mut out = *c;
    for bit in 0..CHROMOSOME_BITS {
        if rng.gen::<f64>() < rate {
            out.flip(bit);
        }
    }
    out
}

/// Index of the lowest error; the earliest wins ties.
pub fn best_index(population: &[Organism]) -> usize {
    let mut best = 0;
    for (i, o) in population.iter().enumerate() {
        if error_of(o) < error_of(&population[best]) {
            best = i;
        }
    }
    best
}

fn error_of(o: &Organism) -> f64 {
    o.error_cp.expect("organism not evaluated")
}

/// Breeds the next population from an evaluated one.
///
/// Offspring come from repeated select/select/crossover/mutate. They and the
/// current best are then scored with `score`, and the best replaces the
/// offspring with the highest error, so it survives unchanged.
pub fn evolve_generation<R, F>(population: &[Organism], weights: &[f64], cfg: &GaConfig, rng: &mut R, score: F) -> Vec<Organism>
where
    R: Rng + ?Sized,
    F: Fn(&Chromosome) -> f64 + Sync,
{
    let n = population.len();
    let pick = WeightedIndex::new(weights).expect("positive weights");
    let mut children = Vec::with_capacity(n + 1);
    while children.len() < n {
        let a = &population[pick.sample(rng)].chromosome;
        let b = &population[pick.sample(rng)].chromosome;
        let (c1, c2) = crossover(a, b, cfg.crossover_rate, rng);
        children.push(mutate(&c1, cfg.mutation_rate, rng));
        if children.len() < n {
            children.push(mutate(&c2, cfg.mutation_rate, rng));
        }
    }
    let elite = population[best_index(population)].chromosome;
    children.push(elite);
    let errors: Vec<f64> = children.par_iter().map(&score).collect();
    let mut next: Vec<Organism> = children
        .into_iter()
        .zip(errors)
        .map(|(c, e)| Organism::evaluated(c, e))
        .collect();
    let elite = next.pop().expect("elite appended");
    let mut worst = 0;
    for (i, o) in next.iter().enumerate() {
        if error_of(o) > error_of(&next[worst]) {
            worst = i;
        }
    }
    next[worst] = elite;
    next
}

/// Best and mean error of an evaluated population.
pub fn summarize(population: &[Organism]) -> (f64, f64) {
    let best = error_of(&population[best_index(population)]);
    let mean = population.iter().map(error_of).sum::<f64>() / population.len() as f64;
    (best, mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn fitness_transform() {
        assert_eq!(compute_fitness(&[10.0, 20.0, 30.0]), vec![21.0, 11.0, 1.0]);
        assert_eq!(compute_fitness(&[7.0; 4]), vec![1.0; 4]);
        let w = compute_fitness(&[30.0, 5.0, 30.0, 12.0]);
        let top = w.iter().cloned().fold(f64::MIN, f64::max);
        assert!(w.iter().enumerate().all(|(i, &x)| i == 1 || x < top));
    }

    #[test]
    #[should_panic]
    fn fitness_of_nothing() {
        compute_fitness(&[]);
    }

    #[test]
    fn crossover_edges() {
        let (a, b) = (Chromosome::zeros(), Chromosome::ones());
        let mut r = rng(1);
        assert_eq!(crossover(&a, &b, 0.0, &mut r), (a, b));
        for _ in 0..50 {
            let (c1, c2) = crossover(&a, &b, 1.0, &mut r);
            let k = (0..CHROMOSOME_BITS).find(|&i| c1.get(i)).unwrap();
            assert!((1..CHROMOSOME_BITS).contains(&k));
            assert!((k..CHROMOSOME_BITS).all(|i| c1.get(i)));
            assert_eq!(c2, c1.complement());
        }
    }

    #[test]
    fn mutation_edges() {
        let c = Chromosome::random(&mut rng(2));
        let mut r = rng(3);
        assert_eq!(mutate(&c, 0.0, &mut r), c);
        assert_eq!(mutate(&c, 1.0, &mut r), c.complement());
    }

    #[test]
    fn config_checks() {
        assert!(GaConfig::default().validate().is_ok());
        for bad in [
            GaConfig { population_size: 7, ..Default::default() },
            GaConfig { population_size: 0, ..Default::default() },
            GaConfig { mutation_rate: 1.5, ..Default::default() },
            GaConfig { crossover_rate: -0.1, ..Default::default() },
            GaConfig { positions_per_generation: 0, ..Default::default() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    fn ones_error(c: &Chromosome) -> f64 {
        c.count_ones() as f64
    }

    #[test]
    fn identical_population_is_a_fixed_point() {
        let c = Chromosome::random(&mut rng(4));
        let pop = vec![Organism::evaluated(c, ones_error(&c)); 10];
        let cfg = GaConfig {
            population_size: 10,
            mutation_rate: 0.0,
            ..Default::default()
        };
        let w = compute_fitness(&pop.iter().map(|o| o.error_cp.unwrap()).collect::<Vec<_>>());
        let next = evolve_generation(&pop, &w, &cfg, &mut rng(5), ones_error);
        assert_eq!(next, pop);
    }

    #[test]
    fn elite_survives_and_size_is_kept() {
        let cfg = GaConfig {
            population_size: 20,
            mutation_rate: 0.05,
            ..Default::default()
        };
        let mut r = rng(6);
        let mut pop: Vec<Organism> = (0..20)
            .map(|_| {
                let c = Chromosome::random(&mut r);
                Organism::evaluated(c, ones_error(&c))
            })
            .collect();
        let mut last_best = summarize(&pop).0;
        for _ in 0..100 {
            let best = pop[best_index(&pop)].chromosome;
            let w = compute_fitness(&pop.iter().map(|o| o.error_cp.unwrap()).collect::<Vec<_>>());
            pop = evolve_generation(&pop, &w, &cfg, &mut r, ones_error);
            assert_eq!(pop.len(), 20);
            assert!(pop.iter().any(|o| o.chromosome == best));
            let (b, m) = summarize(&pop);
            assert!(b <= last_best && b <= m);
            last_best = b;
        }
        assert!(last_best < 90.0, "{last_best}");
    }

    #[test]
    fn csv_row_format() {
        let r = GenerationReport {
            generation: 3,
            best_error_cp: 28.0,
            mean_error_cp: 101.25,
            best_chromosome: Chromosome::zeros(),
            wall_time: Duration::from_millis(1500),
        };
        assert_eq!(r.csv_row(false), "3,28.000,101.250,");
        assert_eq!(r.csv_row(true), "3,28.000,101.250,1.500");
    }
}
