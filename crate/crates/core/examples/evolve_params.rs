// Evolve evaluation parameters against a synthetic mentor whose hidden
// parameters are the reference values, and compare what was recovered.
//
//     cargo run --release --example evolve_params -- [generations]

use std::error::Error;

use mentor_tune::eval::{EvalParams, PARAM_COUNT, PARAM_NAMES};
use mentor_tune::ga::REPORT_CSV_HEADER;
use mentor_tune::mentor::{score_positions, MentorConfig};
use mentor_tune::training::{generate_games, run_evolution_with, sample_positions, Dataset, EvolutionOptions, Profile, SelfPlayConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run(generations: usize, games: usize, positions: usize) -> Result<f64, Box<dyn Error>> {
    let hidden = EvalParams::reference();
    let corpus = SelfPlayConfig {
        games,
        seed: 1,
        ..Default::default()
    };
    let sampled = sample_positions(&generate_games(&hidden, &corpus), positions, &mut ChaCha8Rng::seed_from_u64(1))?;
    let scores = score_positions(&sampled, &MentorConfig::synthetic(hidden, 1))?;
    let ds = Dataset::from_scored(sampled, &scores, positions / 2, String::new());

    let mut ga = Profile::Desk.ga_config(1);
    ga.generations = generations;
    ga.positions_per_generation = ga.positions_per_generation.min(positions / 2);
    println!("{REPORT_CSV_HEADER}");
    let result = run_evolution_with(&ds, &ga, &EvolutionOptions::default(), |r| {
        if r.generation % 10 == 0 || r.generation + 1 == generations {
            println!("{}", r.csv_row(true));
        }
        Ok(())
    })?;
    let test = result.test_error_cp.unwrap_or(f64::NAN);
    println!("test error {test:.1} cp");

    let found = result.best_params();
    println!("{:<34} {:>7} {:>7}", "parameter", "hidden", "found");
    for k in 0..PARAM_COUNT {
        println!("{:<34} {:>7} {:>7}", PARAM_NAMES[k], hidden.values()[k], found.values()[k]);
    }
    Ok(test)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    run(20, 300, 240).map(drop)
}

fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(g) => run(g.parse()?, 2400, 2000).map(drop),
        None => run(100, 2400, 2000).map(drop),
    }
}
