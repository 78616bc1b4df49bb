// Self-play games, sampled positions, mentor labels and a train/test split.
//
//     cargo run --release --example build_dataset -- <out-dir>

use std::error::Error;
use std::path::Path;

use mentor_tune::eval::EvalParams;
use mentor_tune::mentor::{score_positions, MentorConfig};
use mentor_tune::training::{games_to_pgn, generate_games, sample_positions, sha256_hex, Dataset, SelfPlayConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn build(dir: &Path, games: usize, positions: usize) -> Result<Dataset, Box<dyn Error>> {
    let cfg = SelfPlayConfig {
        games,
        seed: 11,
        ..Default::default()
    };
    let games = generate_games(&EvalParams::reference(), &cfg);
    let pgn = games_to_pgn(&games);
    let sampled = sample_positions(&games, positions, &mut ChaCha8Rng::seed_from_u64(11))?;
    let scores = score_positions(&sampled, &MentorConfig::synthetic(EvalParams::reference(), 1))?;
    let ds = Dataset::from_scored(sampled, &scores, positions / 2, sha256_hex(pgn.as_bytes()));
    ds.check_disjoint()?;
    ds.save(dir)?;
    std::fs::write(dir.join("games.pgn"), pgn)?;
    println!(
        "{} games -> {} train + {} test positions in {}",
        games.len(),
        ds.train.len(),
        ds.test.len(),
        dir.display()
    );
    println!("dataset digest {}", ds.digest());
    for l in ds.train.iter().take(3) {
        println!("  {}\t{}", l.position.to_fen(), l.score_cp);
    }
    Ok(ds)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let ds = build(dir.path(), 120, 100)?;
    assert_eq!(Dataset::load(dir.path())?.digest(), ds.digest());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(dir) => build(Path::new(&dir), 2400, 2000).map(drop),
        None => run_example(),
    }
}
