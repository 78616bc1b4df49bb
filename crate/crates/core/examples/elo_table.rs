// Winning rate and rating difference, both directions.

use mentor_tune::arena::{elo_diff, elo_expected_score};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (games, points) in [(300.0, 199.0), (300.0, 151.5), (300.0, 202.5)] {
        let w: f64 = points / games;
        println!("{points:>5} / {games}  {:>5.1}%  {:+.0} Elo", w * 100.0, elo_diff(w)?);
    }
    for rd in [-400, -200, -100, 0, 100, 200, 400] {
        println!("{rd:>+5} Elo -> expected score {:.3}", elo_expected_score(rd as f64));
    }
    assert!(elo_diff(1.0).is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
