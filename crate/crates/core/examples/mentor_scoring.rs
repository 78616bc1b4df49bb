// Score positions with a mentor. The synthetic mentor evaluates with hidden
// parameters (optionally searching and adding noise); with an engine command
// any UCI engine becomes the mentor.
//
//     cargo run --release --example mentor_scoring
//     cargo run --release --example mentor_scoring -- "stockfish"

use std::error::Error;

use mentor_tune::chess::parse_fen;
use mentor_tune::eval::EvalParams;
use mentor_tune::mentor::{Mentor, MentorConfig};

const FENS: [&str; 4] = [
    "r1bq1rk1/pp2bppp/2n1pn2/3p4/2PP4/2N2N2/PP2BPPP/R2QKB1R w KQ - 0 8",
    "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
    "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
    "4k3/8/8/3q4/8/4N3/8/4K3 w - - 0 1",
];

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let positions = FENS.iter().map(|f| parse_fen(f)).collect::<Result<Vec<_>, _>>()?;
    let dir = tempfile::tempdir()?;
    let cache = dir.path().join("mentor_cache.tsv");

    let static_cfg = MentorConfig::synthetic(EvalParams::reference(), 1);
    let mut searching = MentorConfig::synthetic(EvalParams::reference(), 2);
    searching.noise_cp = 10;
    searching.seed = 5;

    let mut a = Mentor::new(static_cfg)?.with_cache_file(&cache)?;
    let mut b = Mentor::new(searching)?;
    let flat = a.score_positions(&positions)?;
    let deep = b.score_positions(&positions)?;
    println!("{:>8} {:>14}  position", "static", "2-ply + noise");
    for (s, d) in flat.iter().zip(&deep) {
        println!("{:>8} {:>14}  {}", s.score_cp, d.score_cp, s.position_id);
    }

    // A second pass is answered from the cache file.
    let mut again = Mentor::new(MentorConfig::synthetic(EvalParams::reference(), 1))?.with_cache_file(&cache)?;
    assert_eq!(again.score_positions(&positions)?, flat);
    println!("cached rescoring needed {} mentor queries", again.queries());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let Some(engine) = std::env::args().nth(1) else {
        return run_example();
    };
    let positions = FENS.iter().map(|f| parse_fen(f)).collect::<Result<Vec<_>, _>>()?;
    let mut mentor = Mentor::new(MentorConfig::uci(engine, 2))?;
    for s in mentor.score_positions(&positions)? {
        println!("{:>6}  {}", s.score_cp, s.position_id);
    }
    Ok(())
}
