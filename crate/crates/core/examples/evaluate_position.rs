// Feature-by-feature breakdown of the static evaluation.
//
//     cargo run --example evaluate_position -- "<fen>"

use std::error::Error;

use mentor_tune::chess::parse_fen;
use mentor_tune::eval::{evaluate, extract_features, EvalParams, PARAM_COUNT, PARAM_NAMES, PARAM_SIGNS};

pub fn run(fen: &str) -> Result<i32, Box<dyn Error>> {
    let pos = parse_fen(fen)?;
    let params = EvalParams::reference();
    let features = extract_features(&pos);
    println!("{:<34} {:>7} {:>6} {:>8}", "parameter", "feature", "value", "term");
    for k in 0..PARAM_COUNT {
        let f = features.0[k];
        if f == 0 {
            continue;
        }
        let term = PARAM_SIGNS[k] * f * params.values()[k] as i32;
        println!("{:<34} {:>7} {:>6} {:>8}", PARAM_NAMES[k], f, params.values()[k], term);
    }
    let score = evaluate(&pos, &params);
    println!("total (White's view): {score} cp");
    println!("mirrored position:    {} cp", evaluate(&pos.mirrored(), &params));
    Ok(score)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let score = run("r1bq1rk1/pp2bppp/2n1pn2/3p4/2PP4/2N2N2/PP2BPPP/R2QKB1R w KQ - 0 8")?;
    assert_eq!(score, features_dot("r1bq1rk1/pp2bppp/2n1pn2/3p4/2PP4/2N2N2/PP2BPPP/R2QKB1R w KQ - 0 8"));
    Ok(())
}

fn features_dot(fen: &str) -> i32 {
    extract_features(&parse_fen(fen).unwrap()).dot(&EvalParams::reference())
}

fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(fen) => run(&fen).map(drop),
        None => run_example(),
    }
}
