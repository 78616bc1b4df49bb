// Parse a FEN, list the legal moves in SAN and count leaf nodes.
//
//     cargo run --release --example perft -- "<fen>" [depth]

use std::error::Error;

use mentor_tune::chess::{generate_moves, parse_fen, to_san};

const KIWIPETE: &str = "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1";

pub fn run(fen: &str, depth: u32) -> Result<Vec<u64>, Box<dyn Error>> {
    let pos = parse_fen(fen)?;
    let moves: Vec<String> = generate_moves(&pos).into_iter().map(|m| to_san(&pos, m)).collect();
    println!("{}", pos.to_fen());
    println!("{} legal moves: {}", moves.len(), moves.join(" "));
    let mut counts = Vec::new();
    for d in 1..=depth {
        let n = pos.perft(d);
        println!("perft({d}) = {n}");
        counts.push(n);
    }
    Ok(counts)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let counts = run(KIWIPETE, 3)?;
    assert_eq!(counts, [48, 2039, 97862]);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [] => run_example(),
        [fen] => run(fen, 3).map(drop),
        [fen, depth, ..] => run(fen, depth.parse()?).map(drop),
    }
}
