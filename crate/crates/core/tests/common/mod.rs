#![allow(dead_code)]

pub mod oracle;

use mentor_tune::chess::{Position, START_FEN};
use mentor_tune::eval::EvalParams;
use mentor_tune::genome::{decode, Chromosome};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Starting points for random walks: the initial position plus the usual
/// perft stress positions (castling, en passant, promotions, pins).
pub const WALK_STARTS: [&str; 5] = [
    START_FEN,
    "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
    "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
    "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1",
    "rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8",
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positions reached by random legal walks of 0..100 plies.
pub fn random_positions(count: usize, seed: u64) -> Vec<Position> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut p = Position::from_fen(WALK_STARTS.choose(&mut rng).unwrap()).unwrap();
        for _ in 0..rng.gen_range(0..100) {
            let moves = p.legal_moves();
            let Some(&m) = moves.choose(&mut rng) else {
                break;
            };
            p.make_move(m);
        }
        out.push(p);
    }
    out
}

pub fn random_params<R: Rng>(rng: &mut R) -> EvalParams {
    decode(&Chromosome::random(rng))
}
