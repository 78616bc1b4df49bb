// A short match between two parameter sets from the bundled openings, each
// opening played once with each color, and the implied rating gap.

use mentor_tune::arena::{bundled_openings, play_match};
use mentor_tune::eval::EvalParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let openings = bundled_openings();
    let result = play_match(&EvalParams::reference(), &EvalParams::material_only(), 12, 2, &openings);
    for (i, g) in result.records.iter().enumerate() {
        let white = if g.a_is_white { "reference" } else { "material" };
        println!(
            "game {:>2}: {white:<9} as White, {:>3} plies, {} ({})",
            i + 1,
            g.moves.len(),
            g.outcome.pgn(),
            g.termination.as_str()
        );
    }
    print!("{}", result.summary_csv());
    match result.elo_diff() {
        Some(elo) => println!("reference is {elo:+.0} Elo relative to material-only"),
        None => println!("a clean sweep has no finite rating difference"),
    }
    println!("{} bytes of PGN", result.to_pgn("reference", "material").len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
