// The whole pipeline through the command-line interface, in process:
// self-play, ingest, train, then replay the training manifest.

use std::error::Error;

use mentor_tune::cli;

fn step(args: &[&str]) -> Result<(), Box<dyn Error>> {
    println!("$ mentor-tune {}", args.join(" "));
    let mut argv = vec!["mentor-tune"];
    argv.extend_from_slice(args);
    let mut out = std::io::stdout();
    match cli::run(argv, &mut out) {
        0 => Ok(()),
        code => Err(format!("exit code {code}").into()),
    }
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let d = dir.path().to_str().ok_or("non-UTF-8 temp path")?;
    let run = format!("{d}/run");
    let manifest = format!("{run}/train.manifest.json");
    step(&["--out", d, "selfplay", "--games", "150"])?;
    step(&["--out", d, "ingest", "--pgn", &format!("{d}/games.pgn"), "--count", "120"])?;
    step(&["--out", &run, "train", "--dataset", d, "--population", "20", "--generations", "10", "--positions", "50"])?;
    step(&["--out", &run, "replay", "--manifest", &manifest])?;
    print!("{}", std::fs::read_to_string(format!("{run}/generations.csv"))?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
