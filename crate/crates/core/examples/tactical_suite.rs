// The bundled 20-position tactical suite, solved at fixed depth by three
// parameter sets. An EPD file path may be given instead.

use std::error::Error;

use mentor_tune::arena::{mini_suite, run_epd_suite};
use mentor_tune::chess::parse_epd_file;
use mentor_tune::eval::EvalParams;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let suite = mini_suite();
    for (name, params) in [
        ("zero", EvalParams::zero()),
        ("material", EvalParams::material_only()),
        ("reference", EvalParams::reference()),
    ] {
        let r = run_epd_suite(&suite, &params, 3);
        let missed: Vec<&str> = r.entries.iter().filter(|e| !e.solved).map(|e| e.id.as_str()).collect();
        println!("{name:<9} {:>2}/{}  missed: {}", r.solved, r.total, missed.join(" "));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let Some(path) = std::env::args().nth(1) else {
        return run_example();
    };
    let records = parse_epd_file(&std::fs::read_to_string(path)?)?;
    let r = run_epd_suite(&records, &EvalParams::reference(), 4);
    print!("{}", r.to_csv());
    println!("{}/{}", r.solved, r.total);
    Ok(())
}
