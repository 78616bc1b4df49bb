//! Command-line front end. Every command writes `<out>/<command>.manifest.json`
//! recording its resolved arguments and the digests of what it read and wrote;
//! `replay` re-runs a manifest and checks the outputs match.
//!
//! Every flag can also be set through an environment variable named
//! `MENTOR_TUNE_<FLAG>`, for example `MENTOR_TUNE_SEED=7`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arena::{bundled_openings, mini_suite, parse_openings, play_match, run_epd_suite, search_score_white};
use crate::chess::{parse_epd_file, parse_pgn, Position};
use crate::eval::{evaluate, EvalParams};
use crate::ga::{GenerationReport, REPORT_CSV_HEADER};
use crate::genome::{decode, Chromosome, CHROMOSOME_BITS};
use crate::mentor::{serve_uci, Backend, Mentor, MentorConfig};
use crate::training::{
    games_to_pgn, generate_games, run_evolution_with, sample_positions, sha256_hex, Dataset, EvolutionOptions, Profile,
    SelfPlayConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mentor-tune", version, about = "Evolve chess evaluation parameters against a mentor")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "MENTOR_TUNE_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Run size: desk or paper.
    #[arg(long, global = true, env = "MENTOR_TUNE_PROFILE", default_value = "desk")]
    pub profile: Profile,
    /// Mentor backend: synthetic or uci.
    #[arg(long, global = true, env = "MENTOR_TUNE_MENTOR", default_value = "synthetic")]
    pub mentor: Backend,
    /// Engine command line for the uci mentor.
    #[arg(long, global = true, env = "MENTOR_TUNE_ENGINE_CMD")]
    pub engine_cmd: Option<String>,
    /// Search depth (mentor depth for ingest, player depth for match, suite and uci).
    #[arg(long, global = true, env = "MENTOR_TUNE_DEPTH")]
    pub depth: Option<u32>,
    /// Worker thread cap.
    #[arg(long, global = true, env = "MENTOR_TUNE_THREADS")]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, env = "MENTOR_TUNE_OUT", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a game collection by noisy self-play.
    Selfplay(SelfplayArgs),
    /// Sample positions from PGN games, score them with the mentor and split train/test.
    Ingest(IngestArgs),
    /// Evolve parameters against a dataset.
    Train(TrainArgs),
    /// Print the evaluation of one position.
    Eval(EvalArgs),
    /// Play a match between two parameter sets.
    Match(MatchArgs),
    /// Run an EPD best-move suite.
    Suite(SuiteArgs),
    /// Act as a UCI engine on standard input and output.
    Uci(UciArgs),
    /// Re-run a manifest and compare output digests.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct SelfplayArgs {
    /// Number of games (default: enough for the profile's dataset).
    #[arg(long, env = "MENTOR_TUNE_GAMES")]
    pub games: Option<usize>,
    /// Parameters of both players.
    #[arg(long, env = "MENTOR_TUNE_PARAMS", default_value = "@reference")]
    pub params: String,
    #[arg(long, env = "MENTOR_TUNE_WINDOW", default_value_t = 40)]
    pub window: i32,
    #[arg(long, env = "MENTOR_TUNE_BLUNDER_RATE", default_value_t = 0.08)]
    pub blunder_rate: f64,
    #[arg(long, env = "MENTOR_TUNE_MAX_PLIES", default_value_t = 160)]
    pub max_plies: usize,
    /// Plies searched to score candidate moves; 0 uses the static evaluation.
    #[arg(long, env = "MENTOR_TUNE_SEARCH_DEPTH", default_value_t = 0)]
    pub search_depth: u32,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// PGN files to sample from.
    #[arg(long = "pgn", env = "MENTOR_TUNE_PGN", value_delimiter = ',', required = true)]
    pub pgn: Vec<PathBuf>,
    /// Positions to sample (default: the profile's train + test size).
    #[arg(long, env = "MENTOR_TUNE_COUNT")]
    pub count: Option<usize>,
    /// Training share; the default splits evenly.
    #[arg(long, env = "MENTOR_TUNE_TRAIN_SIZE")]
    pub train_size: Option<usize>,
    /// Hidden parameters of the synthetic mentor.
    #[arg(long, env = "MENTOR_TUNE_HIDDEN_PARAMS", default_value = "@reference")]
    pub hidden_params: String,
    /// Uniform noise amplitude of the synthetic mentor.
    #[arg(long, env = "MENTOR_TUNE_NOISE", default_value_t = 0)]
    pub noise: u32,
    /// Mentor score cache file (default: <out>/mentor_cache.tsv).
    #[arg(long, env = "MENTOR_TUNE_CACHE")]
    pub cache: Option<PathBuf>,
    /// Engine processes for the uci mentor.
    #[arg(long, env = "MENTOR_TUNE_PROCESSES", default_value_t = 1)]
    pub processes: usize,
    /// Per-query engine timeout in milliseconds.
    #[arg(long, env = "MENTOR_TUNE_TIMEOUT_MS", default_value_t = 30_000)]
    pub timeout_ms: u64,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Directory holding train.tsv and test.tsv.
    #[arg(long, env = "MENTOR_TUNE_DATASET")]
    pub dataset: PathBuf,
    #[arg(long, env = "MENTOR_TUNE_POPULATION")]
    pub population: Option<usize>,
    #[arg(long, env = "MENTOR_TUNE_GENERATIONS")]
    pub generations: Option<usize>,
    /// Training positions per generation.
    #[arg(long, env = "MENTOR_TUNE_POSITIONS")]
    pub positions: Option<usize>,
    #[arg(long, env = "MENTOR_TUNE_CROSSOVER")]
    pub crossover: Option<f64>,
    #[arg(long, env = "MENTOR_TUNE_MUTATION")]
    pub mutation: Option<f64>,
    /// Keep one batch of positions for the whole run.
    #[arg(long, env = "MENTOR_TUNE_NO_RESAMPLE")]
    pub no_resample: bool,
    /// Search depth individuals use when scoring positions.
    #[arg(long, env = "MENTOR_TUNE_INDIVIDUAL_DEPTH", default_value_t = 0)]
    pub individual_depth: u32,
    /// Fill the seconds column of the generation CSV.
    #[arg(long, env = "MENTOR_TUNE_TIMING")]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, env = "MENTOR_TUNE_FEN")]
    pub fen: String,
    #[arg(long, env = "MENTOR_TUNE_PARAMS", default_value = "@reference")]
    pub params: String,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[arg(long, env = "MENTOR_TUNE_PARAMS_A")]
    pub params_a: String,
    #[arg(long, env = "MENTOR_TUNE_PARAMS_B")]
    pub params_b: String,
    /// Number of games (even).
    #[arg(long, env = "MENTOR_TUNE_GAMES", default_value_t = 100)]
    pub games: usize,
    /// Opening file, one SAN line per opening (default: bundled set).
    #[arg(long, env = "MENTOR_TUNE_OPENINGS")]
    pub openings: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, env = "MENTOR_TUNE_PARAMS", default_value = "@reference")]
    pub params: String,
    /// EPD file (default: bundled mini-suite).
    #[arg(long, env = "MENTOR_TUNE_EPD")]
    pub epd: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UciArgs {
    #[arg(long, env = "MENTOR_TUNE_PARAMS", default_value = "@reference")]
    pub params: String,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    #[arg(long, env = "MENTOR_TUNE_MANIFEST")]
    pub manifest: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Everything needed to reproduce a command's outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments after the program name, with every default made explicit.
    pub argv: Vec<String>,
    pub config: serde_json::Value,
    /// SHA-256 of every input file.
    pub inputs: BTreeMap<String, String>,
    /// SHA-256 of every output file, by file name within the output directory.
    pub outputs: BTreeMap<String, String>,
}

struct Outputs {
    dir: PathBuf,
    files: BTreeMap<String, String>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Outputs, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::File {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            files: BTreeMap::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|source| CliError::File {
            path: path.display().to_string(),
            source,
        })?;
        self.files.insert(name.to_string(), sha256_hex(contents.as_bytes()));
        Ok(path)
    }
}

/// Resolves a parameter source: `@zero`, `@reference`, `@material`, a
/// `NAME=value` file, or a 230-character chromosome file.
pub fn load_params(source: &str, inputs: &mut BTreeMap<String, String>) -> Result<EvalParams, CliError> {
    match source {
        "@zero" => return Ok(EvalParams::zero()),
        "@reference" => return Ok(EvalParams::reference()),
        "@material" => return Ok(EvalParams::material_only()),
        _ => {}
    }
    let text = read(Path::new(source))?;
    inputs.insert(source.to_string(), sha256_hex(text.as_bytes()));
    let trimmed = text.trim();
    if trimmed.len() == CHROMOSOME_BITS && trimmed.chars().all(|c| c == '0' || c == '1') {
        let c: Chromosome = trimmed.parse().map_err(|e| CliError::Runtime(format!("{source}: {e}")))?;
        return Ok(decode(&c));
    }
    EvalParams::from_kv_text(&text).map_err(|e| CliError::Runtime(format!("{source}: {e}")))
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        // Fails harmlessly when a pool already exists (e.g. a replay within one process).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let g = &cli.global;
    match &cli.command {
        Command::Selfplay(a) => cmd_selfplay(g, a, stdout),
        Command::Ingest(a) => cmd_ingest(g, a, stdout),
        Command::Train(a) => cmd_train(g, a, stdout),
        Command::Eval(a) => cmd_eval(g, a, stdout),
        Command::Match(a) => cmd_match(g, a, stdout),
        Command::Suite(a) => cmd_suite(g, a, stdout),
        Command::Uci(a) => {
            let params = load_params(&a.params, &mut BTreeMap::new())?;
            let stdin = io::stdin();
            serve_uci(stdin.lock(), stdout, &params, g.depth.unwrap_or(3)).map_err(runtime)
        }
        Command::Replay(a) => cmd_replay(a, stdout),
    }
}

fn global_argv(g: &GlobalOpts) -> Vec<String> {
    let mut v = vec![
        "--seed".to_string(),
        g.seed.to_string(),
        "--profile".into(),
        format!("{:?}", g.profile).to_lowercase(),
        "--mentor".into(),
        format!("{:?}", g.mentor).to_lowercase(),
        "--out".into(),
        g.out.display().to_string(),
    ];
    if let Some(c) = &g.engine_cmd {
        v.extend(["--engine-cmd".into(), c.clone()]);
    }
    if let Some(d) = g.depth {
        v.extend(["--depth".into(), d.to_string()]);
    }
    v
}

fn finish(
    out: Outputs,
    command: &str,
    g: &GlobalOpts,
    argv: Vec<String>,
    config: serde_json::Value,
    inputs: BTreeMap<String, String>,
) -> Result<(), CliError> {
    let mut full = vec![command.to_string()];
    full.extend(global_argv(g));
    full.extend(argv);
    let manifest = RunManifest {
        tool: "mentor-tune".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        argv: full,
        config,
        inputs,
        outputs: out.files.clone(),
    };
    let text = serde_json::to_string_pretty(&manifest).map_err(runtime)? + "\n";
    let path = out.dir.join(format!("{command}.manifest.json"));
    fs::write(&path, text).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

fn cmd_selfplay(g: &GlobalOpts, a: &SelfplayArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut inputs = BTreeMap::new();
    let params = load_params(&a.params, &mut inputs)?;
    let (train, test) = g.profile.split();
    let cfg = SelfPlayConfig {
        games: a.games.unwrap_or((train + test) * 6 / 5),
        window_cp: a.window,
        blunder_rate: a.blunder_rate,
        max_plies: a.max_plies,
        search_depth: a.search_depth,
        seed: g.seed,
    };
    if !(0.0..=1.0).contains(&cfg.blunder_rate) {
        return Err(CliError::Usage("--blunder-rate must lie in [0, 1]".into()));
    }
    let games = generate_games(&params, &cfg);
    let mut out = Outputs::new(&g.out)?;
    out.write("games.pgn", &games_to_pgn(&games))?;
    writeln!(stdout, "{} games written to {}", games.len(), g.out.join("games.pgn").display()).map_err(runtime)?;
    let argv = vec![
        "--games".to_string(),
        cfg.games.to_string(),
        "--params".into(),
        a.params.clone(),
        "--window".into(),
        a.window.to_string(),
        "--blunder-rate".into(),
        a.blunder_rate.to_string(),
        "--max-plies".into(),
        a.max_plies.to_string(),
        "--search-depth".into(),
        a.search_depth.to_string(),
    ];
    finish(out, "selfplay", g, argv, json!({ "selfplay": cfg, "params": params }), inputs)
}

fn cmd_ingest(g: &GlobalOpts, a: &IngestArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut inputs = BTreeMap::new();
    let (train, test) = g.profile.split();
    let count = a.count.unwrap_or(train + test);
    let train_size = a.train_size.unwrap_or(count / 2);
    if train_size > count {
        return Err(CliError::Usage(format!("--train-size {train_size} exceeds --count {count}")));
    }
    let mut games = Vec::new();
    let mut source = Vec::new();
    for path in &a.pgn {
        let text = read(path)?;
        inputs.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        source.extend_from_slice(text.as_bytes());
        games.extend(parse_pgn(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let positions = sample_positions(&games, count, &mut rng).map_err(runtime)?;

    let depth = g.depth.unwrap_or(2);
    let mut cfg = match g.mentor {
        Backend::Synthetic => MentorConfig::synthetic(load_params(&a.hidden_params, &mut inputs)?, depth),
        Backend::Uci => {
            let cmd = g
                .engine_cmd
                .clone()
                .ok_or_else(|| CliError::Usage("--mentor uci needs --engine-cmd".into()))?;
            MentorConfig::uci(cmd, depth)
        }
    };
    cfg.noise_cp = a.noise;
    cfg.seed = g.seed;
    cfg.processes = a.processes;
    cfg.timeout_ms = a.timeout_ms;
    let cache_path = a.cache.clone().unwrap_or_else(|| g.out.join("mentor_cache.tsv"));
    let mut out = Outputs::new(&g.out)?;
    let mut mentor = Mentor::new(cfg.clone())
        .and_then(|m| m.with_cache_file(&cache_path))
        .map_err(runtime)?;
    let scores = mentor.score_positions(&positions).map_err(runtime)?;
    let ds = Dataset::from_scored(positions, &scores, train_size, sha256_hex(&source));
    ds.check_disjoint().map_err(runtime)?;
    out.write("train.tsv", &crate::training::labeled_to_tsv(&ds.train))?;
    out.write("test.tsv", &crate::training::labeled_to_tsv(&ds.test))?;
    writeln!(
        stdout,
        "{} train + {} test positions, digest {}",
        ds.train.len(),
        ds.test.len(),
        ds.digest()
    )
    .map_err(runtime)?;
    let argv = vec![
        "--pgn".to_string(),
        a.pgn.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(","),
        "--count".into(),
        count.to_string(),
        "--train-size".into(),
        train_size.to_string(),
        "--hidden-params".into(),
        a.hidden_params.clone(),
        "--noise".into(),
        a.noise.to_string(),
        "--cache".into(),
        cache_path.display().to_string(),
        "--processes".into(),
        a.processes.to_string(),
        "--timeout-ms".into(),
        a.timeout_ms.to_string(),
    ];
    let config = json!({
        "count": count,
        "train_size": train_size,
        "mentor": cfg,
        "source_digest": ds.source_digest,
        "dataset_digest": ds.digest(),
    });
    finish(out, "ingest", g, argv, config, inputs)
}

fn cmd_train(g: &GlobalOpts, a: &TrainArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut inputs = BTreeMap::new();
    for name in ["train.tsv", "test.tsv"] {
        let p = a.dataset.join(name);
        inputs.insert(p.display().to_string(), sha256_hex(read(&p)?.as_bytes()));
    }
    let ds = Dataset::load(&a.dataset).map_err(runtime)?;
    let mut ga = g.profile.ga_config(g.seed);
    if let Some(v) = a.population {
        ga.population_size = v;
    }
    if let Some(v) = a.generations {
        ga.generations = v;
    }
    if let Some(v) = a.positions {
        ga.positions_per_generation = v;
    }
    if let Some(v) = a.crossover {
        ga.crossover_rate = v;
    }
    if let Some(v) = a.mutation {
        ga.mutation_rate = v;
    }
    ga.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let opts = EvolutionOptions {
        resample: !a.no_resample,
        individual_depth: a.individual_depth,
    };

    let mut out = Outputs::new(&g.out)?;
    let csv_path = g.out.join("generations.csv");
    let mut csv = String::from(REPORT_CSV_HEADER);
    csv.push('\n');
    fs::write(&csv_path, &csv).map_err(|source| CliError::File {
        path: csv_path.display().to_string(),
        source,
    })?;
    let snapshot = g.out.join("best.chromosome");
    let mut on_report = |r: &GenerationReport| -> Result<(), crate::training::TrainingError> {
        let row = r.csv_row(a.timing) + "\n";
        csv.push_str(&row);
        fs::OpenOptions::new().append(true).open(&csv_path)?.write_all(row.as_bytes())?;
        fs::write(&snapshot, r.best_chromosome.to_bit_string() + "\n")?;
        log::info!("generation {} best {:.2} mean {:.2}", r.generation, r.best_error_cp, r.mean_error_cp);
        Ok(())
    };
    let result = run_evolution_with(&ds, &ga, &opts, &mut on_report).map_err(runtime)?;
    out.files.insert("generations.csv".into(), sha256_hex(csv.as_bytes()));
    out.write("best.chromosome", &(result.best.chromosome.to_bit_string() + "\n"))?;
    out.write("best.params", &result.best_params().to_kv_text())?;
    let best = result.best.error_cp.expect("evaluated");
    match result.test_error_cp {
        Some(t) => writeln!(stdout, "best train error {best:.3} cp, test error {t:.3} cp"),
        None => writeln!(stdout, "best train error {best:.3} cp"),
    }
    .map_err(runtime)?;

    let mut argv = vec!["--dataset".to_string(), a.dataset.display().to_string()];
    argv.extend([
        "--population".into(),
        ga.population_size.to_string(),
        "--generations".into(),
        ga.generations.to_string(),
        "--positions".into(),
        ga.positions_per_generation.to_string(),
        "--crossover".into(),
        ga.crossover_rate.to_string(),
        "--mutation".into(),
        ga.mutation_rate.to_string(),
        "--individual-depth".into(),
        a.individual_depth.to_string(),
    ]);
    if a.no_resample {
        argv.push("--no-resample".into());
    }
    if a.timing {
        argv.push("--timing".into());
    }
    let config = json!({
        "ga": ga,
        "evolution": opts,
        "dataset_digest": ds.digest(),
        "best_error_cp": best,
        "test_error_cp": result.test_error_cp,
    });
    finish(out, "train", g, argv, config, inputs)
}

fn cmd_eval(g: &GlobalOpts, a: &EvalArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let params = load_params(&a.params, &mut BTreeMap::new())?;
    let pos = Position::from_fen(&a.fen).map_err(|e| CliError::Usage(e.to_string()))?;
    let score = match g.depth.unwrap_or(0) {
        0 => evaluate(&pos, &params),
        d => search_score_white(&pos, &params, d, true),
    };
    writeln!(stdout, "{score}").map_err(runtime)
}

fn cmd_match(g: &GlobalOpts, a: &MatchArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if a.games % 2 != 0 {
        return Err(CliError::Usage(format!("--games must be even, got {}", a.games)));
    }
    let mut inputs = BTreeMap::new();
    let pa = load_params(&a.params_a, &mut inputs)?;
    let pb = load_params(&a.params_b, &mut inputs)?;
    let openings = match &a.openings {
        Some(p) => {
            let text = read(p)?;
            inputs.insert(p.display().to_string(), sha256_hex(text.as_bytes()));
            parse_openings(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", p.display())))?
        }
        None => bundled_openings(),
    };
    if openings.is_empty() {
        return Err(CliError::Usage("no openings".into()));
    }
    let depth = g.depth.unwrap_or(3);
    let r = play_match(&pa, &pb, a.games, depth, &openings);
    let mut out = Outputs::new(&g.out)?;
    out.write("match.pgn", &r.to_pgn(&a.params_a, &a.params_b))?;
    let csv = r.summary_csv();
    out.write("match.csv", &csv)?;
    write!(stdout, "{csv}").map_err(runtime)?;
    let mut argv = vec![
        "--params-a".to_string(),
        a.params_a.clone(),
        "--params-b".into(),
        a.params_b.clone(),
        "--games".into(),
        a.games.to_string(),
        "--depth".into(),
        depth.to_string(),
    ];
    if let Some(p) = &a.openings {
        argv.extend(["--openings".into(), p.display().to_string()]);
    }
    finish(out, "match", g, argv, json!({ "depth": depth, "games": a.games }), inputs)
}

fn cmd_suite(g: &GlobalOpts, a: &SuiteArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut inputs = BTreeMap::new();
    let params = load_params(&a.params, &mut inputs)?;
    let suite = match &a.epd {
        Some(p) => {
            let text = read(p)?;
            inputs.insert(p.display().to_string(), sha256_hex(text.as_bytes()));
            parse_epd_file(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", p.display())))?
        }
        None => mini_suite(),
    };
    if let Some(i) = suite.iter().position(|r| r.bm.is_empty()) {
        return Err(CliError::Runtime(format!("EPD record {} has no bm", i + 1)));
    }
    let depth = g.depth.unwrap_or(4);
    let r = run_epd_suite(&suite, &params, depth);
    let mut out = Outputs::new(&g.out)?;
    out.write("suite.csv", &r.to_csv())?;
    writeln!(stdout, "{}/{}", r.solved, r.total).map_err(runtime)?;
    let mut argv = vec!["--params".to_string(), a.params.clone(), "--depth".into(), depth.to_string()];
    if let Some(p) = &a.epd {
        argv.extend(["--epd".into(), p.display().to_string()]);
    }
    finish(out, "suite", g, argv, json!({ "depth": depth, "solved": r.solved, "total": r.total }), inputs)
}

fn cmd_replay(a: &ReplayArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = read(&a.manifest)?;
    let m: RunManifest = serde_json::from_str(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", a.manifest.display())))?;
    let mut args = vec!["mentor-tune".to_string()];
    args.extend(m.argv.iter().cloned());
    let cli = Cli::try_parse_from(&args).map_err(|e| CliError::Runtime(format!("manifest arguments: {e}")))?;
    let out_dir = cli.global.out.clone();
    execute(cli, &mut io::sink())?;
    let mut mismatched = Vec::new();
    for (name, digest) in &m.outputs {
        let now = fs::read(out_dir.join(name)).map(|b| sha256_hex(&b)).unwrap_or_default();
        if &now != digest {
            mismatched.push(name.clone());
        }
    }
    if mismatched.is_empty() {
        writeln!(stdout, "replay of `{}` reproduced {} outputs", m.command, m.outputs.len()).map_err(runtime)
    } else {
        Err(CliError::Runtime(format!("replay differs in {}", mismatched.join(", "))))
    }
}
