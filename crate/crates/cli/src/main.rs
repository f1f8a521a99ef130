use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use onticlab::config::{Experiment, ExperimentConfig, OutputFormat};
use onticlab::experiments::RunError;

/// Reproducible experiments over ontological models of quantum states.
#[derive(Parser)]
#[command(name = "onticlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Born-rule reproduction of the Bloch-sphere qubit instance.
    BornCheck(CommonArgs),
    /// Frozen-response deficit of the evolving state.
    Theorem1(CommonArgs),
    /// Hidden-state preparation round trip and transition probabilities.
    HiddenRoundtrip(CommonArgs),
    /// Exact joint-detection probabilities of the two-region scenario.
    Theorem2(CommonArgs),
    /// Within-cell spread against the sharp limit, swept over m.
    SharpenSweep(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output file (default: <experiment>.<format>).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Seed for the random state generator.
    #[arg(long)]
    seed: Option<u64>,

    /// Rayon worker threads for parallel integration (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

fn experiment_of(command: &Command) -> (Experiment, &CommonArgs) {
    match command {
        Command::BornCheck(a) => (Experiment::BornCheck, a),
        Command::Theorem1(a) => (Experiment::Theorem1, a),
        Command::HiddenRoundtrip(a) => (Experiment::HiddenRoundtrip, a),
        Command::Theorem2(a) => (Experiment::Theorem2, a),
        Command::SharpenSweep(a) => (Experiment::SharpenSweep, a),
    }
}

fn execute(experiment: Experiment, args: &CommonArgs) -> Result<(), RunError> {
    let mut cfg = match &args.config {
        Some(path) => onticlab::config::parse_config(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(fmt) = &args.format {
        cfg.format = fmt
            .parse::<OutputFormat>()
            .map_err(onticlab::config::ConfigError::plain)?;
    }
    if let Some(out) = &args.out {
        cfg.output_path = Some(out.display().to_string());
    }

    let report = match args.workers {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| RunError::Config(onticlab::config::ConfigError::plain(e.to_string())))?;
            pool.install(|| onticlab::experiments::run(experiment, &cfg))?
        }
        None => onticlab::experiments::run(experiment, &cfg)?,
    };

    let path = cfg.resolved_output_path(experiment);
    let file = std::fs::File::create(&path).map_err(|e| {
        RunError::Config(onticlab::config::ConfigError::plain(format!(
            "cannot write output to '{path}': {e}"
        )))
    })?;
    let mut writer = std::io::BufWriter::new(file);
    report
        .write(&mut writer, cfg.format)
        .map_err(|e| RunError::Numerical(format!("failed writing '{path}': {e}")))?;
    println!("{}: {} rows -> {}", experiment.name(), report.rows.len(), path);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (experiment, args) = experiment_of(&cli.command);
    match execute(experiment, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(RunError::Numerical(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
