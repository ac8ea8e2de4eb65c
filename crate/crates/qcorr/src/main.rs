use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcorr_core::check::run_checks;
use qcorr_core::experiment::DEFAULT_POINTS;
use qcorr_core::{
    run_experiment, ChannelKind, CorrelationKind, Error, ExperimentConfig, GqdTerms, GridSpec, InitialSpec,
    OutputFormat,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_RANK: u8 = 2;
const EXIT_IO: u8 = 3;

/// Quantum-correlation trajectories of three-qubit states under damping.
#[derive(Debug, Parser)]
#[command(name = "qcorr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a sweep with an explicit configuration.
    Run(RunArgs),
    /// W state under amplitude damping.
    Fig1(PresetArgs),
    /// GHZ state under phase damping.
    Fig2(PresetArgs),
    /// Run the invariant self-check.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Optimizer seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of evenly spaced damping probabilities in [0, 1].
    #[arg(long, default_value_t = DEFAULT_POINTS, conflicts_with = "grid")]
    points: usize,
    /// Explicit comma-separated damping probabilities.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
    /// Also evaluate geometric discord with a two-qubit measured side.
    #[arg(long)]
    gqd_all: bool,
    /// Worker threads.
    #[arg(long, env = "QCORR_WORKERS")]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// `W`, `GHZ`, or a path to a state file.
    #[arg(long, value_parser = parse_initial)]
    initial: InitialSpec,
    /// `ad` (amplitude damping) or `pd` (phase damping).
    #[arg(long, value_parser = parse_channel)]
    channel: ChannelKind,
    #[arg(long, value_delimiter = ',', default_value = "eof,qd,gqd", value_parser = parse_measure)]
    measures: Vec<CorrelationKind>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct PresetArgs {
    #[arg(long, value_delimiter = ',', default_value = "eof,qd,gqd", value_parser = parse_measure)]
    measures: Vec<CorrelationKind>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random states per check.
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

fn parse_initial(s: &str) -> Result<InitialSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_channel(s: &str) -> Result<ChannelKind, String> {
    match s.parse().map_err(|e: Error| e.to_string())? {
        ChannelKind::Identity => Err("identity is not a damping channel".into()),
        k => Ok(k),
    }
}

fn parse_measure(s: &str) -> Result<CorrelationKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn configure(mut config: ExperimentConfig, measures: Vec<CorrelationKind>, out: &OutputArgs) -> ExperimentConfig {
    config.measures = measures;
    config.seed = out.seed;
    config.grid = match &out.grid {
        Some(ps) => GridSpec::Explicit(ps.clone()),
        None => GridSpec::Uniform(out.points),
    };
    config.gqd_terms = if out.gqd_all { GqdTerms::All } else { GqdTerms::QubitMeasured };
    config.workers = out.workers;
    config
}

fn execute(config: &ExperimentConfig, out: &OutputArgs) -> Result<(), Error> {
    let table = run_experiment::<f64>(config)?;
    match &out.out {
        Some(path) => table.emit(path, out.format),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match out.format {
                OutputFormat::Csv => table.write_csv(&mut lock)?,
                OutputFormat::Json => table.write_json(&mut lock)?,
            }
            lock.flush()?;
            Ok(())
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_rank_violation() {
        EXIT_RANK
    } else if e.is_io() {
        EXIT_IO
    } else {
        EXIT_VALIDATION
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_VALIDATION) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Run(args) => {
            let config = configure(ExperimentConfig::new(args.initial, args.channel), args.measures, &args.output);
            execute(&config, &args.output)
        }
        Command::Fig1(args) => execute(&configure(ExperimentConfig::fig1(), args.measures, &args.output), &args.output),
        Command::Fig2(args) => execute(&configure(ExperimentConfig::fig2(), args.measures, &args.output), &args.output),
        Command::Check(args) => match run_checks(args.seed, args.samples) {
            Ok(outcomes) => {
                for o in &outcomes {
                    println!("{o}");
                }
                if outcomes.iter().all(|o| o.passed) {
                    Ok(())
                } else {
                    return ExitCode::from(EXIT_VALIDATION);
                }
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
