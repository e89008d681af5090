use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fparadox::{Model, PowerLawSpec};
use fparadox_cli::{
    analyze_reader, experiment, generate, parse_list, parse_seeds, parse_value, predict, sweep,
    write_csv, CliResult, ExperimentConfig,
};

#[derive(Debug, Parser)]
#[command(
    name = "fparadox",
    version,
    about = "Friendship paradox in truncated power-law networks"
)]
struct Cli {
    /// Output file; stdout if omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form moments and mean degree of friends, as JSON.
    Predict {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "1")]
        kmin: f64,
        /// Upper cutoff; `inf` for none.
        #[arg(long, default_value = "inf")]
        kmax: String,
    },
    /// Variance-to-mean ratio over a grid of alpha and k_max, as CSV.
    Sweep {
        /// Values or ranges `start:stop:step`, comma separated.
        #[arg(long, default_value = "1.2:3.0:0.1")]
        alpha: String,
        #[arg(long, default_value = "1")]
        kmin: f64,
        #[arg(long, default_value = "10,32,100,316,1000,3162,10000")]
        kmax: String,
    },
    /// Generated networks compared with the closed-form prediction, as CSV.
    Experiment {
        #[arg(long, default_value = "2")]
        alpha: f64,
        #[arg(long, default_value = "1")]
        kmin: f64,
        #[arg(long, default_value = "10,32,100,316,1000")]
        kmax: String,
        #[arg(long, default_value = "10000")]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "A,B,KALISKY")]
        models: Vec<Model>,
        /// Seeds or inclusive ranges `a:b`, comma separated.
        #[arg(long, default_value = "1:5")]
        seeds: String,
        /// Minimum block size for model B.
        #[arg(long, default_value_t = fparadox::netgen::DEFAULT_BLOCK_SIZE)]
        block_size: usize,
    },
    /// Samples a degree sequence, wires it, and writes the edge list.
    Generate {
        #[arg(long, default_value = "2")]
        alpha: f64,
        #[arg(long, default_value = "1")]
        kmin: f64,
        #[arg(long, default_value = "100")]
        kmax: String,
        #[arg(long, default_value = "10000")]
        n: usize,
        #[arg(long, default_value = "A")]
        model: Model,
        #[arg(long, default_value = "1")]
        seed: u64,
        #[arg(long, default_value_t = fparadox::netgen::DEFAULT_BLOCK_SIZE)]
        block_size: usize,
    },
    /// Paradox statistics, structure and fit for an edge-list file, as JSON.
    Analyze { path: PathBuf },
}

fn output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: serde::Serialize>(value: &T, mut out: Box<dyn Write>) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Predict { alpha, kmin, kmax } => {
            let result = predict(alpha, kmin, parse_value(&kmax)?)?;
            write_json(&result, output(&cli.out)?)
        }
        Command::Sweep { alpha, kmin, kmax } => {
            let rows = sweep(&parse_list(&alpha)?, &parse_list(&kmax)?, kmin)?;
            write_csv(&rows, output(&cli.out)?)
        }
        Command::Experiment {
            alpha,
            kmin,
            kmax,
            n,
            models,
            seeds,
            block_size,
        } => {
            let config = ExperimentConfig {
                alpha,
                k_min: kmin,
                k_maxes: parse_list(&kmax)?,
                n,
                models,
                seeds: parse_seeds(&seeds)?,
                block_size,
            };
            write_csv(&experiment(&config)?, output(&cli.out)?)
        }
        Command::Generate {
            alpha,
            kmin,
            kmax,
            n,
            model,
            seed,
            block_size,
        } => {
            let spec = PowerLawSpec::new(alpha, kmin, parse_value(&kmax)?)?;
            let g = generate(&spec, n, model, seed, block_size)?;
            let mut out = output(&cli.out)?;
            fparadox::io::write_edge_list(&g, &mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::Analyze { path } => {
            let report = analyze_reader(BufReader::new(File::open(&path)?))?;
            write_json(&report, output(&cli.out)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
