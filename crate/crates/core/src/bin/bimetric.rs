use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bimetric::checks::{run_suite, Suite};
use bimetric::config::{load_config, parse_sectors, Sector};
use bimetric::export::{engine_path, export_engine, export_plain, load_engine};
use bimetric::pipeline::run_decomposition;
use bimetric::report::summarize;
use bimetric::Error;

#[derive(Parser)]
#[command(name = "bimetric", version, about = "3+1 and covariant BSSN decomposition of bimetric ansätze")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the decomposition over the grid of a config file.
    Decompose {
        config: PathBuf,
        /// Directory for the engine snapshot, CSV fields and manifest.
        #[arg(long)]
        out: PathBuf,
        /// Prefix for the CSV and manifest file names.
        #[arg(long, default_value = "")]
        prefix: String,
    },
    /// Print the main variables at one grid point of an engine snapshot.
    Summarize {
        engine_file: PathBuf,
        /// Comma-separated subset of g, f, h.
        #[arg(long, default_value = "g,f,h")]
        sectors: String,
        /// Grid index `i,j,k`.
        #[arg(long, value_parser = parse_index)]
        at: [usize; 3],
    },
    /// Run the randomized property suites.
    Check {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the plain CSV export of an engine snapshot.
    Export {
        engine_file: PathBuf,
        #[arg(long)]
        plain: PathBuf,
        #[arg(long, default_value = "")]
        prefix: String,
    },
}

fn parse_index(s: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parsed: Result<Vec<usize>, _> = parts.iter().map(|p| p.parse::<usize>()).collect();
    match parsed {
        Ok(v) if v.len() == 3 => Ok([v[0], v[1], v[2]]),
        _ => Err(format!("expected three non-negative integers `i,j,k`, got `{s}`")),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Decompose { config, out, prefix } => {
            let cfg = load_config(&config)?;
            let result = run_decomposition(&cfg)?;
            std::fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
            export_engine(&result, engine_path(&out))?;
            let manifest = export_plain(&result, &out, &prefix)?;
            print!("{}", result.report);
            println!("wrote {} fields and {} to {}", manifest.fields.len(), engine_path(&out).display(), out.display());
            let failed: Vec<String> = result.report.failures().map(|f| f.check.clone()).collect();
            if !failed.is_empty() {
                eprintln!("error: failed checks: {}", failed.join(", "));
                return Ok(ExitCode::from(3));
            }
        }
        Command::Summarize { engine_file, sectors, at } => {
            let result = load_engine(&engine_file)?;
            let sectors: Vec<Sector> = parse_sectors(&sectors).map_err(|e| Error::config("--sectors", e))?;
            print!("{}", summarize(&result, &sectors, at)?);
        }
        Command::Check { suite, samples, seed } => {
            let outcomes = run_suite(suite, samples, seed);
            for o in &outcomes {
                println!("{o}");
            }
            if outcomes.iter().any(|o| !o.passed()) {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Export { engine_file, plain, prefix } => {
            let result = load_engine(&engine_file)?;
            let manifest = export_plain(&result, &plain, &prefix)?;
            println!("wrote {} fields to {}", manifest.fields.len(), plain.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
