use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hshift_cli::{parse_config_with_overrides, render, run_command, CliError, Command, Format};

/// Hyperfine levels, spin-pair selection rules, cold-spot kinetics and
/// frequency shifts of adsorbed atomic hydrogen.
#[derive(Debug, Parser)]
#[command(name = "hshift", version)]
struct Args {
    command: Command,
    /// Configuration file (key = value lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a key, applied after the file; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn run(args: &Args) -> Result<(), CliError> {
    let text = match &args.config {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig { path: path.clone(), source })?
        }
        None => String::new(),
    };
    let mut cfg = parse_config_with_overrides(&text, &args.set, args.command)?;
    if args.format.is_some() {
        cfg.format = args.format;
    }
    if args.out.is_some() {
        cfg.output_path = args.out.clone();
    }
    let tables = run_command(&cfg)?;
    let body = render(&cfg, &tables)?;
    match &cfg.output_path {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Write { path: path.clone(), source }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hshift {}: {e}", args.command.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
