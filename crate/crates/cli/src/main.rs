use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use netcap_cli::{parse_config, run_to_dir};

#[derive(Parser)]
#[command(
    name = "netcap",
    about = "Capacity-bound experiments for noncoherent random-access networks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a JSON config, writing CSV outputs and a
    /// run manifest into the output directory.
    Run {
        /// Path to the JSON experiment config.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Overrides the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out, seed } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let mut parsed = match parse_config(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Some(s) = seed {
                parsed.seed = s;
            }
            match run_to_dir(&parsed, &out) {
                Ok(output) => {
                    for line in &output.report_lines {
                        println!("{line}");
                    }
                    if output.passed {
                        println!("status: PASS");
                        ExitCode::SUCCESS
                    } else {
                        println!("status: FAIL");
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
