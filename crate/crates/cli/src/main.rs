use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ecsplit::commands::{run, split, CliError, RunOptions, SplitMode, SplitOptions};

#[derive(Parser)]
#[command(
    name = "ecsplit",
    about = "Circulant/skew-circulant splitting of MMSE error covariances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Monte Carlo sum-rate experiment.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Split one matrix into circulant and skew-circulant parts.
    Split {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = SplitMode::Project)]
        mode: SplitMode,
    },
    /// Print the tool version.
    Version,
}

fn report(result: Result<(), CliError>) -> ExitCode {
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors; bad arguments are input errors
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr();
    match cli.command {
        Command::Run { config, out, seed } => report(run(
            &RunOptions { config, out, seed },
            &mut stdout,
            &mut stderr,
        )),
        Command::Split { matrix, out, mode } => {
            report(split(&SplitOptions { matrix, out, mode }, &mut stdout))
        }
        Command::Version => {
            println!("ecsplit {}", env!("CARGO_PKG_VERSION"));
            ExitCode::SUCCESS
        }
    }
}
