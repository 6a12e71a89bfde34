use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use elastoscat_cli::run::{reconstruct_run, verify_forward};
use elastoscat_cli::{CliError, LoadedConfig, Overrides};

// progress lines; a closed stdout is not an error
macro_rules! say {
    ($($t:tt)*) => {
        let _ = writeln!(std::io::stdout(), $($t)*);
    };
}

#[derive(Parser)]
#[command(
    name = "elastoscat",
    version,
    about = "Elastic transmission scattering: forward checks and shape reconstruction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point-source convergence tables for the configured representations.
    VerifyForward {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Reconstruct the configured shape from synthetic far-field data.
    Reconstruct {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn threads(n: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::VerifyForward { config, out, threads: t } => {
            threads(t)?;
            let cfg = LoadedConfig::from_path(&config, &Overrides { out, seed: None })?;
            let report = verify_forward(&cfg)?;
            for run in &report.runs {
                for row in &run.rows {
                    say!(
                        "[verify] {} {} n={:<4} sup_error={:.3e}",
                        report.shape,
                        run.representation,
                        row.n,
                        row.sup_error
                    );
                }
            }
            say!("[verify] wrote {}", cfg.config.output.dir.display());
        }
        Command::Reconstruct { config, out, seed, threads: t } => {
            threads(t)?;
            let cfg = LoadedConfig::from_path(&config, &Overrides { out, seed })?;
            let (report, _) = reconstruct_run(&cfg)?;
            say!(
                "[reconstruct] {} L={} iterations={} error {:.4e} -> {:.4e}, residual ratio {:.3e}",
                report.shape,
                report.illuminations,
                report.iterations,
                report.initial_error,
                report.final_error,
                report.residual_ratio
            );
            say!("[reconstruct] wrote {}", cfg.config.output.dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("elastoscat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
