use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arithgroup_cli::bench::{bench, format_table};
use arithgroup_cli::example::worked_example;
use arithgroup_cli::families::{gen_family, Family};
use arithgroup_cli::problem::{ProblemFile, ResultFile};
use arithgroup_cli::run::{require_passed, run, verify_result_file, RunOptions};
use arithgroup_cli::{CliError, Result};
use clap::{Parser, Subcommand};

/// Generators of arithmetic subgroups of unipotent matrix groups.
#[derive(Parser)]
#[command(name = "arithgroup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute generators for a problem file.
    Run {
        file: PathBuf,
        /// Use the full error-map space.
        #[arg(long)]
        no_support_opt: bool,
        /// Check the output and exit with status 4 if a check fails.
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a result file against the problem it embeds.
    Verify { result: PathBuf },
    /// Write a problem file for a test family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time a test family over a range of sizes.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Write the built-in example problem.
    Example {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            file,
            no_support_opt,
            verify,
            output,
        } => {
            let problem = ProblemFile::from_json(&read(&file)?)?;
            let opts = RunOptions {
                support_optimization: no_support_opt.then_some(false),
                verify,
            };
            let (result, _) = run(&problem, opts)?;
            emit(&result.to_json(), output.as_deref())?;
            match &result.verification {
                Some(v) => require_passed(v),
                None => Ok(()),
            }
        }
        Command::Verify { result } => {
            let file = ResultFile::from_json(&read(&result)?)?;
            let v = verify_result_file(&file)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("report serializes")
            );
            require_passed(&v)
        }
        Command::Gen { family, n, output } => {
            emit(&gen_family(family, n)?.to_json(), output.as_deref())
        }
        Command::Bench { family, from, to } => {
            let rows = bench(family, from, to, RunOptions::default())?;
            print!("{}", format_table(family, &rows));
            Ok(())
        }
        Command::Example { output } => emit(&worked_example().to_json(), output.as_deref()),
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
