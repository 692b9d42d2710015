use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dualshift::demos;
use dualshift::run::{run_batch, to_structured, to_text, ScenarioReport};
use dualshift::scenario::{parse_scenario, validate_n_list};

#[derive(Parser)]
#[command(name = "dualshift", version, about = "Verify invariant subspaces of S_E + S_F* from symbol data")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run scenario files
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Truncation sweep, overriding every scenario's `n_list`
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Subspace-agreement tolerance, overriding every scenario's `tol`
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a built-in demo
    Demo {
        name: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List built-in demos
    ListDemos,
}

fn emit(reports: &[ScenarioReport], format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", to_text(reports)),
        Format::Structured => print!("{}", to_structured(reports)),
    }
    if reports.iter().all(|r| r.pass()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match cli.cmd {
        Cmd::Verify { files, n, tol, format } => {
            if let Some(n) = &n {
                if let Err(e) = validate_n_list(n) {
                    return input_error(format!("--n: {e}"));
                }
            }
            if tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
                return input_error("--tol must be positive");
            }
            let mut scenarios = Vec::with_capacity(files.len());
            for f in &files {
                match parse_scenario(f) {
                    Ok(mut sc) => {
                        if let Some(n) = &n {
                            sc.n_list = n.clone();
                        }
                        if let Some(t) = tol {
                            sc.tol = t;
                        }
                        scenarios.push(sc);
                    }
                    Err(e) => return input_error(e),
                }
            }
            emit(&run_batch(&scenarios), format)
        }
        Cmd::Demo { name, format } => match demos::demo(&name) {
            Ok(r) => emit(&r, format),
            Err(e) => input_error(format!("{e} (see `dualshift list-demos`)")),
        },
        Cmd::ListDemos => {
            for d in demos::DEMO_NAMES {
                println!("{d:<22} {}", demos::describe(d));
            }
            ExitCode::SUCCESS
        }
    }
}
