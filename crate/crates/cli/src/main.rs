use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gseq_cli::{build_workspace, parse_workspace, render_json, render_text, run_tasks, RunOptions, Workspace};

/// Rational homotopy of mapping spaces from Sullivan models.
///
/// `map f : Y -> X` in a workspace declares the algebra map M_Y → M_X,
/// which models a map of spaces X → Y.
#[derive(Parser)]
#[command(name = "gseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a workspace without running tasks.
    Check { file: PathBuf },
    /// Run the tasks of a workspace.
    Run {
        file: PathBuf,
        /// Task name, or `all`.
        #[arg(long, default_value = "all")]
        task: String,
        /// Degree window; defaults to 2·(largest generator degree) + 2.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Include per-task wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn load(file: &PathBuf) -> Result<Workspace, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", file.display());
        ExitCode::from(1)
    })?;
    let ast = parse_workspace(&text).map_err(|e| {
        eprintln!("{}:{e}", file.display());
        ExitCode::from(2)
    })?;
    build_workspace(&ast).map_err(|errors| {
        for e in &errors {
            eprintln!("{}:{e}", file.display());
        }
        eprintln!("{} error(s)", errors.len());
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check { file } => match load(&file) {
            Ok(ws) => {
                println!(
                    "ok: {} model(s), {} map(s), {} task(s)",
                    ws.models.len(),
                    ws.maps.len(),
                    ws.tasks.len()
                );
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Run {
            file,
            task,
            max_degree,
            format,
            output,
            timing,
        } => {
            let ws = match load(&file) {
                Ok(ws) => ws,
                Err(code) => return code,
            };
            let opts = RunOptions {
                task: Some(task),
                max_degree,
                timing,
            };
            let report = match run_tasks(&ws, &opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            let rendered = match format {
                Format::Text => render_text(&report),
                Format::Json => render_json(&report),
            };
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::SUCCESS
        }
    }
}
