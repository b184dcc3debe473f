use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use defcyc_cli::commands::{self, CliError, FormulaMode};
use defcyc_cli::{budget_from_env, run_suite, Suite, VerifyOptions};
use defcyc_core::Limits;

#[derive(Parser)]
#[command(name = "defcyc", version, about = "Definability and logical cyclicity in groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, cyclicity, |Aut|, logical generators and def sizes of a group.
    Analyze { group: String },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record per-case wall-clock times (makes reports run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Emit or check the Cayley-table formula defining a target.
    #[command(group(ArgGroup::new("mode").required(true).args(["emit", "check"])))]
    Formula {
        group: String,
        #[arg(long, value_delimiter = ',', default_value = "")]
        params: Vec<String>,
        #[arg(long)]
        target: String,
        #[arg(long)]
        emit: bool,
        #[arg(long)]
        check: bool,
    },
    /// Count (and, when few, list) the automorphisms of a group.
    Aut { group: String },
    /// Smith normal form of an integer matrix file.
    Snf { matrix_file: PathBuf },
}

fn run(cli: Cli, limits: Limits) -> Result<i32, CliError> {
    let text = match cli.command {
        Command::Analyze { group } => commands::analyze(&commands::resolve_group(&group)?, &limits)?,
        Command::Aut { group } => commands::aut(&commands::resolve_group(&group)?, &limits)?,
        Command::Formula { group, params, target, emit, .. } => {
            let g = commands::resolve_group(&group)?;
            let params: Vec<String> = params.into_iter().filter(|p| !p.is_empty()).collect();
            let mode = if emit { FormulaMode::Emit } else { FormulaMode::Check };
            commands::formula(&g, &params, &target, mode, &limits)?
        }
        Command::Snf { matrix_file } => {
            let text = std::fs::read_to_string(&matrix_file)
                .map_err(|e| CliError::Usage(format!("{}: {e}", matrix_file.display())))?;
            commands::smith(&text)?
        }
        Command::Verify { suite, max_order, jobs, json, timing } => {
            let suite: Suite = suite.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let opts = VerifyOptions { max_order, jobs, limits, timing };
            let report = run_suite(suite, &opts).map_err(|e| CliError::Usage(e.to_string()))?;
            if let Some(path) = json {
                std::fs::write(&path, report.to_json())
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            }
            print!("{}", report.to_table());
            return Ok(report.exit_code());
        }
    };
    print!("{text}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let limits = match budget_from_env() {
        Ok(Some(b)) => Limits::default().with_budget(b),
        Ok(None) => Limits::default(),
        Err(msg) => {
            eprintln!("defcyc: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli, limits) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("defcyc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
