use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use monograph::check::DEFAULT_SEED;
use monograph::linalg::{parse_rational, Rational};
use monograph::problem::{parse_spec, ProblemSpec};
use monograph::report::{run, Command};

#[derive(Parser)]
#[command(name = "monograph", version, about = "Exact graph cohomology with unipotent coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Problem file (text or JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Machine output only; suppress the human summary on stderr.
    #[arg(long, global = true)]
    json: bool,
    /// Human output on stdout instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Incidence matrix, Laplacian, rank and kernel of the graph.
    Laplacian,
    /// H⁰, H¹, α and the system matrix.
    Cohomology,
    /// W, T and the obstruction W ∩ T.
    Defect,
    /// Tate m-gon with the rank-2 unipotent system.
    Tate {
        #[arg(long)]
        ord: usize,
        /// Comma-separated cocycle values, one per edge.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rational_arg)]
        g: Vec<Rational>,
    },
    /// Randomised invariant sweeps with a pass/fail table.
    Check {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn load(path: &PathBuf) -> Result<ProblemSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_spec(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Laplacian => Command::Laplacian,
        Cmd::Cohomology => Command::Cohomology,
        Cmd::Defect => Command::Defect,
        Cmd::Tate { ord, g } => Command::Tate { ord, g },
        Cmd::Check { seed } => Command::Check { seed },
    };
    let problem = match cli.input.as_ref().map(load).transpose() {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(problem.as_ref(), &command) {
        Ok(doc) => {
            if cli.pretty {
                print!("{}", doc.to_human());
            } else {
                print!("{}", doc.to_json_string());
                if !cli.json {
                    eprint!("{}", doc.to_human());
                }
            }
            if let Err(e) = doc.check_status() {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
