//! Command-line front end: workspace loading, place specs and rendering.

pub mod commands;
pub mod error;
pub mod place_spec;
pub mod workspace;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{cmd_compute, cmd_distance, cmd_local, cmd_places, cmd_verify, Mode, Rendered};
use error::{CliError, CliResult};
use place_spec::PlaceSpec;
use workspace::load_workspace;

#[derive(Parser, Debug)]
#[command(
    name = "heights",
    version,
    about = "Exact local and global heights over Q and quadratic fields"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Args, Debug)]
pub struct Rendering {
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Bits of precision for float output.
    #[arg(long, default_value_t = 53)]
    pub precision: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Global height of a point with respect to a presentation.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        subscheme: String,
        #[arg(long)]
        point: String,
        #[command(flatten)]
        rendering: Rendering,
    },
    /// Local height at one place.
    Local {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        subscheme: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        place: String,
        #[command(flatten)]
        rendering: Rendering,
    },
    /// Arithmetic distance of two points, global or at one place.
    Distance {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "point", num_args = 1, required = true)]
        points: Vec<String>,
        #[arg(long)]
        place: Option<String>,
        #[command(flatten)]
        rendering: Rendering,
    },
    /// Places of Q(sqrt d) above a prime, or above infinity.
    Places {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Run verification suites (default: all).
    Verify {
        suites: Vec<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn mode(r: &Rendering) -> Mode {
    match r.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    }
}

fn print(r: Rendered, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => r.text,
        OutputFormat::Json => serde_json::to_string_pretty(&r.json).expect("serializable"),
    }
}

fn execute(cli: Cli) -> CliResult<(String, u8)> {
    let out = cli.output;
    match cli.command {
        Command::Compute {
            input,
            subscheme,
            point,
            rendering,
        } => {
            let ws = load_workspace(&input)?;
            let r = cmd_compute(&ws, &subscheme, &point, mode(&rendering), rendering.precision)?;
            Ok((print(r, out), 0))
        }
        Command::Local {
            input,
            subscheme,
            point,
            place,
            rendering,
        } => {
            let ws = load_workspace(&input)?;
            let spec: PlaceSpec = place.parse()?;
            let r = cmd_local(&ws, &subscheme, &point, &spec, mode(&rendering), rendering.precision)?;
            Ok((print(r, out), 0))
        }
        Command::Distance {
            input,
            points,
            place,
            rendering,
        } => {
            if points.len() != 2 {
                return Err(CliError::Usage(format!(
                    "distance needs exactly two --point flags, got {}",
                    points.len()
                )));
            }
            let ws = load_workspace(&input)?;
            let spec = place.map(|p| p.parse::<PlaceSpec>()).transpose()?;
            let r = cmd_distance(
                &ws,
                &points[0],
                &points[1],
                spec.as_ref(),
                mode(&rendering),
                rendering.precision,
            )?;
            Ok((print(r, out), 0))
        }
        Command::Places { d, prime } => Ok((print(cmd_places(d, prime)?, out), 0)),
        Command::Verify { suites, samples, seed } => {
            let (r, passed) = cmd_verify(&suites, samples, seed)?;
            Ok((print(r, out), if passed { 0 } else { 3 }))
        }
    }
}

/// Parse arguments and run one command. Exit codes: 0 success, 1 usage or
/// schema error, 2 point violates a precondition, 3 verification failure.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(cli) {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}"),
            code: e.exit_code(),
        },
    }
}
