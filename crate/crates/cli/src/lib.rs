//! `omvis` command-line tool. [`run`] parses arguments, dispatches and maps
//! failures onto sysexits-style codes; [`server`] is the HTTP service.

pub mod commands;
pub mod server;

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use omvis_core::lab::io::IoError;
use omvis_core::render::gallery::PANEL_SIZE;
use omvis_core::render::{RenderTarget, DEFAULT_HEIGHT, DEFAULT_WIDTH};

pub const EXIT_OK: u8 = 0;
/// Configuration parsed but failed the constraints, or did not parse.
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
/// Input data was readable but unusable.
pub const EXIT_DATA: u8 = 65;
pub const EXIT_IO: u8 = 74;

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: message.into() }
    }

    pub fn data(message: impl fmt::Display) -> Self {
        Self { code: EXIT_DATA, message: message.to_string() }
    }

    pub fn io(context: impl fmt::Display, err: impl fmt::Display) -> Self {
        Self { code: EXIT_IO, message: format!("{context}: {err}") }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self { code: EXIT_IO, message: e.to_string() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io(_) => Self { code: EXIT_IO, message: e.to_string() },
            _ => Self::data(e),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "omvis", version, about = "Order-of-magnitude chart design space, renderer and experiment harness")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List configurations of the design space.
    Enumerate {
        /// Only configurations passing every constraint.
        #[arg(long)]
        viable: bool,
        /// Keep one configuration per mirror pair.
        #[arg(long)]
        dedupe: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print per-rule counts instead of configurations.
        #[arg(long, conflicts_with_all = ["viable", "dedupe"])]
        rule_table: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one configuration; exits 2 when it is not viable.
    Validate { config: String },
    /// Render a chart to SVG.
    Render {
        #[arg(long, conflicts_with = "design", required_unless_present = "design")]
        config: Option<String>,
        #[arg(long)]
        design: Option<String>,
        /// `label,value` CSV; defaults to the built-in seven-row sample.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        width: Option<f64>,
        #[arg(long)]
        height: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<String>,
    },
    /// Render every canonical configuration into a directory.
    Gallery {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Generate standard datasets plus a manifest.
    GenData {
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the 28 trials for one dataset.
    Trials {
        #[arg(long)]
        dataset: PathBuf,
        /// Dataset id recorded on the trials.
        #[arg(long, default_value_t = 0)]
        id: u32,
        #[arg(long)]
        seed: u64,
        /// Divide in sampled order instead of larger by smaller.
        #[arg(long)]
        as_sampled: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score responses against trials.
    Score {
        #[arg(long)]
        responses: PathBuf,
        #[arg(long)]
        trials: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate respondents for one design.
    Simulate {
        #[arg(long)]
        design: String,
        #[arg(long, default_value_t = 26)]
        participants: u32,
        #[arg(long)]
        seed: u64,
        /// Noise model JSON; the built-in defaults otherwise.
        #[arg(long)]
        noise: Option<PathBuf>,
        /// Responses, as JSON lines.
        #[arg(long)]
        out: PathBuf,
        /// Trials the responses refer to; `<out>.trials.jsonl` by default.
        #[arg(long)]
        trials_out: Option<PathBuf>,
    },
    /// Bootstrap intervals per design and task.
    Analyze {
        /// Scored records, as JSON lines; may be repeated.
        #[arg(long, required = true, num_args = 1..)]
        scores: Vec<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        bootstrap: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve the JSON API and explorer assets.
    Serve {
        #[arg(long, env = "OMV_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

/// Run with `args` (program name first), writing normal output to `stdout`.
/// Diagnostics go to stderr. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("omvis: {}", f.message);
            f.code
        }
    }
}

/// Square panels for generic configurations, the wide chart size for designs.
pub fn default_size(target: &RenderTarget) -> (f64, f64) {
    match target {
        RenderTarget::Generic(_) => (PANEL_SIZE, PANEL_SIZE),
        RenderTarget::Design(_) => (DEFAULT_WIDTH, DEFAULT_HEIGHT),
    }
}
