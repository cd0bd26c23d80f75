//! `hyperdelta`: every toolkit operation as a subcommand with a JSON report
//! on standard output.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (the payload names
//! the error), 3 internal failure.

mod commands;
mod config;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use config::Ctx;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(hyperdelta::Error),
}

impl<E: Into<hyperdelta::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.into())
    }
}

#[derive(Parser, Debug)]
#[command(name = "hyperdelta", version, about = "Position invariants of hypersurface families")]
struct Cli {
    /// Bypass the Gröbner basis cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct ConfigArg {
    /// Session config (JSON).
    #[arg(long, alias = "variety")]
    pub config: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a polynomial and echo it in text and JSON form.
    Parse {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Ambient dimension N (coordinates x0..xN).
        #[arg(long)]
        ambient: usize,
    },
    /// Dimension and degree of the variety, and of its cuts by family members.
    Dim {
        #[command(flatten)]
        cfg: ConfigArg,
        /// 1-based family indices to intersect.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Distributive constant of the family.
    Delta {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Include the per-subset table.
        #[arg(long)]
        table: bool,
    },
    /// Subgeneral position, index and t-vector, with the implied bounds.
    Classify {
        #[command(flatten)]
        cfg: ConfigArg,
    },
    /// Dimension profile of an ordered family and its exponent schedule.
    Profile {
        #[command(flatten)]
        cfg: ConfigArg,
        /// 1-based ordering; defaults to the config's or the identity.
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
    },
    /// Replacement hypersurfaces P_0..P_n for an ordered family.
    Replace {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest absolute coefficient in the search.
        #[arg(long, default_value_t = 8)]
        pool_bound: i64,
    },
    /// Exponent schedule m_0..m_n for breakpoints t_0..t_n.
    Schedule {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<i64>,
    },
    /// Exact check of the power inequality for t and sorted a.
    Ineq {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<String>,
    },
    /// Hilbert function, projective dimension and degree of the variety.
    Hilbert {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value_t = 6)]
        u_max: u32,
    },
    /// Hilbert weight S_X(u, c).
    Hweight {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        u: u32,
        #[arg(long, value_delimiter = ',')]
        c: Vec<String>,
        /// Cross-check with the exhaustive oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Chained Evertse–Ferretti lower bound for a coordinate subset.
    Efcheck {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        u: u32,
        #[arg(long, value_delimiter = ',')]
        c: Vec<String>,
        /// 0-based coordinate indices.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
    /// Truncation level M0 and the defect coefficient.
    M0 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        degv: u64,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        eps: String,
        /// Also evaluate the l-subgeneral variant.
        #[arg(long)]
        l: Option<u32>,
    },
    /// Defect bounds from the literature next to the Δ-based one.
    Compare {
        #[arg(long)]
        n: u32,
        /// Ambient dimension N.
        #[arg(long)]
        ambient: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        kappa: u32,
        #[arg(long)]
        q: u64,
    },
    /// Height of a point, a polynomial or a scalar.
    Height {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<String>>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        ambient: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
    /// Weil function of a polynomial at a point.
    Weil {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<String>,
        /// `inf`, a prime, or `all`.
        #[arg(long, default_value = "all")]
        place: String,
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
    /// Product formula for a non-zero rational.
    Pfcheck {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Empirical margins of the Schmidt-type inequality at rational points.
    Margin {
        #[command(flatten)]
        cfg: ConfigArg,
        /// One point per line, comma-separated integers.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Sample this many points by max-norm shells instead.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 2)]
        min_norm: u64,
        #[arg(long, default_value_t = 64)]
        max_norm: u64,
        #[arg(long)]
        eps: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
        /// Override the distributive constant.
        #[arg(long)]
        delta: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Dim { .. } => "dim",
            Command::Delta { .. } => "delta",
            Command::Classify { .. } => "classify",
            Command::Profile { .. } => "profile",
            Command::Replace { .. } => "replace",
            Command::Schedule { .. } => "schedule",
            Command::Ineq { .. } => "ineq",
            Command::Hilbert { .. } => "hilbert",
            Command::Hweight { .. } => "hweight",
            Command::Efcheck { .. } => "efcheck",
            Command::M0 { .. } => "m0",
            Command::Compare { .. } => "compare",
            Command::Height { .. } => "height",
            Command::Weil { .. } => "weil",
            Command::Pfcheck { .. } => "pfcheck",
            Command::Margin { .. } => "margin",
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
    version: &'static str,
}

fn emit(report: &Report) {
    println!("{}", serde_json::to_string_pretty(report).expect("serializable report"));
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = cli.command.name();
    let mut ctx = Ctx::new(&args, !cli.no_cache);
    let exec = if cli.sequential { hyperdelta::Exec::Sequential } else { hyperdelta::Exec::default() };
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| commands::run(&cli.command, &mut ctx, exec)));
    let timing_ms = cli.timing.then(|| start.elapsed().as_millis());
    let mut report = Report {
        command: name,
        input_digest: ctx.digest(),
        result: None,
        error: None,
        timing_ms,
        version: env!("CARGO_PKG_VERSION"),
    };
    match outcome {
        Ok(Ok(v)) => {
            report.result = Some(v);
            emit(&report);
            ExitCode::SUCCESS
        }
        Ok(Err(CliError::Domain(e))) => {
            report.error = Some(json!({ "name": e.name(), "message": e.to_string() }));
            emit(&report);
            ExitCode::from(2)
        }
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            report.error = Some(json!({ "name": "InternalError", "message": msg }));
            emit(&report);
            ExitCode::from(3)
        }
    }
}
