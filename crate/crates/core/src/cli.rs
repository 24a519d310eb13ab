// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `nu`, `capacity` and `verify`.
//!
//! Exit codes: 0 success, 1 a check was violated (a candidate file is
//! written), 2 invalid input or usage, 3 an optimizer did not converge or a
//! check was inconclusive.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::capacity::{chi_star, CapacityOptions};
use crate::channels::{matrix_to_spec, Channel};
use crate::conjectures::{format_gap, format_value, summarize, to_csv, to_json_lines, CheckKind, SweepConfig};
use crate::error::{Error, Result};
use crate::purity::{nu_p, PurityOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable read when `--parallelism` is absent.
pub const THREADS_ENV: &str = "QMULT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    fn scale(self) -> f64 {
        match self {
            Units::Nats => 1.0,
            Units::Bits => 1.0 / std::f64::consts::LN_2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qmult", version, about = "Maximal output purity, Holevo capacity and inequality sweeps for quantum channels")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: OutputFormat,

    /// Unit for entropies and capacities.
    #[arg(long, value_enum, default_value = "nats", global = true)]
    pub units: Units,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, env = THREADS_ENV, global = true)]
    pub parallelism: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal output p-norm of a channel.
    Nu(NuArgs),
    /// Holevo capacity of a channel with its duality gap.
    Capacity(CapacityArgs),
    /// Seeded sweep of one check over random instances.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct NuArgs {
    /// Channel spec (JSON).
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    /// Channel spec (JSON).
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    /// Target duality gap in nats.
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of conjecture1, entropy-bound, lieb-ruskai, multiplicativity,
    /// additivity, qc-identity, block-decompose.
    pub check: String,
    #[arg(long)]
    pub p: Option<f64>,
    /// Block size.
    #[arg(long = "K", short = 'K', alias = "k")]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Master seed; required so every run is reproducible.
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    /// Also draw channels outside the proved families.
    #[arg(long)]
    pub exploratory: bool,
    /// Directory for counterexample-candidate files.
    #[arg(long, default_value = ".")]
    pub candidates_dir: PathBuf,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Degenerate(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_INVALID,
    }
}

fn read_channel(path: &PathBuf) -> Result<Channel> {
    let text = std::fs::read_to_string(path)?;
    Channel::from_json(&text)
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and messages to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    run_config(&cfg, out, err)
}

/// Runs an already parsed configuration.
pub fn run_config(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    // Output is buffered so the command can run inside a worker pool.
    let mut obuf = Vec::new();
    let mut ebuf = Vec::new();
    let outcome = match cfg.parallelism {
        Some(0) => Err(crate::error::invalid_param("parallelism must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| crate::error::invalid_param(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(cfg, &mut obuf, &mut ebuf))),
        None => dispatch(cfg, &mut obuf, &mut ebuf),
    };
    let _ = out.write_all(&obuf);
    let _ = err.write_all(&ebuf);
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Nu(a) => cmd_nu(cfg, a, out, err),
        Command::Capacity(a) => cmd_capacity(cfg, a, out, err),
        Command::Verify(a) => cmd_verify(cfg, a, out, err),
    }
}

fn cmd_nu(cfg: &RunConfig, a: &NuArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let phi = read_channel(&a.channel)?;
    let opts = PurityOptions {
        restarts: a.restarts,
        tol: a.tol,
        seed: a.seed,
        ..PurityOptions::default()
    };
    let r = nu_p(&phi, a.p, &opts)?;
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "p,value,converged,restarts_used,residual")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                format_value(r.p),
                format_value(r.value),
                r.converged,
                r.restarts_used,
                format_gap(r.residual)
            )?;
        }
        OutputFormat::Json => {
            let v = json!({
                "p": r.p,
                "value": r.value,
                "argmax_state": matrix_to_spec(&r.argmax_state),
                "diagnostics": r.summary(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    if r.converged {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "optimizer did not converge (residual {:e})", r.residual)?;
        Ok(EXIT_INCONCLUSIVE)
    }
}

fn cmd_capacity(cfg: &RunConfig, a: &CapacityArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let phi = read_channel(&a.channel)?;
    let opts = CapacityOptions {
        restarts: a.restarts,
        tol: a.tol,
        seed: a.seed,
        ..CapacityOptions::default()
    };
    let r = chi_star(&phi, &opts)?;
    let s = cfg.units.scale();
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "chi_star,units,duality_gap,converged,iterations,ensemble_size")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                format_value(r.chi_star * s),
                cfg.units.name(),
                format_gap(r.duality_gap * s),
                r.converged,
                r.iterations,
                r.ensemble.len()
            )?;
        }
        OutputFormat::Json => {
            let states: Vec<_> = r.ensemble.states().iter().map(|m| matrix_to_spec(m)).collect();
            let v = json!({
                "chi_star": r.chi_star * s,
                "units": cfg.units.name(),
                "duality_gap": r.duality_gap * s,
                "converged": r.converged,
                "iterations": r.iterations,
                "ensemble": { "probs": r.ensemble.probs(), "states": states },
                "avg_output": matrix_to_spec(&r.avg_output),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    if r.duality_gap <= a.tol {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "duality gap {:e} exceeds tolerance {:e}", r.duality_gap, a.tol)?;
        Ok(EXIT_INCONCLUSIVE)
    }
}

fn cmd_verify(cfg: &RunConfig, a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let kind: CheckKind = a.check.parse()?;
    let mut sweep = SweepConfig::new(kind, a.trials as usize, a.seed);
    sweep.p = a.p;
    sweep.k = a.k;
    sweep.exploratory = a.exploratory;
    sweep.purity.restarts = a.restarts;
    sweep.capacity.restarts = a.restarts;
    let outcome = crate::conjectures::run_sweep(&sweep)?;
    match cfg.format {
        OutputFormat::Csv => out.write_all(to_csv(&outcome.reports).as_bytes())?,
        OutputFormat::Json => out.write_all(to_json_lines(&outcome.reports).as_bytes())?,
    }
    let s = summarize(&outcome.reports);
    writeln!(
        err,
        "{}: {} reports, {} passed, {} violations, {} inconclusive, {} skipped, {} regenerated",
        kind, s.total, s.passed, s.violations, s.inconclusive, s.skipped, outcome.regenerated
    )?;
    if let Some(g) = s.min_gap {
        writeln!(err, "min gap {g:e}")?;
    }
    if let Some(e) = s.max_identity_error {
        writeln!(err, "max identity error {e:e}")?;
    }
    if outcome.has_violation() {
        for path in outcome.write_candidates(&a.candidates_dir)? {
            writeln!(err, "counterexample candidate written to {}", path.display())?;
        }
        return Ok(EXIT_VIOLATION);
    }
    Ok(if outcome.has_inconclusive() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}
