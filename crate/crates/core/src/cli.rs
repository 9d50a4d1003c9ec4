/*
Copyright 2026 The drsplit Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or configuration
//! error, 3 divergence of a single run.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::rates;
use crate::report::{self, fmt_f64, SweepConfig, Verdict};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DIVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "drsplit",
    version,
    about = "Douglas-Rachford and ADMM rate bounds and their tightness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the theoretical rate, feasible alpha interval and optimal parameters.
    Rate(CommonArgs),
    /// Run one (alpha, gamma) point and write its report row and iterate trace.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        /// Trace CSV path; defaults to the report path with a `.trace.csv` suffix.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run every grid point and write one report row per point.
    Sweep(CommonArgs),
    /// Run the acceptance checks.
    Verify,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Key-value config file (`key = value` per line); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    zeta: Option<String>,
    /// Dimension of the instance.
    #[arg(long = "K")]
    dim: Option<String>,
    /// Zero-based comma-separated indices carrying curvature sigma.
    #[arg(long = "idx-sigma")]
    idx_sigma: Option<String>,
    /// Value, comma list, or `lin:min:max:count` / `log:min:max:count`.
    #[arg(long)]
    alpha: Option<String>,
    /// Value, comma list, or `lin:min:max:count` / `log:min:max:count`.
    #[arg(long)]
    gamma: Option<String>,
    /// primal-dr, dual-dr or admm.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    iters: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// aligned or crossed.
    #[arg(long)]
    pairing: Option<String>,
    /// worst, random or zero.
    #[arg(long)]
    start: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn config(&self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };
        let flags = [
            ("sigma", &self.sigma),
            ("beta", &self.beta),
            ("theta", &self.theta),
            ("zeta", &self.zeta),
            ("K", &self.dim),
            ("idx_sigma", &self.idx_sigma),
            ("alpha", &self.alpha),
            ("gamma", &self.gamma),
            ("mode", &self.mode),
            ("iters", &self.iters),
            ("tol", &self.tol),
            ("seed", &self.seed),
            ("pairing", &self.pairing),
            ("start", &self.start),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(cfg)
    }
}

/// Parses `args` (including the program name) and executes the command,
/// writing normal output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Rate(common) => cmd_rate(&common, out),
        Command::Run { common, trace } => cmd_run(&common, trace.as_deref(), out),
        Command::Sweep(common) => cmd_sweep(&common, out),
        Command::Verify => cmd_verify(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Diverged { .. } => EXIT_DIVERGED,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn kv(out: &mut dyn Write, key: &str, value: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{key} = {value}")?;
    Ok(())
}

fn single_value(grid: &Option<report::GridSpec>, name: &str) -> Result<Option<f64>> {
    match grid {
        None => Ok(None),
        Some(g) => match g.values().as_slice() {
            [v] => Ok(Some(*v)),
            _ => Err(Error::Config(format!("rate expects a single {name} value"))),
        },
    }
}

fn cmd_rate(args: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = args.config()?;
    let (s, b) = (cfg.sigma, cfg.beta);
    let opt = rates::optimal_params(s, b).map_err(|e| Error::Config(e.to_string()))?;
    kv(out, "sigma", fmt_f64(s))?;
    kv(out, "beta", fmt_f64(b))?;
    kv(out, "kappa", fmt_f64(b / s))?;
    let alpha = single_value(&cfg.alpha_grid, "alpha")?;
    let gamma = single_value(&cfg.gamma_grid, "gamma")?;
    match (alpha, gamma) {
        (Some(alpha), Some(gamma)) => {
            let rate = rates::theoretical_rate(alpha, gamma, s, b)
                .map_err(|e| Error::Config(e.to_string()))?;
            let ub =
                rates::alpha_upper_bound(gamma, s, b).map_err(|e| Error::Config(e.to_string()))?;
            kv(out, "alpha", fmt_f64(alpha))?;
            kv(out, "gamma", fmt_f64(gamma))?;
            kv(out, "rate", fmt_f64(rate))?;
            kv(out, "alpha_interval", format!("(0, {})", fmt_f64(ub)))?;
            kv(out, "feasible", alpha < ub)?;
            kv(
                out,
                "case",
                rates::classify_tightness(alpha, gamma, s, b)
                    .map_err(|e| Error::Config(e.to_string()))?,
            )?;
        }
        (None, Some(gamma)) => {
            let ub =
                rates::alpha_upper_bound(gamma, s, b).map_err(|e| Error::Config(e.to_string()))?;
            kv(out, "gamma", fmt_f64(gamma))?;
            kv(out, "alpha_interval", format!("(0, {})", fmt_f64(ub)))?;
        }
        (Some(_), None) => return Err(Error::Config("--alpha requires --gamma".into())),
        (None, None) => {}
    }
    kv(out, "optimal_alpha", fmt_f64(opt.alpha))?;
    kv(out, "optimal_gamma", fmt_f64(opt.gamma))?;
    kv(out, "optimal_rate", fmt_f64(opt.rate))?;
    if args.theta.is_some() || args.zeta.is_some() {
        let c = rates::dual_rate_constants(s, b, cfg.theta, cfg.zeta)
            .map_err(|e| Error::Config(e.to_string()))?;
        kv(out, "theta", fmt_f64(c.theta))?;
        kv(out, "zeta", fmt_f64(c.zeta))?;
        kv(out, "sigma_hat", fmt_f64(c.sigma_hat))?;
        kv(out, "beta_hat", fmt_f64(c.beta_hat))?;
        kv(out, "kappa_hat", fmt_f64(c.kappa))?;
        kv(out, "dual_optimal_gamma", fmt_f64(c.dual_optimal_gamma()))?;
        kv(out, "dual_optimal_rate", fmt_f64(c.dual_optimal_rate()))?;
    }
    Ok(EXIT_OK)
}

fn trace_path(report_path: &Path) -> PathBuf {
    let stem = report_path.with_extension("");
    let mut name = stem.into_os_string();
    name.push(".trace.csv");
    PathBuf::from(name)
}

fn cmd_run(args: &CommonArgs, trace: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let cfg = args.config()?;
    let point = report::run_single(&cfg).map_err(|e| match e {
        Error::Diverged { .. } => e,
        other => Error::Config(other.to_string()),
    })?;
    let report_text = report::report_csv(&point.report);
    let trace_text = report::trace_csv(&point.trace);
    match (&args.out, trace) {
        (Some(path), trace) => {
            fs::write(path, &report_text)?;
            let tpath = trace.map_or_else(|| trace_path(path), Path::to_path_buf);
            fs::write(&tpath, &trace_text)?;
            log::info!("wrote {} and {}", path.display(), tpath.display());
        }
        (None, Some(tpath)) => {
            out.write_all(report_text.as_bytes())?;
            fs::write(tpath, &trace_text)?;
        }
        (None, None) => {
            out.write_all(report_text.as_bytes())?;
            writeln!(out)?;
            out.write_all(trace_text.as_bytes())?;
        }
    }
    Ok(if point.report.verdict == Verdict::InfeasibleDiverged {
        EXIT_DIVERGED
    } else {
        EXIT_OK
    })
}

fn cmd_sweep(args: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = args.config()?;
    let reports = report::run_sweep(&cfg).map_err(|e| Error::Config(e.to_string()))?;
    let text = report::sweep_csv(&reports);
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(out: &mut dyn Write) -> Result<i32> {
    let outcomes = verify::run_all();
    for o in &outcomes {
        writeln!(out, "{o}")?;
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    writeln!(out, "{passed}/{} criteria passed", outcomes.len())?;
    Ok(if passed == outcomes.len() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}
