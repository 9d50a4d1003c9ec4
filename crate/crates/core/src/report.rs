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

//! Single runs and parameter sweeps that compare measured contraction
//! factors against the rate bound, plus the CSV and key-value config formats
//! the command line reads and writes.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functions::{dual_function, CompositeProblem, DiagQuadratic, Pairing};
use crate::hilbert::Vector;
use crate::rates::{self, TightnessCase};
use crate::splitting::{
    fit_rate, run_admm, run_dr, run_dual_dr, IterateTrace, RunOptions, SplitParams,
};
use crate::worstcase::{self, worst_direction, worst_start};

/// `|gap|` at or below this is reported as tight.
pub const TIGHT_TOL: f64 = 1e-9;

pub const SWEEP_HEADER: &str = "alpha,gamma,theoretical,empirical,case,gap,verdict";
pub const TRACE_HEADER: &str = "k,dist,ratio";

/// 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    PrimalDr,
    DualDr,
    Admm,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::PrimalDr => "primal-dr",
            Mode::DualDr => "dual-dr",
            Mode::Admm => "admm",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "primal-dr" => Ok(Mode::PrimalDr),
            "dual-dr" => Ok(Mode::DualDr),
            "admm" => Ok(Mode::Admm),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

/// How the starting point of each run is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartKind {
    /// Basis vector of the slowest-contracting class.
    Worst,
    /// Uniform coordinates in `[-1, 1]` from the seeded generator.
    Random,
    Zero,
}

impl FromStr for StartKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "worst" => Ok(StartKind::Worst),
            "random" => Ok(StartKind::Random),
            "zero" => Ok(StartKind::Zero),
            other => Err(Error::Config(format!("unknown start '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// A list of grid values, or `lin:min:max:count` / `log:min:max:count`.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Values(Vec<f64>),
    Range {
        min: f64,
        max: f64,
        count: usize,
        spacing: Spacing,
    },
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            GridSpec::Values(ref v) => v.clone(),
            GridSpec::Range {
                min,
                max,
                count,
                spacing,
            } => {
                if count == 1 {
                    return vec![min];
                }
                (0..count)
                    .map(|i| {
                        let t = i as f64 / (count - 1) as f64;
                        match spacing {
                            Spacing::Linear => min + (max - min) * t,
                            Spacing::Log => (min.ln() + (max.ln() - min.ln()) * t).exp(),
                        }
                    })
                    .collect()
            }
        }
    }
}

fn parse_f64(key: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: cannot parse '{s}' as a number")))
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Config("grid is empty".into()));
        }
        if let Some((kind, rest)) = s.split_once(':') {
            let spacing = match kind {
                "lin" => Spacing::Linear,
                "log" => Spacing::Log,
                other => return Err(Error::Config(format!("unknown grid spacing '{other}'"))),
            };
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Config(format!(
                    "grid '{s}' must be {kind}:min:max:count"
                )));
            }
            let min = parse_f64("grid", parts[0])?;
            let max = parse_f64("grid", parts[1])?;
            let count: usize = parts[2].trim().parse().map_err(|_| {
                Error::Config(format!("grid count '{}' is not an integer", parts[2]))
            })?;
            if count == 0 {
                return Err(Error::Config("grid is empty".into()));
            }
            if spacing == Spacing::Log && !(min > 0.0 && max > 0.0) {
                return Err(Error::Config("log grid needs positive bounds".into()));
            }
            return Ok(GridSpec::Range {
                min,
                max,
                count,
                spacing,
            });
        }
        let values = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_f64("grid", t))
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Config("grid is empty".into()));
        }
        Ok(GridSpec::Values(values))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub sigma: f64,
    pub beta: f64,
    pub theta: f64,
    pub zeta: f64,
    pub dim: usize,
    pub idx_sigma: Vec<usize>,
    /// `None` picks the mode's optimal alpha for a run and `lin:0.1:2:20` for a sweep.
    pub alpha_grid: Option<GridSpec>,
    /// `None` picks the mode's optimal gamma for a run and a 20-point log grid
    /// spanning two decades either side of it for a sweep.
    pub gamma_grid: Option<GridSpec>,
    pub mode: Mode,
    pub iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub pairing: Pairing,
    pub start: StartKind,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            sigma: worstcase::DEFAULT_SIGMA,
            beta: worstcase::DEFAULT_BETA,
            theta: worstcase::DEFAULT_THETA,
            zeta: worstcase::DEFAULT_ZETA,
            dim: worstcase::DEFAULT_DIM,
            idx_sigma: worstcase::default_idx_sigma(worstcase::DEFAULT_DIM),
            alpha_grid: None,
            gamma_grid: None,
            mode: Mode::PrimalDr,
            iters: 200,
            tol: 1e-14,
            seed: 0,
            pairing: Pairing::Crossed,
            start: StartKind::Worst,
        }
    }
}

impl SweepConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "sigma" => self.sigma = parse_f64(key, value)?,
            "beta" => self.beta = parse_f64(key, value)?,
            "theta" => self.theta = parse_f64(key, value)?,
            "zeta" => self.zeta = parse_f64(key, value)?,
            "K" | "dim" => {
                let dim: usize = value.parse().map_err(|_| {
                    Error::Config(format!("K: '{value}' is not a positive integer"))
                })?;
                if dim < 2 {
                    return Err(Error::Config("K must be at least 2".into()));
                }
                if self.idx_sigma == worstcase::default_idx_sigma(self.dim) {
                    self.idx_sigma = worstcase::default_idx_sigma(dim);
                }
                self.dim = dim;
            }
            "idx_sigma" => {
                self.idx_sigma = value
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Config(format!("idx_sigma: bad index '{t}'")))
                    })
                    .collect::<Result<_>>()?;
            }
            "alpha" | "alpha_grid" => self.alpha_grid = Some(value.parse()?),
            "gamma" | "gamma_grid" => self.gamma_grid = Some(value.parse()?),
            "mode" => self.mode = value.parse()?,
            "iters" => {
                self.iters = value
                    .parse()
                    .map_err(|_| Error::Config(format!("iters: '{value}' is not an integer")))?
            }
            "tol" => self.tol = parse_f64(key, value)?,
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| Error::Config(format!("seed: '{value}' is not an integer")))?
            }
            "pairing" => {
                self.pairing = value
                    .parse()
                    .map_err(|e: Error| Error::Config(e.to_string()))?
            }
            "start" => self.start = value.parse()?,
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Parses flat `key = value` text; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        for (name, grid) in [("alpha", &self.alpha_grid), ("gamma", &self.gamma_grid)] {
            if let Some(g) = grid {
                let values = g.values();
                if values.is_empty() {
                    return Err(Error::Config(format!("{name} grid is empty")));
                }
                if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                    return Err(Error::Config(format!(
                        "{name} grid values must be positive"
                    )));
                }
            }
        }
        Instance::build(self).map(|_| ())
    }
}

/// A configured problem together with the curvature constants its rate bound uses.
#[derive(Debug, Clone)]
pub struct Instance {
    pub mode: Mode,
    pub problem: CompositeProblem,
    /// The quadratic the iteration actually acts on (`f` or `d`).
    pub iterated: DiagQuadratic,
    /// Curvature constants entering the bound: `(sigma, beta)` or `(sigma_hat, beta_hat)`.
    pub sigma_eff: f64,
    pub beta_eff: f64,
}

impl Instance {
    pub fn build(cfg: &SweepConfig) -> Result<Self> {
        match cfg.mode {
            Mode::PrimalDr => {
                let problem =
                    worstcase::make_primal_instance(cfg.sigma, cfg.beta, cfg.dim, &cfg.idx_sigma)?;
                Ok(Self {
                    mode: cfg.mode,
                    iterated: problem.f.clone(),
                    problem,
                    sigma_eff: cfg.sigma,
                    beta_eff: cfg.beta,
                })
            }
            Mode::DualDr | Mode::Admm => {
                let problem = worstcase::make_dual_instance(
                    cfg.sigma,
                    cfg.beta,
                    cfg.theta,
                    cfg.zeta,
                    cfg.dim,
                    &cfg.idx_sigma,
                    cfg.pairing,
                )?;
                let consts = rates::dual_rate_constants(cfg.sigma, cfg.beta, cfg.theta, cfg.zeta)?;
                Ok(Self {
                    mode: cfg.mode,
                    iterated: dual_function(&problem)?,
                    problem,
                    sigma_eff: consts.sigma_hat,
                    beta_eff: consts.beta_hat,
                })
            }
        }
    }

    pub fn optimal_params(&self) -> rates::OptimalParams {
        rates::optimal_params(self.sigma_eff, self.beta_eff).expect("constants validated at build")
    }

    fn start(&self, kind: StartKind, alpha: f64, gamma: f64, seed: u64) -> Result<Vector> {
        let dim = self.problem.dim();
        Ok(match kind {
            StartKind::Zero => Vector::zeros(dim),
            StartKind::Random => Vector::random(dim, 1.0, &mut StdRng::seed_from_u64(seed)),
            StartKind::Worst => {
                let class = worst_direction(alpha, gamma, self.sigma_eff, self.beta_eff)?;
                worst_start(&self.iterated, class)
            }
        })
    }

    /// Runs the configured engine. Divergence is returned as `Error::Diverged`.
    pub fn run(&self, params: SplitParams, z0: &Vector, opts: &RunOptions) -> Result<IterateTrace> {
        match self.mode {
            Mode::PrimalDr => run_dr(&self.problem, params, z0, opts),
            Mode::DualDr => run_dual_dr(&self.problem, params, z0, opts),
            Mode::Admm => {
                let rho = params.gamma;
                let zero = Vector::zeros(z0.dim());
                let u0 = z0.scale(1.0 / rho);
                run_admm(&self.problem, rho, params.alpha, &zero, &zero, &u0, opts).map(|o| o.trace)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Tight,
    Bounded,
    /// Measured rate exceeds the bound; never expected.
    Violated,
    InfeasibleDiverged,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Tight => "tight",
            Verdict::Bounded => "bounded",
            Verdict::Violated => "violated",
            Verdict::InfeasibleDiverged => "infeasible-diverged",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub alpha: f64,
    pub gamma: f64,
    pub theoretical: f64,
    /// `None` when the trace has too few valid step ratios.
    pub empirical: Option<f64>,
    pub case_label: TightnessCase,
    pub gap: Option<f64>,
    pub verdict: Verdict,
}

impl RateReport {
    fn new(
        alpha: f64,
        gamma: f64,
        theoretical: f64,
        case_label: TightnessCase,
        empirical: Option<f64>,
        diverged: bool,
    ) -> Self {
        let gap = empirical.map(|e| theoretical - e);
        let verdict = if diverged || empirical.is_some_and(|e| e >= 1.0) {
            Verdict::InfeasibleDiverged
        } else {
            match gap {
                None => Verdict::Bounded,
                Some(g) if g.abs() <= TIGHT_TOL => Verdict::Tight,
                Some(g) if g >= -TIGHT_TOL => Verdict::Bounded,
                Some(_) => Verdict::Violated,
            }
        };
        Self {
            alpha,
            gamma,
            theoretical,
            empirical,
            case_label,
            gap,
            verdict,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt_f64(self.alpha),
            fmt_f64(self.gamma),
            fmt_f64(self.theoretical),
            fmt_f64(self.empirical.unwrap_or(f64::NAN)),
            self.case_label,
            fmt_f64(self.gap.unwrap_or(f64::NAN)),
            self.verdict.as_str()
        )
    }
}

/// Outcome of one `(alpha, gamma)` point.
#[derive(Debug, Clone)]
pub struct PointRun {
    pub report: RateReport,
    pub trace: IterateTrace,
}

pub fn evaluate_point(
    cfg: &SweepConfig,
    inst: &Instance,
    alpha: f64,
    gamma: f64,
    seed: u64,
) -> Result<PointRun> {
    let params = SplitParams::new(alpha, gamma)?;
    let theoretical = rates::theoretical_rate(alpha, gamma, inst.sigma_eff, inst.beta_eff)?;
    let case = rates::classify_tightness(alpha, gamma, inst.sigma_eff, inst.beta_eff)?;
    let z0 = inst.start(cfg.start, alpha, gamma, seed)?;
    let opts = RunOptions {
        max_iter: cfg.iters,
        tol: cfg.tol,
        ..RunOptions::default()
    };
    let (trace, diverged) = match inst.run(params, &z0, &opts) {
        Ok(t) => (t, false),
        Err(Error::Diverged { trace, .. }) => (*trace, true),
        Err(e) => return Err(e),
    };
    let empirical = fit_rate(&trace).ok();
    Ok(PointRun {
        report: RateReport::new(alpha, gamma, theoretical, case, empirical, diverged),
        trace,
    })
}

/// Single run at the first grid values, or at the optimal parameters when
/// no grid is configured.
pub fn run_single(cfg: &SweepConfig) -> Result<PointRun> {
    cfg.validate()?;
    let inst = Instance::build(cfg)?;
    let opt = inst.optimal_params();
    let alpha = cfg.alpha_grid.as_ref().map_or(opt.alpha, |g| g.values()[0]);
    let gamma = cfg.gamma_grid.as_ref().map_or(opt.gamma, |g| g.values()[0]);
    evaluate_point(cfg, &inst, alpha, gamma, cfg.seed)
}

fn default_alpha_grid() -> GridSpec {
    GridSpec::Range {
        min: 0.1,
        max: 2.0,
        count: 20,
        spacing: Spacing::Linear,
    }
}

fn default_gamma_grid(inst: &Instance) -> GridSpec {
    let g = inst.optimal_params().gamma;
    GridSpec::Range {
        min: g / 100.0,
        max: g * 100.0,
        count: 20,
        spacing: Spacing::Log,
    }
}

/// Evaluates every grid point (in parallel) and returns reports sorted by
/// `(alpha, gamma)`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<RateReport>> {
    cfg.validate()?;
    let inst = Instance::build(cfg)?;
    let alphas = cfg
        .alpha_grid
        .clone()
        .unwrap_or_else(default_alpha_grid)
        .values();
    let gammas = cfg
        .gamma_grid
        .clone()
        .unwrap_or_else(|| default_gamma_grid(&inst))
        .values();
    let points: Vec<(usize, f64, f64)> = alphas
        .iter()
        .flat_map(|&a| gammas.iter().map(move |&g| (a, g)))
        .enumerate()
        .map(|(i, (a, g))| (i, a, g))
        .collect();
    let mut reports = points
        .par_iter()
        .map(|&(i, a, g)| {
            evaluate_point(cfg, &inst, a, g, cfg.seed.wrapping_add(i as u64)).map(|r| r.report)
        })
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|x, y| {
        x.alpha
            .total_cmp(&y.alpha)
            .then(x.gamma.total_cmp(&y.gamma))
    });
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SweepSummary {
    pub tight: usize,
    pub bounded: usize,
    pub violated: usize,
    pub diverged: usize,
    pub max_abs_gap_tight: f64,
}

pub fn summarize(reports: &[RateReport]) -> SweepSummary {
    let mut s = SweepSummary::default();
    for r in reports {
        match r.verdict {
            Verdict::Tight => {
                s.tight += 1;
                s.max_abs_gap_tight = s.max_abs_gap_tight.max(r.gap.map_or(0.0, f64::abs));
            }
            Verdict::Bounded => s.bounded += 1,
            Verdict::Violated => s.violated += 1,
            Verdict::InfeasibleDiverged => s.diverged += 1,
        }
    }
    s
}

pub fn sweep_csv(reports: &[RateReport]) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    let s = summarize(reports);
    let _ = writeln!(
        out,
        "# points={} tight={} bounded={} violated={} infeasible-diverged={}",
        reports.len(),
        s.tight,
        s.bounded,
        s.violated,
        s.diverged
    );
    let _ = writeln!(out, "# max_abs_gap_tight={}", fmt_f64(s.max_abs_gap_tight));
    out
}

pub fn report_csv(report: &RateReport) -> String {
    format!("{SWEEP_HEADER}\n{}\n", report.csv_row())
}

/// One row per iterate; `ratio` in row `k` is `dist[k+1]/dist[k]` and is
/// blank where undefined.
pub fn trace_csv(trace: &IterateTrace) -> String {
    let ratios = trace.step_ratios();
    let mut out = String::new();
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for (k, d) in trace.distances.iter().enumerate() {
        let ratio = ratios
            .get(k)
            .copied()
            .flatten()
            .map(fmt_f64)
            .unwrap_or_default();
        let _ = writeln!(out, "{k},{},{ratio}", fmt_f64(*d));
    }
    out
}
