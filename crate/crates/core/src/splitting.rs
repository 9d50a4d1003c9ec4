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

//! Generalized Douglas-Rachford and ADMM iterations with trace capture.
//!
//! The primal engine iterates
//! `z+ = (1 - alpha) z + alpha R_{gamma g} R_{gamma f} z`
//! on problems with `A = Id`. The dual engine builds the conjugate pair
//! `(d, g*)` and runs the same iteration on it. ADMM is run directly on the
//! primal problem and its scaled dual variable is traced.

use log::warn;

use crate::error::{invalid, Error, Result};
use crate::functions::{dual_function, CompositeProblem, GFunction, LinearMap};
use crate::hilbert::Vector;
use crate::prox::{check_gamma, prox_g, refl_prox_diag, refl_prox_g};
use crate::rates;

/// Distances below this make a step ratio undefined.
pub const RATIO_FLOOR: f64 = 1e-14;
/// Minimum number of valid step ratios [`fit_rate`] accepts.
pub const MIN_RATIOS: usize = 5;
/// Iteration stops with an error once the distance exceeds this multiple of the start.
pub const DIVERGENCE_FACTOR: f64 = 10.0;
/// Stopping tolerance used when the fixed point must be found numerically.
pub const FIXED_POINT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitParams {
    pub alpha: f64,
    pub gamma: f64,
}

impl SplitParams {
    /// Any `alpha > 0` is accepted; values above one are legitimate for
    /// strongly convex smooth `f` but only up to the instance-dependent bound,
    /// so they are logged. Infeasible values show up as divergence.
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(invalid(format!(
                "relaxation alpha must be positive, got {alpha}"
            )));
        }
        if alpha > 1.0 {
            warn!("alpha = {alpha} is over-relaxed; convergence needs alpha < 2/(1 + max term)");
        }
        Ok(Self { alpha, gamma })
    }

    pub fn is_feasible_for(&self, sigma: f64, beta: f64) -> Result<bool> {
        rates::is_feasible(self.alpha, self.gamma, sigma, beta)
    }
}

/// Which reflection is applied first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompositionOrder {
    /// `R_g(R_f(z))`
    #[default]
    GAfterF,
    /// `R_f(R_g(z))`
    FAfterG,
}

/// What the trace measures distances against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FixedPointTarget {
    /// The origin, which is the fixed point for every supported problem
    /// (each `f` is minimized at zero and `g` is zero or the indicator of zero).
    #[default]
    Analytic,
    /// Iterate to `FIXED_POINT_TOL` and use the last iterate.
    FinalIterate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub order: CompositionOrder,
    pub target: FixedPointTarget,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            max_iter: 500,
            tol: 1e-14,
            order: CompositionOrder::default(),
            target: FixedPointTarget::default(),
        }
    }
}

impl RunOptions {
    pub fn with_iters(max_iter: usize) -> Self {
        Self {
            max_iter,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterateTrace {
    pub iterates: Vec<Vector>,
    pub fixed_point: Vector,
    pub distances: Vec<f64>,
    /// Whether the step-length tolerance was met before `max_iter`.
    pub converged: bool,
}

impl IterateTrace {
    fn from_iterates(iterates: Vec<Vector>, fixed_point: Vector, converged: bool) -> Self {
        let distances = iterates
            .iter()
            .map(|z| {
                z.distance(&fixed_point)
                    .expect("iterates share the problem dimension")
            })
            .collect();
        Self {
            iterates,
            fixed_point,
            distances,
            converged,
        }
    }

    /// Number of iterates, including `z^0`.
    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }

    pub fn last(&self) -> &Vector {
        self.iterates.last().expect("trace holds z^0")
    }

    /// `||z^{k+1} - zbar|| / ||z^k - zbar||`, undefined once `||z^k - zbar|| < 1e-14`.
    pub fn step_ratios(&self) -> Vec<Option<f64>> {
        self.distances
            .windows(2)
            .map(|w| (w[0] >= RATIO_FLOOR).then(|| w[1] / w[0]))
            .collect()
    }
}

fn require_identity(p: &CompositeProblem) -> Result<()> {
    match p.a {
        LinearMap::Identity => Ok(()),
        LinearMap::Diag(_) => Err(Error::Unsupported(
            "primal Douglas-Rachford needs A = Id; use the dual engine or ADMM".into(),
        )),
    }
}

fn step_unchecked(
    p: &CompositeProblem,
    params: SplitParams,
    z: &Vector,
    order: CompositionOrder,
) -> Result<Vector> {
    let reflected = match order {
        CompositionOrder::GAfterF => {
            refl_prox_g(p.g, params.gamma, &refl_prox_diag(&p.f, params.gamma, z)?)?
        }
        CompositionOrder::FAfterG => {
            refl_prox_diag(&p.f, params.gamma, &refl_prox_g(p.g, params.gamma, z)?)?
        }
    };
    let a = params.alpha;
    Ok(z.zip_map(&reflected, |zi, ri| (1.0 - a) * zi + a * ri))
}

/// One relaxed Douglas-Rachford step.
pub fn dr_step(
    p: &CompositeProblem,
    params: SplitParams,
    z: &Vector,
    order: CompositionOrder,
) -> Result<Vector> {
    require_identity(p)?;
    z.check_dim(p.dim())?;
    step_unchecked(p, params, z, order)
}

/// Generic fixed-point driver shared by the engines. `step` maps the current
/// iterate to the next one.
fn iterate(
    z0: Vector,
    opts: &RunOptions,
    mut step: impl FnMut(&Vector) -> Result<Vector>,
) -> Result<IterateTrace> {
    if !(opts.tol > 0.0) {
        return Err(invalid(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let dim = z0.dim();
    let (max_iter, tol) = match opts.target {
        FixedPointTarget::Analytic => (opts.max_iter, opts.tol),
        FixedPointTarget::FinalIterate => (opts.max_iter, opts.tol.min(FIXED_POINT_TOL)),
    };
    let origin = Vector::zeros(dim);
    let start_dist = z0.norm();
    let mut first_step: Option<f64> = None;
    let mut iterates = vec![z0];
    let mut converged = false;

    for k in 0..max_iter {
        let z = iterates.last().unwrap();
        let next = step(z)?;
        let step_len = next.distance(z)?;
        let diverged = match opts.target {
            FixedPointTarget::Analytic => {
                let d = next.norm();
                !d.is_finite() || d > DIVERGENCE_FACTOR * start_dist
            }
            FixedPointTarget::FinalIterate => {
                let first = *first_step.get_or_insert(step_len);
                !step_len.is_finite() || step_len > DIVERGENCE_FACTOR * first
            }
        };
        if diverged {
            let distance = next.norm();
            iterates.push(next);
            let trace = IterateTrace::from_iterates(iterates, origin, false);
            return Err(Error::Diverged {
                iteration: k + 1,
                distance,
                trace: Box::new(trace),
            });
        }
        iterates.push(next);
        if step_len <= tol {
            converged = true;
            break;
        }
    }

    let fixed_point = match opts.target {
        FixedPointTarget::Analytic => origin,
        FixedPointTarget::FinalIterate => iterates.last().unwrap().clone(),
    };
    Ok(IterateTrace::from_iterates(
        iterates,
        fixed_point,
        converged,
    ))
}

/// Runs Douglas-Rachford from `z0` until the step length drops to `tol` or
/// `max_iter` steps are taken.
pub fn run_dr(
    p: &CompositeProblem,
    params: SplitParams,
    z0: &Vector,
    opts: &RunOptions,
) -> Result<IterateTrace> {
    require_identity(p)?;
    z0.check_dim(p.dim())?;
    if z0.norm() == 0.0 {
        return Ok(IterateTrace::from_iterates(
            vec![z0.clone()],
            Vector::zeros(p.dim()),
            true,
        ));
    }
    iterate(z0.clone(), opts, |z| {
        step_unchecked(p, params, z, opts.order)
    })
}

/// The dual problem `minimize d(mu) + g*(mu)` as a primal problem with `A = Id`.
pub fn dual_problem(p: &CompositeProblem) -> Result<CompositeProblem> {
    if p.g != GFunction::ZeroIndicator || p.operator().is_none() {
        return Err(Error::Unsupported(
            "dual engine needs g = indicator of the origin and a diagonal operator".into(),
        ));
    }
    let d = dual_function(p)?;
    // the conjugate of the indicator of the origin is identically zero
    CompositeProblem::new(d, GFunction::Zero, LinearMap::Identity)
}

pub fn run_dual_dr(
    p: &CompositeProblem,
    params: SplitParams,
    mu0: &Vector,
    opts: &RunOptions,
) -> Result<IterateTrace> {
    let dual = dual_problem(p)?;
    run_dr(&dual, params, mu0, opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmmOutcome {
    /// Trace of the unscaled dual variable `mu = rho * u`.
    pub trace: IterateTrace,
    pub x: Vector,
    pub w: Vector,
    pub u: Vector,
}

/// Scaled-form ADMM for `minimize f(x) + g(w)` subject to `A x = w`.
///
/// `alpha` is the Douglas-Rachford relaxation of the equivalent dual
/// iteration; the ADMM over-relaxation applied to `A x` is `2 alpha`, so
/// `alpha = 1/2` is plain ADMM.
pub fn run_admm(
    p: &CompositeProblem,
    rho: f64,
    alpha: f64,
    x0: &Vector,
    w0: &Vector,
    u0: &Vector,
    opts: &RunOptions,
) -> Result<AdmmOutcome> {
    if p.g != GFunction::ZeroIndicator {
        return Err(Error::Unsupported(
            "ADMM engine needs g = indicator of the origin".into(),
        ));
    }
    let op = p
        .operator()
        .ok_or_else(|| Error::Unsupported("ADMM engine needs a diagonal operator".into()))?;
    if !(rho.is_finite() && rho > 0.0) {
        return Err(invalid(format!("penalty rho must be positive, got {rho}")));
    }
    SplitParams::new(alpha, rho)?;
    let dim = p.dim();
    for v in [x0, w0, u0] {
        v.check_dim(dim)?;
    }
    let lambda = p.f.weights();
    let nu = op.weights();
    let relax = 2.0 * alpha;

    let mut x = x0.clone();
    let mut w = w0.clone();
    let mut u = u0.clone();
    let mu0 = u.scale(rho);
    if mu0.norm() == 0.0 && w.norm() == 0.0 {
        x = Vector::zeros(dim);
        let trace = IterateTrace::from_iterates(vec![mu0], Vector::zeros(dim), true);
        return Ok(AdmmOutcome { trace, x, w, u });
    }

    let trace = iterate(mu0, opts, |_| {
        // x-update: lambda_i x + rho nu_i (nu_i x - w_i + u_i) = 0
        let xi: Vec<f64> = (0..dim)
            .map(|i| {
                rho * nu[i] * (w.coeffs()[i] - u.coeffs()[i]) / (lambda[i] + rho * nu[i] * nu[i])
            })
            .collect();
        x = Vector::from_raw(xi);
        let ax = op.apply(&x)?;
        let ax_hat = ax.zip_map(&w, |a, wi| relax * a + (1.0 - relax) * wi);
        w = prox_g(p.g, 1.0 / rho, &ax_hat.add(&u)?)?;
        u = u.add(&ax_hat)?.sub(&w)?;
        Ok(u.scale(rho))
    });
    let trace = trace?;
    Ok(AdmmOutcome { trace, x, w, u })
}

/// Stationarity and feasibility residuals `||grad f(x) + A* mu||` and
/// `||A x - w||`.
pub fn kkt_residuals(
    p: &CompositeProblem,
    x: &Vector,
    w: &Vector,
    mu: &Vector,
) -> Result<(f64, f64)> {
    let (a_star_mu, ax) = match &p.a {
        LinearMap::Identity => (mu.clone(), x.clone()),
        LinearMap::Diag(op) => (op.apply_adjoint(mu)?, op.apply(x)?),
    };
    let stationarity = p.f.grad(x)?.add(&a_star_mu)?.norm();
    let feasibility = ax.sub(w)?.norm();
    Ok((stationarity, feasibility))
}

/// Geometric mean of the last `ceil(n/2)` of the `n` valid step ratios.
pub fn fit_rate(trace: &IterateTrace) -> Result<f64> {
    let ratios: Vec<f64> = trace.step_ratios().into_iter().flatten().collect();
    if ratios.len() < MIN_RATIOS {
        return Err(Error::TraceTooShort {
            valid: ratios.len(),
            needed: MIN_RATIOS,
        });
    }
    let tail = &ratios[ratios.len() / 2..];
    let mean_log = tail.iter().map(|r| r.ln()).sum::<f64>() / tail.len() as f64;
    Ok(mean_log.exp())
}
