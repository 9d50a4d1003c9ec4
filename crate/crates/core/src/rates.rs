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

//! Closed-form rate bounds for generalized Douglas-Rachford splitting on
//! `sigma`-strongly convex, `beta`-smooth problems, their optimal parameters,
//! the constants inherited by the dual problem, and the classification of
//! parameter pairs for which the bound is attained exactly.

use std::fmt;

use crate::error::{invalid, Result};

/// Relative tolerance used when deciding `alpha == 1` or `gamma == 1/sqrt(sigma beta)`.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `psi(x) = (1 - x) / (1 + x)`, defined for `x > -1`.
pub fn psi(x: f64) -> Result<f64> {
    if !(x > -1.0) {
        return Err(invalid(format!("psi needs x > -1, got {x}")));
    }
    Ok(psi_unchecked(x))
}

#[inline]
pub(crate) fn psi_unchecked(x: f64) -> f64 {
    (1.0 - x) / (1.0 + x)
}

pub(crate) fn check_curvatures(sigma: f64, beta: f64) -> Result<()> {
    if !(sigma.is_finite() && beta.is_finite() && sigma > 0.0 && sigma <= beta) {
        return Err(invalid(format!(
            "need 0 < sigma <= beta, got sigma = {sigma}, beta = {beta}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(invalid(format!("{name} must be positive, got {value}")));
    }
    Ok(())
}

/// `max((1 - gamma sigma)/(1 + gamma sigma), (gamma beta - 1)/(gamma beta + 1))`
pub fn max_term(gamma: f64, sigma: f64, beta: f64) -> Result<f64> {
    check_positive("gamma", gamma)?;
    check_curvatures(sigma, beta)?;
    Ok(psi_unchecked(gamma * sigma).max(-psi_unchecked(gamma * beta)))
}

/// `|1 - alpha| + alpha * max_term`; below one exactly when `alpha` is feasible.
pub fn theoretical_rate(alpha: f64, gamma: f64, sigma: f64, beta: f64) -> Result<f64> {
    check_positive("alpha", alpha)?;
    let m = max_term(gamma, sigma, beta)?;
    Ok((1.0 - alpha).abs() + alpha * m)
}

/// `2 / (1 + max_term)`, the supremum of admissible relaxation parameters.
pub fn alpha_upper_bound(gamma: f64, sigma: f64, beta: f64) -> Result<f64> {
    Ok(2.0 / (1.0 + max_term(gamma, sigma, beta)?))
}

pub fn is_feasible(alpha: f64, gamma: f64, sigma: f64, beta: f64) -> Result<bool> {
    check_positive("alpha", alpha)?;
    Ok(alpha < alpha_upper_bound(gamma, sigma, beta)?)
}

/// Step size minimizing the bound for `alpha = 1`.
pub fn optimal_gamma(sigma: f64, beta: f64) -> f64 {
    1.0 / (sigma * beta).sqrt()
}

/// `(sqrt(kappa) - 1) / (sqrt(kappa) + 1)`
pub fn optimal_rate_for_condition(kappa: f64) -> f64 {
    let s = kappa.sqrt();
    (s - 1.0) / (s + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalParams {
    pub alpha: f64,
    pub gamma: f64,
    pub rate: f64,
}

pub fn optimal_params(sigma: f64, beta: f64) -> Result<OptimalParams> {
    check_curvatures(sigma, beta)?;
    Ok(OptimalParams {
        alpha: 1.0,
        gamma: optimal_gamma(sigma, beta),
        rate: optimal_rate_for_condition(beta / sigma),
    })
}

/// Smoothness and strong convexity constants of the dual function
/// `d = f* o (-A*)` when `theta ||mu|| <= ||A* mu||` and `||A*|| = zeta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateConstants {
    pub sigma: f64,
    pub beta: f64,
    pub theta: f64,
    pub zeta: f64,
    /// `theta^2 / beta`
    pub sigma_hat: f64,
    /// `zeta^2 / sigma`
    pub beta_hat: f64,
    /// `beta_hat / sigma_hat`
    pub kappa: f64,
}

impl RateConstants {
    /// `sqrt(beta sigma) / (zeta theta)`, equal to `1/sqrt(beta_hat sigma_hat)`.
    pub fn dual_optimal_gamma(&self) -> f64 {
        (self.beta * self.sigma).sqrt() / (self.zeta * self.theta)
    }

    pub fn dual_optimal_rate(&self) -> f64 {
        optimal_rate_for_condition(self.kappa)
    }

    pub fn dual_optimal_params(&self) -> OptimalParams {
        OptimalParams {
            alpha: 1.0,
            gamma: self.dual_optimal_gamma(),
            rate: self.dual_optimal_rate(),
        }
    }
}

pub fn dual_rate_constants(sigma: f64, beta: f64, theta: f64, zeta: f64) -> Result<RateConstants> {
    check_curvatures(sigma, beta)?;
    if !(theta.is_finite() && zeta.is_finite() && theta > 0.0 && theta <= zeta) {
        return Err(invalid(format!(
            "need 0 < theta <= zeta, got theta = {theta}, zeta = {zeta}"
        )));
    }
    let sigma_hat = theta * theta / beta;
    let beta_hat = zeta * zeta / sigma;
    Ok(RateConstants {
        sigma,
        beta,
        theta,
        zeta,
        sigma_hat,
        beta_hat,
        kappa: beta_hat / sigma_hat,
    })
}

/// Parameter regions in which the rate bound is attained exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TightnessCase {
    /// `alpha = 1`, any `gamma`.
    CaseI,
    /// `alpha in (0, 1]`, `gamma <= 1/sqrt(sigma beta)`.
    CaseII,
    /// `alpha in [1, upper bound)`, `gamma >= 1/sqrt(sigma beta)`.
    CaseIII,
    /// any feasible `alpha`, `gamma = 1/sqrt(sigma beta)`.
    CaseIV,
    FeasibleNotClassified,
    Infeasible,
}

impl TightnessCase {
    pub const ALL: [TightnessCase; 6] = [
        TightnessCase::CaseI,
        TightnessCase::CaseII,
        TightnessCase::CaseIII,
        TightnessCase::CaseIV,
        TightnessCase::FeasibleNotClassified,
        TightnessCase::Infeasible,
    ];

    pub fn is_tight(&self) -> bool {
        matches!(
            self,
            TightnessCase::CaseI
                | TightnessCase::CaseII
                | TightnessCase::CaseIII
                | TightnessCase::CaseIV
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            TightnessCase::CaseI => "case-i",
            TightnessCase::CaseII => "case-ii",
            TightnessCase::CaseIII => "case-iii",
            TightnessCase::CaseIV => "case-iv",
            TightnessCase::FeasibleNotClassified => "feasible-unclassified",
            TightnessCase::Infeasible => "infeasible",
        }
    }
}

impl fmt::Display for TightnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= BOUNDARY_TOL * a.abs().max(b.abs()).max(1.0)
}

/// First matching case in the order I, II, III, IV; otherwise feasibility
/// decides between `FeasibleNotClassified` and `Infeasible`.
pub fn classify_tightness(alpha: f64, gamma: f64, sigma: f64, beta: f64) -> Result<TightnessCase> {
    check_positive("alpha", alpha)?;
    let upper = alpha_upper_bound(gamma, sigma, beta)?;
    if !(alpha < upper) {
        return Ok(TightnessCase::Infeasible);
    }
    let g_star = optimal_gamma(sigma, beta);
    let alpha_is_one = close(alpha, 1.0);
    let gamma_at_star = close(gamma, g_star);
    let gamma_below = gamma <= g_star || gamma_at_star;
    let gamma_above = gamma >= g_star || gamma_at_star;

    Ok(if alpha_is_one {
        TightnessCase::CaseI
    } else if alpha <= 1.0 && gamma_below {
        TightnessCase::CaseII
    } else if alpha >= 1.0 && gamma_above {
        TightnessCase::CaseIII
    } else if gamma_at_star {
        TightnessCase::CaseIV
    } else {
        TightnessCase::FeasibleNotClassified
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn theoretical_rate_examples() {
        assert_close(
            theoretical_rate(1.0, 0.5, 1.0, 4.0).unwrap(),
            1.0 / 3.0,
            1e-15,
        );
        assert_eq!(theoretical_rate(1.0, 1.0, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(theoretical_rate(0.5, 1.0, 1.0, 1.0).unwrap(), 0.5);
        assert!(theoretical_rate(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(theoretical_rate(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(theoretical_rate(1.0, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn optimal_params_examples() {
        let p = optimal_params(1.0, 4.0).unwrap();
        assert_eq!((p.alpha, p.gamma), (1.0, 0.5));
        assert_close(p.rate, 1.0 / 3.0, 1e-15);

        let p = optimal_params(2.5, 2.5).unwrap();
        assert_eq!(p.alpha, 1.0);
        assert_close(p.gamma, 1.0 / 2.5, 1e-15);
        assert_eq!(p.rate, 0.0);

        let p = optimal_params(1.0, 100.0).unwrap();
        assert_close(p.gamma, 0.1, 1e-15);
        assert_close(p.rate, 9.0 / 11.0, 1e-15);

        for (s, b) in [(1.0, 4.0), (0.3, 17.0), (2.0, 2.0)] {
            let p = optimal_params(s, b).unwrap();
            assert_close(
                theoretical_rate(p.alpha, p.gamma, s, b).unwrap(),
                p.rate,
                1e-15,
            );
        }
        assert!(optimal_params(4.0, 1.0).is_err());
    }

    #[test]
    fn alpha_upper_bound_examples() {
        assert_close(alpha_upper_bound(0.5, 1.0, 4.0).unwrap(), 1.5, 1e-15);
        assert_close(alpha_upper_bound(1.0 / 3.0, 3.0, 3.0).unwrap(), 2.0, 1e-15);
        assert_close(alpha_upper_bound(1e6, 1.0, 4.0).unwrap(), 1.0, 1e-5);
        assert!(alpha_upper_bound(1e6, 1.0, 4.0).unwrap() > 1.0);
        assert!(alpha_upper_bound(0.0, 1.0, 4.0).is_err());
    }

    #[test]
    fn rate_below_one_iff_feasible() {
        for &gamma in &[0.01, 0.1, 0.5, 2.0, 50.0] {
            let ub = alpha_upper_bound(gamma, 1.0, 10.0).unwrap();
            for t in [0.1, 0.5, 0.99] {
                assert!(theoretical_rate(t * ub, gamma, 1.0, 10.0).unwrap() < 1.0);
            }
            for t in [1.01, 1.5] {
                assert!(theoretical_rate(t * ub, gamma, 1.0, 10.0).unwrap() >= 1.0);
            }
        }
    }

    #[test]
    fn dual_constants_examples() {
        let c = dual_rate_constants(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!((c.sigma_hat, c.beta_hat, c.kappa), (1.0, 1.0, 1.0));

        let c = dual_rate_constants(1.0, 4.0, 1.0, 2.0).unwrap();
        assert_eq!((c.beta_hat, c.sigma_hat, c.kappa), (4.0, 0.25, 16.0));
        assert_close(c.dual_optimal_rate(), 0.6, 1e-15);
        assert_close(
            c.dual_optimal_gamma(),
            1.0 / (c.beta_hat * c.sigma_hat).sqrt(),
            1e-15,
        );

        assert!(dual_rate_constants(1.0, 4.0, 2.0, 1.0).is_err());
        assert!(dual_rate_constants(1.0, 4.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_tightness(1.0, 7.0, 1.0, 4.0).unwrap(),
            TightnessCase::CaseI
        );
        assert_eq!(
            classify_tightness(0.3, 0.1, 1.0, 4.0).unwrap(),
            TightnessCase::CaseII
        );
        assert_eq!(
            classify_tightness(0.3, 5.0, 1.0, 4.0).unwrap(),
            TightnessCase::FeasibleNotClassified
        );
        // gamma = 1/sqrt(sigma beta) = 0.5, over-relaxed alpha
        assert_eq!(
            classify_tightness(1.2, 0.5, 1.0, 4.0).unwrap(),
            TightnessCase::CaseIII
        );
        assert_eq!(
            classify_tightness(1.2, 1.0, 1.0, 4.0).unwrap(),
            TightnessCase::CaseIII
        );
        assert_eq!(
            classify_tightness(1.2, 5.0, 1.0, 4.0).unwrap(),
            TightnessCase::Infeasible
        );
        assert_eq!(
            classify_tightness(1.05, 0.1, 1.0, 4.0).unwrap(),
            TightnessCase::FeasibleNotClassified
        );
        assert_eq!(
            classify_tightness(1.6, 0.5, 1.0, 4.0).unwrap(),
            TightnessCase::Infeasible
        );
        assert!(classify_tightness(0.0, 0.5, 1.0, 4.0).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(0.0).unwrap(), 1.0);
        assert_eq!(psi(1.0).unwrap(), 0.0);
        assert_eq!(psi(3.0).unwrap(), -0.5);
        assert!(psi(-1.0).is_err());
        assert!(psi(-2.0).is_err());
    }

    #[test]
    fn optimum_on_log_grid() {
        let (s, b) = (1.0, 10.0);
        let g_star = optimal_gamma(s, b);
        let grid: Vec<f64> = (0..200)
            .map(|i| g_star * 10f64.powf(-2.0 + 4.0 * i as f64 / 199.0))
            .collect();
        let best = grid
            .iter()
            .copied()
            .min_by(|x, y| {
                theoretical_rate(1.0, *x, s, b)
                    .unwrap()
                    .total_cmp(&theoretical_rate(1.0, *y, s, b).unwrap())
            })
            .unwrap();
        let spacing = 10f64.powf(4.0 / 199.0);
        assert!(best / g_star <= spacing && g_star / best <= spacing);
    }
}
