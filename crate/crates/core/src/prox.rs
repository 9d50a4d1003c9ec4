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

//! Proximal and reflected proximal operators.
//!
//! For the separable quadratic `f` the prox scales coordinate `i` by
//! `1 / (1 + gamma * lambda_i)` and the reflected prox by
//! `(1 - gamma * lambda_i) / (1 + gamma * lambda_i)`.
//! [`prox_oracle`] computes the same argmin by direct scalar minimization and
//! is kept independent of the closed forms so tests can compare the two.

use crate::error::{invalid, Error, Result};
use crate::functions::{DiagQuadratic, GFunction};
use crate::hilbert::Vector;

/// Half-width of the search bracket around each input coordinate.
pub const ORACLE_BRACKET: f64 = 10.0;

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(invalid(format!(
            "step size gamma must be positive, got {gamma}"
        )));
    }
    Ok(())
}

/// Scalar multiplier the prox of `gamma * (lambda/2) x^2` applies.
#[inline]
pub fn prox_factor(lambda: f64, gamma: f64) -> f64 {
    1.0 / (1.0 + gamma * lambda)
}

/// Scalar multiplier the reflected prox of `gamma * (lambda/2) x^2` applies.
#[inline]
pub fn reflection_factor(lambda: f64, gamma: f64) -> f64 {
    (1.0 - gamma * lambda) / (1.0 + gamma * lambda)
}

pub fn prox_diag(f: &DiagQuadratic, gamma: f64, y: &Vector) -> Result<Vector> {
    check_gamma(gamma)?;
    y.check_dim(f.dim())?;
    let w = f.weights();
    Ok(y.map_indexed(|i, b| prox_factor(w[i], gamma) * b))
}

pub fn refl_prox_diag(f: &DiagQuadratic, gamma: f64, y: &Vector) -> Result<Vector> {
    check_gamma(gamma)?;
    y.check_dim(f.dim())?;
    let w = f.weights();
    Ok(y.map_indexed(|i, b| reflection_factor(w[i], gamma) * b))
}

pub fn prox_g(g: GFunction, gamma: f64, y: &Vector) -> Result<Vector> {
    check_gamma(gamma)?;
    Ok(match g {
        GFunction::Zero => y.clone(),
        GFunction::ZeroIndicator => Vector::zeros(y.dim()),
    })
}

pub fn refl_prox_g(g: GFunction, gamma: f64, y: &Vector) -> Result<Vector> {
    check_gamma(gamma)?;
    Ok(match g {
        GFunction::Zero => y.clone(),
        GFunction::ZeroIndicator => y.scale(-1.0),
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const GOLDEN_WIDTH: f64 = 1e-7;
const PARABOLA_STEP: f64 = 1e-2;

/// Minimizes a convex scalar function on `[lo, hi]`: golden-section search
/// down to a `1e-7` bracket, then parabolic steps through three points
/// `1e-2` apart. The parabolic steps are exact for quadratics, which the
/// comparison-only golden phase cannot be below roughly `sqrt(eps)`; a
/// parabolic step that increases the objective (a kink) is rejected.
fn minimize_scalar(phi: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (bracket_lo, bracket_hi) = (lo, hi);
    phi(lo)?;
    phi(hi)?;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = phi(c)?;
    let mut fd = phi(d)?;
    while hi - lo > GOLDEN_WIDTH {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = phi(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = phi(d)?;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let h = PARABOLA_STEP;
        let (f0, f1, f2) = (phi(x - h)?, phi(x)?, phi(x + h)?);
        let curvature = f0 - 2.0 * f1 + f2;
        if !(curvature > 0.0) {
            break;
        }
        let step = h * (f2 - f0) / (2.0 * curvature);
        let next = x - step;
        if !(next >= bracket_lo && next <= bracket_hi)
            || phi(next)? > f1 + 64.0 * f64::EPSILON * f1.abs().max(1.0)
        {
            break;
        }
        x = next;
        if step.abs() < 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

/// Numerical prox of a separable objective: coordinate `i` minimizes
/// `objective(i, x) + (x - y_i)^2 / (2 gamma)` over `[y_i - 10, y_i + 10]`.
pub fn prox_oracle(
    objective: &dyn Fn(usize, f64) -> f64,
    gamma: f64,
    y: &Vector,
) -> Result<Vector> {
    check_gamma(gamma)?;
    let mut out = Vec::with_capacity(y.dim());
    for (index, &b) in y.coeffs().iter().enumerate() {
        let phi = |x: f64| -> Result<f64> {
            let v = objective(index, x) + (x - b) * (x - b) / (2.0 * gamma);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteObjective { index, x })
            }
        };
        out.push(minimize_scalar(
            &phi,
            b - ORACLE_BRACKET,
            b + ORACLE_BRACKET,
        )?);
    }
    Vector::new(out)
}
