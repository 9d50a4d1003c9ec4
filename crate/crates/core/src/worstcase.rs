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

//! Problem instances on which the linear rate bounds are attained, and the
//! closed-form iterate predictor used to check the engines exactly.
//!
//! Starting from a basis vector `phi_i`, every Douglas-Rachford iterate on a
//! separable quadratic stays on the ray through `phi_i`:
//! `z^k = c^k phi_i` with `c = 1 - alpha + alpha (1 - gamma lambda_i)/(1 + gamma lambda_i)`.

use crate::error::{invalid, Result};
use crate::functions::{
    CompositeProblem, DiagOperator, DiagQuadratic, GFunction, IndexClass, LinearMap, Pairing,
    SpectrumSpec,
};
use crate::hilbert::Vector;
use crate::prox::check_gamma;
use crate::rates::{check_curvatures, psi_unchecked, BOUNDARY_TOL};

pub const DEFAULT_DIM: usize = 8;
pub const DEFAULT_SIGMA: f64 = 1.0;
pub const DEFAULT_BETA: f64 = 10.0;
pub const DEFAULT_THETA: f64 = 1.0;
pub const DEFAULT_ZETA: f64 = 3.0;

/// The first half of the indices carries `sigma`.
pub fn default_idx_sigma(dim: usize) -> Vec<usize> {
    (0..(dim / 2).max(1)).collect()
}

/// `f = sum (lambda_i/2) <x, phi_i>^2`, `g = 0`, `A = Id`.
pub fn make_primal_instance(
    sigma: f64,
    beta: f64,
    dim: usize,
    idx_sigma: &[usize],
) -> Result<CompositeProblem> {
    let spec = SpectrumSpec::new(dim, sigma, beta, idx_sigma)?;
    CompositeProblem::new(
        DiagQuadratic::from_spectrum(&spec),
        GFunction::Zero,
        LinearMap::Identity,
    )
}

/// Same `f`, `g` the indicator of the origin, and a diagonal `A` with
/// weights `theta < zeta` attached to the index classes by `pairing`.
pub fn make_dual_instance(
    sigma: f64,
    beta: f64,
    theta: f64,
    zeta: f64,
    dim: usize,
    idx_sigma: &[usize],
    pairing: Pairing,
) -> Result<CompositeProblem> {
    if !(theta > 0.0 && theta < zeta) {
        return Err(invalid(format!(
            "dual instance needs 0 < theta < zeta, got theta = {theta}, zeta = {zeta}"
        )));
    }
    let spec = SpectrumSpec::new(dim, sigma, beta, idx_sigma)?;
    let op = DiagOperator::from_spectrum(&spec, theta, zeta, pairing)?;
    CompositeProblem::new(
        DiagQuadratic::from_spectrum(&spec),
        GFunction::ZeroIndicator,
        LinearMap::Diag(op),
    )
}

/// Per-step multiplier `1 - alpha + alpha (1 - gamma lambda)/(1 + gamma lambda)`.
pub fn contraction_coefficient(lambda: f64, alpha: f64, gamma: f64) -> f64 {
    1.0 - alpha + alpha * psi_unchecked(gamma * lambda)
}

/// Coefficient of `phi_i` in `z^k` when `z^0 = phi_i`.
pub fn predict_iterate(lambda: f64, alpha: f64, gamma: f64, k: u32) -> Result<f64> {
    check_gamma(gamma)?;
    Ok(contraction_coefficient(lambda, alpha, gamma).powi(k as i32))
}

/// The index class whose basis vectors contract slowest. Ties (to within
/// `BOUNDARY_TOL` relative) go to `Sigma`.
pub fn worst_direction(alpha: f64, gamma: f64, sigma: f64, beta: f64) -> Result<IndexClass> {
    check_gamma(gamma)?;
    check_curvatures(sigma, beta)?;
    let slow_sigma = contraction_coefficient(sigma, alpha, gamma).abs();
    let slow_beta = contraction_coefficient(beta, alpha, gamma).abs();
    Ok(if slow_sigma >= slow_beta - BOUNDARY_TOL * slow_beta {
        IndexClass::Sigma
    } else {
        IndexClass::Beta
    })
}

/// Index of the smallest (`Sigma`) or largest (`Beta`) weight of `f`,
/// first occurrence.
pub fn extreme_index(f: &DiagQuadratic, class: IndexClass) -> usize {
    let w = f.weights();
    let target = match class {
        IndexClass::Sigma => f.sigma(),
        IndexClass::Beta => f.beta(),
    };
    w.iter().position(|&x| x == target).unwrap()
}

/// Basis vector along the extreme weight of `f` for the given class.
pub fn worst_start(f: &DiagQuadratic, class: IndexClass) -> Vector {
    Vector::basis(f.dim(), extreme_index(f, class))
}
