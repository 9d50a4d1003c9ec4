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

//! Function classes used by the splitting engines: separable quadratics,
//! the two supported `g` functions, and diagonal linear operators.

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{invalid, Error, Result};
use crate::hilbert::Vector;

/// Seed used by the sampled convexity checks unless the caller picks one.
pub const CONVEXITY_SEED: u64 = 0x5eed_c0de;
/// Number of sampled pairs for the convexity checks.
pub const CONVEXITY_SAMPLES: usize = 1000;
/// Additive slack allowed in the sampled inequalities.
pub const CONVEXITY_SLACK: f64 = 1e-10;
/// Sample coordinates are drawn from `[-COORD_RANGE, COORD_RANGE]`.
const COORD_RANGE: f64 = 10.0;

/// Which curvature an index carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexClass {
    Sigma,
    Beta,
}

/// A dimension together with a split of the indices into the `sigma` and
/// `beta` classes. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSpec {
    sigma: f64,
    beta: f64,
    classes: Vec<IndexClass>,
}

impl SpectrumSpec {
    pub fn new(dim: usize, sigma: f64, beta: f64, idx_sigma: &[usize]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        if !(sigma.is_finite() && beta.is_finite() && sigma > 0.0 && sigma <= beta) {
            return Err(invalid(format!(
                "need 0 < sigma <= beta, got sigma = {sigma}, beta = {beta}"
            )));
        }
        let mut classes = vec![IndexClass::Beta; dim];
        for &i in idx_sigma {
            if i >= dim {
                return Err(Error::InvalidPartition(format!(
                    "index {i} out of range for dimension {dim}"
                )));
            }
            classes[i] = IndexClass::Sigma;
        }
        if !classes.contains(&IndexClass::Sigma) {
            return Err(Error::InvalidPartition("sigma index set is empty".into()));
        }
        if !classes.contains(&IndexClass::Beta) {
            return Err(Error::InvalidPartition("beta index set is empty".into()));
        }
        Ok(Self {
            sigma,
            beta,
            classes,
        })
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn class_of(&self, index: usize) -> IndexClass {
        self.classes[index]
    }

    pub fn indices(&self, class: IndexClass) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.classes[i] == class)
            .collect()
    }

    pub fn idx_sigma(&self) -> Vec<usize> {
        self.indices(IndexClass::Sigma)
    }

    pub fn idx_beta(&self) -> Vec<usize> {
        self.indices(IndexClass::Beta)
    }

    /// Smallest index of the given class. Both classes are nonempty.
    pub fn first_index(&self, class: IndexClass) -> usize {
        self.classes.iter().position(|&c| c == class).unwrap()
    }

    pub fn curvature(&self, class: IndexClass) -> f64 {
        match class {
            IndexClass::Sigma => self.sigma,
            IndexClass::Beta => self.beta,
        }
    }
}

/// `f(x) = sum_i (lambda_i / 2) <x, phi_i>^2` with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagQuadratic {
    weights: Vec<f64>,
}

impl DiagQuadratic {
    pub fn from_spectrum(spec: &SpectrumSpec) -> Self {
        let weights = (0..spec.dim())
            .map(|i| spec.curvature(spec.class_of(i)))
            .collect();
        Self { weights }
    }

    /// Arbitrary nonnegative weights. Zero weights are allowed here (a flat
    /// coordinate) even though they break strong convexity.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(invalid(format!(
                "quadratic weight {w} must be finite and >= 0"
            )));
        }
        Ok(Self { weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Strong convexity modulus, the smallest weight.
    pub fn sigma(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Smoothness modulus, the largest weight.
    pub fn beta(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &Vector) -> Result<f64> {
        x.check_dim(self.dim())?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &Vector) -> f64 {
        self.weights
            .iter()
            .zip(x.coeffs())
            .map(|(l, a)| 0.5 * l * a * a)
            .sum()
    }

    pub fn grad(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        Ok(x.map_indexed(|i, a| self.weights[i] * a))
    }
}

pub fn eval_f(f: &DiagQuadratic, x: &Vector) -> Result<f64> {
    f.eval(x)
}

pub fn grad_f(f: &DiagQuadratic, x: &Vector) -> Result<Vector> {
    f.grad(x)
}

/// Bregman gap `f(x) - f(y) - <grad f(y), x - y>` and `||x - y||^2`.
fn bregman(f: &DiagQuadratic, x: &Vector, y: &Vector) -> (f64, f64) {
    let g = f.grad(y).expect("dimension checked by caller");
    let d = x.sub(y).expect("dimension checked by caller");
    let gap = f.eval_unchecked(x) - f.eval_unchecked(y) - g.dot_unchecked(&d);
    (gap, d.norm_squared())
}

fn sampled_pairs(dim: usize, samples: usize, seed: u64) -> impl Iterator<Item = (Vector, Vector)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..samples).map(move |_| {
        (
            Vector::random(dim, COORD_RANGE, &mut rng),
            Vector::random(dim, COORD_RANGE, &mut rng),
        )
    })
}

/// Tests the strong convexity inequality with modulus `sigma` on `samples`
/// seeded random pairs, with the gradient as subgradient.
pub fn check_strong_convexity(f: &DiagQuadratic, sigma: f64, samples: usize, seed: u64) -> bool {
    sampled_pairs(f.dim(), samples, seed).all(|(x, y)| {
        let (gap, dist2) = bregman(f, &x, &y);
        gap >= 0.5 * sigma * dist2 - CONVEXITY_SLACK
    })
}

/// Tests the upper quadratic bound with modulus `beta` on `samples` seeded
/// random pairs.
pub fn check_smoothness(f: &DiagQuadratic, beta: f64, samples: usize, seed: u64) -> bool {
    sampled_pairs(f.dim(), samples, seed).all(|(x, y)| {
        let (gap, dist2) = bregman(f, &x, &y);
        gap <= 0.5 * beta * dist2 + CONVEXITY_SLACK
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GFunction {
    /// `g(x) = 0`
    Zero,
    /// Indicator of the origin: `0` at `x = 0`, `+inf` elsewhere.
    ZeroIndicator,
}

impl GFunction {
    pub fn eval(&self, x: &Vector) -> f64 {
        match self {
            GFunction::Zero => 0.0,
            GFunction::ZeroIndicator => {
                if x.coeffs().iter().all(|&a| a == 0.0) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

/// How operator weights are attached to the curvature classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// `nu = theta` on sigma indices and `nu = zeta` on beta indices.
    Aligned,
    /// `nu = zeta` on sigma indices and `nu = theta` on beta indices.
    Crossed,
}

impl Pairing {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pairing::Aligned => "aligned",
            Pairing::Crossed => "crossed",
        }
    }
}

impl std::str::FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "aligned" => Ok(Pairing::Aligned),
            "crossed" => Ok(Pairing::Crossed),
            other => Err(invalid(format!("unknown pairing '{other}'"))),
        }
    }
}

/// Self-adjoint diagonal operator `A(x) = sum_i nu_i <x, phi_i> phi_i` with
/// `theta <= nu_i <= zeta`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagOperator {
    weights: Vec<f64>,
    theta: f64,
    zeta: f64,
}

fn check_theta_zeta(theta: f64, zeta: f64) -> Result<()> {
    if !(theta.is_finite() && zeta.is_finite() && theta > 0.0 && theta <= zeta) {
        return Err(invalid(format!(
            "need 0 < theta <= zeta, got theta = {theta}, zeta = {zeta}"
        )));
    }
    Ok(())
}

impl DiagOperator {
    pub fn from_spectrum(
        spec: &SpectrumSpec,
        theta: f64,
        zeta: f64,
        pairing: Pairing,
    ) -> Result<Self> {
        check_theta_zeta(theta, zeta)?;
        let weights =
            (0..spec.dim())
                .map(|i| match (spec.class_of(i), pairing) {
                    (IndexClass::Sigma, Pairing::Aligned)
                    | (IndexClass::Beta, Pairing::Crossed) => theta,
                    (IndexClass::Beta, Pairing::Aligned)
                    | (IndexClass::Sigma, Pairing::Crossed) => zeta,
                })
                .collect();
        Ok(Self {
            weights,
            theta,
            zeta,
        })
    }

    pub fn from_weights(weights: Vec<f64>, theta: f64, zeta: f64) -> Result<Self> {
        check_theta_zeta(theta, zeta)?;
        if weights.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(w) = weights.iter().find(|&&w| !(w >= theta && w <= zeta)) {
            return Err(invalid(format!(
                "operator weight {w} outside [theta, zeta] = [{theta}, {zeta}]"
            )));
        }
        Ok(Self {
            weights,
            theta,
            zeta,
        })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        Ok(x.map_indexed(|i, a| self.weights[i] * a))
    }

    /// The operator is diagonal in the basis, hence self-adjoint.
    pub fn apply_adjoint(&self, x: &Vector) -> Result<Vector> {
        self.apply(x)
    }

    /// Largest weight. Equals `zeta` whenever some index carries it.
    pub fn operator_norm(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }
}

pub fn apply_operator(a: &DiagOperator, x: &Vector) -> Result<Vector> {
    a.apply(x)
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinearMap {
    Identity,
    Diag(DiagOperator),
}

/// `minimize f(x) + g(A x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeProblem {
    pub f: DiagQuadratic,
    pub g: GFunction,
    pub a: LinearMap,
}

impl CompositeProblem {
    pub fn new(f: DiagQuadratic, g: GFunction, a: LinearMap) -> Result<Self> {
        if let LinearMap::Diag(op) = &a {
            if op.dim() != f.dim() {
                return Err(Error::DimensionMismatch {
                    expected: f.dim(),
                    found: op.dim(),
                });
            }
        }
        Ok(Self { f, g, a })
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn operator(&self) -> Option<&DiagOperator> {
        match &self.a {
            LinearMap::Identity => None,
            LinearMap::Diag(op) => Some(op),
        }
    }

    pub fn objective(&self, x: &Vector) -> Result<f64> {
        let ax = match &self.a {
            LinearMap::Identity => x.clone(),
            LinearMap::Diag(op) => op.apply(x)?,
        };
        Ok(self.f.eval(x)? + self.g.eval(&ax))
    }
}

/// Closed form of `d = f* o (-A*)` for `g` the indicator of the origin:
/// the diagonal quadratic with weights `nu_i^2 / lambda_i`.
pub fn dual_function(p: &CompositeProblem) -> Result<DiagQuadratic> {
    if p.g != GFunction::ZeroIndicator {
        return Err(Error::Unsupported(format!(
            "dual function needs g = indicator of the origin, got {:?}",
            p.g
        )));
    }
    let op = p
        .operator()
        .ok_or_else(|| Error::Unsupported("dual function needs a diagonal operator".into()))?;
    if let Some(l) = p.f.weights().iter().find(|&&l| l <= 0.0) {
        return Err(Error::Unsupported(format!(
            "conjugate needs strictly positive curvature, found weight {l}"
        )));
    }
    let weights = op
        .weights()
        .iter()
        .zip(p.f.weights())
        .map(|(nu, l)| nu * nu / l)
        .collect();
    DiagQuadratic::from_weights(weights)
}

/// Conjugate of the indicator of the origin, identically zero.
pub fn conjugate_of_indicator(_mu: &Vector) -> f64 {
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn spec_1_4() -> SpectrumSpec {
        SpectrumSpec::new(2, 1.0, 4.0, &[0]).unwrap()
    }

    fn default_spec() -> SpectrumSpec {
        SpectrumSpec::new(8, 1.0, 10.0, &[0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn spectrum_validation() {
        assert!(matches!(
            SpectrumSpec::new(2, 1.0, 4.0, &[]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            SpectrumSpec::new(2, 1.0, 4.0, &[0, 1]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(SpectrumSpec::new(2, 1.0, 4.0, &[5]).is_err());
        assert!(SpectrumSpec::new(2, 0.0, 4.0, &[0]).is_err());
        assert!(SpectrumSpec::new(2, 5.0, 4.0, &[0]).is_err());
        let s = default_spec();
        assert_eq!(s.idx_sigma(), vec![0, 1, 2, 3]);
        assert_eq!(s.idx_beta(), vec![4, 5, 6, 7]);
    }

    #[test]
    fn eval_f_examples() {
        let f = DiagQuadratic::from_spectrum(&spec_1_4());
        assert_eq!(f.weights(), &[1.0, 4.0]);
        assert_eq!(eval_f(&f, &Vector::zeros(2)).unwrap(), 0.0);
        assert_eq!(eval_f(&f, &v(&[1.0, 1.0])).unwrap(), 2.5);
        assert_eq!(eval_f(&f, &Vector::basis(2, 1)).unwrap(), 2.0);
        assert!(eval_f(&f, &Vector::zeros(3)).is_err());
    }

    #[test]
    fn eval_f_envelope() {
        let s = default_spec();
        let f = DiagQuadratic::from_spectrum(&s);
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let x = Vector::random(8, 10.0, &mut rng);
            let val = f.eval(&x).unwrap();
            assert!(val >= 0.0);
            assert!(val <= 0.5 * s.beta() * x.norm_squared() * (1.0 + 1e-15));
        }
    }

    #[test]
    fn grad_f_examples() {
        let f = DiagQuadratic::from_spectrum(&spec_1_4());
        assert_eq!(grad_f(&f, &Vector::zeros(2)).unwrap(), Vector::zeros(2));
        assert_eq!(grad_f(&f, &v(&[1.0, 1.0])).unwrap(), v(&[1.0, 4.0]));
    }

    #[test]
    fn grad_matches_central_differences() {
        let f = DiagQuadratic::from_spectrum(&default_spec());
        let mut rng = StdRng::seed_from_u64(11);
        let h = 1e-5;
        for _ in 0..20 {
            let x = Vector::random(8, 5.0, &mut rng);
            let g = f.grad(&x).unwrap();
            for i in 0..8 {
                let e = Vector::basis(8, i).scale(h);
                let fd = (f.eval(&x.add(&e).unwrap()).unwrap()
                    - f.eval(&x.sub(&e).unwrap()).unwrap())
                    / (2.0 * h);
                assert!(
                    (fd - g.coeffs()[i]).abs() < 1e-6,
                    "coord {i}: {fd} vs {}",
                    g.coeffs()[i]
                );
            }
        }
    }

    #[test]
    fn convexity_checks() {
        let s = default_spec();
        let f = DiagQuadratic::from_spectrum(&s);
        let iso_sigma = DiagQuadratic::from_weights(vec![1.0; 8]).unwrap();
        let iso_beta = DiagQuadratic::from_weights(vec![10.0; 8]).unwrap();
        let n = CONVEXITY_SAMPLES;
        let seed = CONVEXITY_SEED;

        assert!(check_strong_convexity(&iso_sigma, 1.0, n, seed));
        assert!(check_strong_convexity(&f, s.sigma(), n, seed));
        assert!(!check_strong_convexity(&f, s.beta() + 1.0, n, seed));

        assert!(check_smoothness(&iso_beta, 10.0, n, seed));
        assert!(check_smoothness(&f, s.beta(), n, seed));
        assert!(!check_smoothness(&f, s.sigma() / 2.0, n, seed));
    }

    #[test]
    fn convexity_fails_along_single_direction() {
        // only the sigma coordinate varies, so sigma' = beta + 1 must fail there
        let f = DiagQuadratic::from_spectrum(&spec_1_4());
        let x = Vector::basis(2, 0);
        let y = Vector::zeros(2);
        let (gap, d2) = bregman(&f, &x, &y);
        assert!(gap < 0.5 * 5.0 * d2);
        let x = Vector::basis(2, 1);
        let (gap, d2) = bregman(&f, &x, &y);
        assert!(gap > 0.5 * 0.5 * d2);
    }

    #[test]
    fn g_function_values() {
        assert_eq!(GFunction::Zero.eval(&v(&[1.0, 2.0])), 0.0);
        assert_eq!(GFunction::ZeroIndicator.eval(&Vector::zeros(2)), 0.0);
        assert_eq!(
            GFunction::ZeroIndicator.eval(&v(&[0.0, 1e-300])),
            f64::INFINITY
        );
    }

    #[test]
    fn apply_operator_examples() {
        let s = default_spec();
        let a = DiagOperator::from_spectrum(&s, 1.0, 3.0, Pairing::Aligned).unwrap();
        for j in s.idx_beta() {
            assert_eq!(
                apply_operator(&a, &Vector::basis(8, j)).unwrap(),
                Vector::basis(8, j).scale(3.0)
            );
        }
        for j in s.idx_sigma() {
            assert_eq!(
                apply_operator(&a, &Vector::basis(8, j)).unwrap(),
                Vector::basis(8, j)
            );
        }
        assert_eq!(
            apply_operator(&a, &Vector::zeros(8)).unwrap(),
            Vector::zeros(8)
        );
        assert_eq!(a.operator_norm(), 3.0);
    }

    #[test]
    fn crossed_pairing_swaps_weights() {
        let s = spec_1_4();
        let a = DiagOperator::from_spectrum(&s, 1.0, 2.0, Pairing::Crossed).unwrap();
        assert_eq!(a.weights(), &[2.0, 1.0]);
    }

    #[test]
    fn operator_validation() {
        let s = spec_1_4();
        assert!(DiagOperator::from_spectrum(&s, 0.0, 1.0, Pairing::Aligned).is_err());
        assert!(DiagOperator::from_spectrum(&s, 2.0, 1.0, Pairing::Aligned).is_err());
        assert!(DiagOperator::from_weights(vec![1.0, 5.0], 1.0, 2.0).is_err());
        let f = DiagQuadratic::from_spectrum(&s);
        let op = DiagOperator::from_weights(vec![1.0, 1.0, 1.0], 1.0, 1.0).unwrap();
        assert!(CompositeProblem::new(f, GFunction::ZeroIndicator, LinearMap::Diag(op)).is_err());
    }

    #[test]
    fn operator_properties() {
        let s = default_spec();
        let a = DiagOperator::from_spectrum(&s, 0.7, 3.0, Pairing::Aligned).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..1000 {
            let x = Vector::random(8, 10.0, &mut rng);
            let y = Vector::random(8, 10.0, &mut rng);
            let lhs = a.apply(&x).unwrap().inner(&y).unwrap();
            let rhs = x.inner(&a.apply_adjoint(&y).unwrap()).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
            let ax = a.apply(&x).unwrap().norm();
            assert!(0.7 * x.norm() - 1e-12 <= ax && ax <= 3.0 * x.norm() + 1e-12);
        }
    }

    #[test]
    fn dual_function_examples() {
        let s = spec_1_4();
        let f = DiagQuadratic::from_spectrum(&s);
        let op = DiagOperator::from_spectrum(&s, 1.0, 2.0, Pairing::Aligned).unwrap();
        let p = CompositeProblem::new(f, GFunction::ZeroIndicator, LinearMap::Diag(op)).unwrap();
        assert_eq!(dual_function(&p).unwrap().weights(), &[1.0, 1.0]);

        let f = DiagQuadratic::from_weights(vec![1.0, 1.0]).unwrap();
        let op = DiagOperator::from_weights(vec![1.0, 1.0], 1.0, 1.0).unwrap();
        let p = CompositeProblem::new(f, GFunction::ZeroIndicator, LinearMap::Diag(op)).unwrap();
        assert_eq!(dual_function(&p).unwrap().weights(), &[1.0, 1.0]);
    }

    #[test]
    fn dual_function_rejects_other_shapes() {
        let f = DiagQuadratic::from_spectrum(&spec_1_4());
        let p = CompositeProblem::new(f.clone(), GFunction::Zero, LinearMap::Identity).unwrap();
        assert!(matches!(dual_function(&p), Err(Error::Unsupported(_))));
        let p = CompositeProblem::new(f, GFunction::ZeroIndicator, LinearMap::Identity).unwrap();
        assert!(matches!(dual_function(&p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn dual_weights_exact() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let sigma = rng.gen_range(0.1..5.0);
            let beta = sigma * rng.gen_range(1.0..20.0);
            let theta = rng.gen_range(0.1..3.0);
            let zeta = theta * rng.gen_range(1.0..5.0);
            let s = SpectrumSpec::new(4, sigma, beta, &[0, 2]).unwrap();
            let op = DiagOperator::from_spectrum(&s, theta, zeta, Pairing::Aligned).unwrap();
            let p = CompositeProblem::new(
                DiagQuadratic::from_spectrum(&s),
                GFunction::ZeroIndicator,
                LinearMap::Diag(op),
            )
            .unwrap();
            let d = dual_function(&p).unwrap();
            assert_eq!(d.weights()[0], theta * theta / sigma);
            assert_eq!(d.weights()[1], zeta * zeta / beta);
        }
    }

    #[test]
    fn indicator_conjugate_is_zero() {
        assert_eq!(conjugate_of_indicator(&Vector::zeros(3)), 0.0);
        assert_eq!(conjugate_of_indicator(&Vector::basis(3, 0)), 0.0);
        let mut rng = StdRng::seed_from_u64(1);
        assert_eq!(
            conjugate_of_indicator(&Vector::random(3, 100.0, &mut rng)),
            0.0
        );
    }
}
