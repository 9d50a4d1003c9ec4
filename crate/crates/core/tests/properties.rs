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

use drsplit::functions::{DiagOperator, DiagQuadratic, GFunction, Pairing, SpectrumSpec};
use drsplit::hilbert::{BasisMap, Vector};
use drsplit::prox::{prox_diag, refl_prox_diag, refl_prox_g};
use drsplit::rates;
use drsplit::splitting::{fit_rate, run_dr, RunOptions, SplitParams};
use drsplit::worstcase::{default_idx_sigma, make_primal_instance};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn psi_is_decreasing(x in -0.99f64..100.0, dx in 1e-6f64..100.0) {
        prop_assert!(rates::psi(x).unwrap() > rates::psi(x + dx).unwrap());
    }

    #[test]
    fn rate_is_below_one_exactly_on_feasible_alpha(
        sigma in 0.1f64..5.0,
        ratio in 1.0f64..100.0,
        lg in -3.0f64..3.0,
        t in 0.01f64..1.99,
    ) {
        let beta = sigma * ratio;
        let gamma = 10f64.powf(lg);
        let ub = rates::alpha_upper_bound(gamma, sigma, beta).unwrap();
        let alpha = t * ub;
        prop_assume!((alpha - ub).abs() > 1e-9 * ub);
        let rate = rates::theoretical_rate(alpha, gamma, sigma, beta).unwrap();
        prop_assert_eq!(rate < 1.0, alpha < ub);
    }

    #[test]
    fn optimum_minimizes_rate(sigma in 0.1f64..5.0, ratio in 1.0f64..100.0, lg in -3.0f64..3.0, alpha in 0.05f64..1.9) {
        let beta = sigma * ratio;
        let opt = rates::optimal_params(sigma, beta).unwrap();
        let rate = rates::theoretical_rate(alpha, 10f64.powf(lg), sigma, beta).unwrap();
        prop_assert!(opt.rate <= rate + 1e-15);
    }

    #[test]
    fn reflected_prox_is_nonexpansive(x in coords(6), y in coords(6), lg in -3.0f64..3.0) {
        let f = DiagQuadratic::from_weights(vec![0.5, 1.0, 2.0, 4.0, 8.0, 16.0]).unwrap();
        let (x, y) = (Vector::new(x).unwrap(), Vector::new(y).unwrap());
        let gamma = 10f64.powf(lg);
        let d = x.distance(&y).unwrap();
        let rf = refl_prox_diag(&f, gamma, &x).unwrap().distance(&refl_prox_diag(&f, gamma, &y).unwrap()).unwrap();
        let rg = refl_prox_g(GFunction::ZeroIndicator, gamma, &x).unwrap()
            .distance(&refl_prox_g(GFunction::ZeroIndicator, gamma, &y).unwrap()).unwrap();
        prop_assert!(rf <= d * (1.0 + 1e-12));
        prop_assert!(rg <= d * (1.0 + 1e-12));
    }

    #[test]
    fn prox_satisfies_optimality(y in coords(6), lg in -3.0f64..3.0) {
        let f = DiagQuadratic::from_weights(vec![0.5, 1.0, 2.0, 4.0, 8.0, 16.0]).unwrap();
        let y = Vector::new(y).unwrap();
        let gamma = 10f64.powf(lg);
        let x = prox_diag(&f, gamma, &y).unwrap();
        let residual = x.sub(&y).unwrap().add(&f.grad(&x).unwrap().scale(gamma)).unwrap();
        prop_assert!(residual.norm() <= 1e-12 * (1.0 + y.norm()));
    }

    #[test]
    fn operator_norm_bounds(x in coords(8), theta in 0.1f64..2.0, gap in 0.01f64..5.0, crossed in any::<bool>()) {
        let spec = SpectrumSpec::new(8, 1.0, 10.0, &default_idx_sigma(8)).unwrap();
        let pairing = if crossed { Pairing::Crossed } else { Pairing::Aligned };
        let a = DiagOperator::from_spectrum(&spec, theta, theta + gap, pairing).unwrap();
        let x = Vector::new(x).unwrap();
        let ax = a.apply(&x).unwrap().norm();
        prop_assert!(ax >= theta * x.norm() * (1.0 - 1e-12));
        prop_assert!(ax <= (theta + gap) * x.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn change_of_basis_preserves_inner_products(x in coords(5), y in coords(5), seed in any::<u64>()) {
        let q = BasisMap::random(5, &mut StdRng::seed_from_u64(seed));
        let (x, y) = (Vector::new(x).unwrap(), Vector::new(y).unwrap());
        let before = x.inner(&y).unwrap();
        let after = q.apply(&x).unwrap().inner(&q.apply(&y).unwrap()).unwrap();
        prop_assert!((before - after).abs() <= 1e-12 * (1.0 + x.norm() * y.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn empirical_rate_never_beats_bound(x in coords(8), lg in -2.0f64..2.0, t in 0.05f64..0.95) {
        let p = make_primal_instance(1.0, 10.0, 8, &default_idx_sigma(8)).unwrap();
        let gamma = 10f64.powf(lg) / 10f64.sqrt();
        let alpha = t * rates::alpha_upper_bound(gamma, 1.0, 10.0).unwrap();
        let z0 = Vector::new(x).unwrap();
        prop_assume!(z0.norm() > 1e-3);
        let trace = run_dr(&p, SplitParams::new(alpha, gamma).unwrap(), &z0, &RunOptions::with_iters(200)).unwrap();
        if let Ok(rate) = fit_rate(&trace) {
            prop_assert!(rate <= rates::theoretical_rate(alpha, gamma, 1.0, 10.0).unwrap() + 1e-9);
        }
    }
}
