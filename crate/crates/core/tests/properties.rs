use std::f64::consts::PI;
use std::sync::Arc;

use fracprop::evolution::{apply_propagator, lq_norm, EvolutionProblem, GridFunction};
use fracprop::frac_calculus::EquationKind;
use fracprop::gamma::rgamma;
use fracprop::harness::power_law_envelope;
use fracprop::lorentz::{weak_norm_exact, DiagonalPropagatorModel};
use fracprop::mittag_leffler::{ml, MLParams};
use fracprop::spectral::SpectralProfile;
use num_complex::Complex64;
use proptest::prelude::*;

fn model(eigs: &[f64], scale: f64, omega: f64) -> DiagonalPropagatorModel {
    let bound = 4.0 * scale.max(1.0);
    DiagonalPropagatorModel::new(
        SpectralProfile::discrete(eigs.to_vec()).unwrap(),
        Arc::new(move |x: f64| Complex64::new(scale * (omega * x).cos() / (1.0 + x), 0.0)),
        Arc::new(move |x: f64| bound / (1.0 + x)),
    )
    .unwrap()
}

/// `sup_k k^(1/r) m_k` over the decreasing magnitudes, computed directly.
fn brute_weak_norm(eigs: &[f64], scale: f64, omega: f64, r: f64) -> f64 {
    let mut m: Vec<f64> = eigs
        .iter()
        .map(|&x| (scale * (omega * x).cos() / (1.0 + x)).abs())
        .collect();
    m.sort_by(|a, b| b.total_cmp(a));
    m.iter()
        .enumerate()
        .map(|(i, v)| (i as f64 + 1.0).powf(1.0 / r) * v)
        .fold(0.0, f64::max)
}

fn eigenvalues() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..50.0, 1..30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weak_norm_matches_rearrangement(eigs in eigenvalues(), omega in 0.0f64..3.0, r in 1.0f64..8.0) {
        let got = weak_norm_exact(&model(&eigs, 1.0, omega), r).unwrap();
        let want = brute_weak_norm(&eigs, 1.0, omega, r);
        prop_assert!((got - want).abs() <= 1e-12 * want.max(1e-300));
    }

    #[test]
    fn weak_norm_is_homogeneous(eigs in eigenvalues(), c in 0.01f64..100.0, r in 1.0f64..8.0) {
        let base = weak_norm_exact(&model(&eigs, 1.0, 0.7), r).unwrap();
        let scaled = weak_norm_exact(&model(&eigs, c, 0.7), r).unwrap();
        prop_assert!((scaled - c * base).abs() <= 1e-12 * c * base);
    }

    #[test]
    fn weak_norm_grows_with_the_spectrum(eigs in eigenvalues(), extra in eigenvalues(), r in 1.0f64..8.0) {
        let mut more = eigs.clone();
        more.extend(&extra);
        let small = weak_norm_exact(&model(&eigs, 1.0, 0.3), r).unwrap();
        let large = weak_norm_exact(&model(&more, 1.0, 0.3), r).unwrap();
        prop_assert!(large >= small);
    }

    #[test]
    fn recurrence_holds(alpha in 0.1f64..2.0, delta in 0.5f64..3.0, rad in 0.0f64..10.0, arg in -PI..PI) {
        let z = Complex64::from_polar(rad, arg);
        let (Ok(lhs), Ok(tail)) = (
            ml(MLParams::new(alpha, delta).unwrap(), z),
            ml(MLParams::new(alpha, delta + alpha).unwrap(), z),
        ) else {
            return Ok(());
        };
        let rhs = rgamma(delta) + z * tail;
        prop_assert!((lhs - rhs).norm() <= 1e-8 * lhs.norm().max(rgamma(delta).abs()));
    }

    #[test]
    fn exponential_identity(re in -30.0f64..10.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let got = ml(MLParams::new(1.0, 1.0).unwrap(), z).unwrap();
        prop_assert!((got - z.exp()).norm() <= 1e-9 * (1.0 + z.exp().norm()));
    }

    #[test]
    fn envelope_decreases_in_time(beta in 0.2f64..1.9, lambda in 0.3f64..3.0, t in 0.05f64..100.0) {
        let r = lambda + 1.0;
        let now = power_law_envelope(beta, lambda, r, t).unwrap().value;
        let later = power_law_envelope(beta, lambda, r, 1.5 * t).unwrap().value;
        prop_assert!(later < now);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn heat_flow_is_real_and_contracts_l2(
        beta in 0.2f64..=1.0,
        modes in prop::collection::vec((-4i32..=4, -4i32..=4, -1.0f64..1.0), 1..6),
    ) {
        let w0 = GridFunction::from_fn(2, 16, 2.0 * PI, |x, y| {
            let v = modes.iter().map(|&(k, l, a)| a * (k as f64 * x + l as f64 * y).cos()).sum();
            Complex64::new(v, 0.0)
        })
        .unwrap();
        let problem = EvolutionProblem::new(EquationKind::Heat, beta, false).unwrap();
        let mut prev = lq_norm(&w0, 2.0).unwrap();
        for t in [0.1, 0.5, 1.0, 4.0, 16.0] {
            let w = apply_propagator(&problem, t, &w0, None).unwrap();
            prop_assert!(w.imaginary_fraction() < 1e-12);
            let norm = lq_norm(&w, 2.0).unwrap();
            prop_assert!(norm <= prev * (1.0 + 1e-12));
            prev = norm;
        }
    }
}
