mod common;

use std::f64::consts::{FRAC_PI_2, TAU};

use approx::assert_abs_diff_eq;
use common::*;
use gaussian_work::measurement::{conditional_bipartite, conditional_tripartite};
use gaussian_work::quadrature::AngleQuadrature;
use gaussian_work::states::{
    build_symmetric_mixed_tripartite, classify, PureTripartiteParams, SeparabilityClass, SqueezedThermalParams,
    TwoModeStandardForm,
};
use gaussian_work::work::{
    homodyne_qp_work, renyi2_mutual_info, sts_explicit, wehrl_mutual_info, witness, work_max_symmetric,
    work_one_measurement, work_sep_symmetric, work_sts_closed, work_sts_max, work_sts_separable,
    work_symmetric_closed, work_tripartite, work_two_measurements, WitnessVerdict,
};
use gaussian_work::{CovarianceMatrix, GaussianMeasurement};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn conditioning_preserves_physicality() {
    let mut rng = rng(1);
    for i in 0..10_000 {
        let n = 2 + i % 2;
        let sigma = random_state(n, &mut rng);
        let mb = random_measurement(&mut rng);
        let cond = if n == 2 {
            conditional_bipartite(&sigma, &mb).unwrap()
        } else {
            conditional_tripartite(&sigma, &mb, &random_measurement(&mut rng)).unwrap()
        };
        assert!(cond.is_physical(1e-9), "state {i}: {:?}", cond.symplectic_eigenvalues());
        assert!(cond.local(0).determinant() <= sigma.local(0).determinant() * (1.0 + 1e-12));
    }
}

#[test]
fn tripartite_sequence_matches_one_shot() {
    let mut rng = rng(2);
    for _ in 0..2_000 {
        let sigma = random_state(3, &mut rng);
        let (mb, mc) = (random_measurement(&mut rng), random_measurement(&mut rng));
        let seq = conditional_tripartite(&sigma, &mb, &mc).unwrap();
        let oracle = one_shot_conditional(&sigma, &[mb, mc]);
        let scale = sigma.entries().amax();
        assert!(max_abs_diff(seq.entries(), &oracle) < 1e-10 * scale.max(1.0));
    }
}

#[test]
fn bipartite_matches_one_shot() {
    let mut rng = rng(3);
    for _ in 0..2_000 {
        let sigma = random_state(2, &mut rng);
        let m = random_measurement(&mut rng);
        let cond = conditional_bipartite(&sigma, &m).unwrap();
        let oracle = one_shot_conditional(&sigma, &[m]);
        assert!(max_abs_diff(cond.entries(), &oracle) < 1e-10 * sigma.entries().amax().max(1.0));
    }
}

#[test]
fn renyi_entropy_is_additive() {
    let mut rng = rng(4);
    for _ in 0..500 {
        let x = random_state(1, &mut rng);
        let y = random_state(2, &mut rng);
        let joint = x.direct_sum(&y).unwrap();
        assert_abs_diff_eq!(
            joint.renyi2_entropy().unwrap(),
            x.renyi2_entropy().unwrap() + y.renyi2_entropy().unwrap(),
            epsilon = 1e-10
        );
    }
}

#[test]
fn strength_ordering_and_unimodality() {
    let grid = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 2.0, 5.0, 20.0];
    let mut rng = rng(5);
    for _ in 0..1_000 {
        let (a, c) = random_symmetric(&mut rng);
        let w: Vec<f64> = grid
            .iter()
            .map(|&l| work_symmetric_closed(a, c, l).unwrap().value)
            .collect();
        let (w0, w1) = (w[0], w[10]);
        for (k, &x) in w.iter().enumerate() {
            assert!(w0 <= x + 1e-10 && x <= w1 + 1e-10, "a={a} c={c} lambda={}", grid[k]);
        }
        for k in 0..10 {
            assert!(w[k] <= w[k + 1] + 1e-10);
        }
        for k in 10..13 {
            assert!(w[k + 1] <= w[k] + 1e-10);
        }
    }
}

#[test]
fn work_increases_with_correlation() {
    let mut rng = rng(6);
    for _ in 0..200 {
        let a = rng.random_range(0.6..5.0);
        let b = rng.random_range(0.6..5.0);
        let lambda = [0.0, 0.3, 1.0, 3.0][rng.random_range(0..4)];
        let cmax = SqueezedThermalParams::c_max(a, b);
        let mut prev = -1.0;
        for k in 0..50 {
            let c = cmax * k as f64 / 50.0;
            let w = work_sts_closed(a, b, c, lambda).unwrap().value;
            assert!(w > prev, "a={a} b={b} c={c}");
            prev = w;
        }
    }
}

#[test]
fn witness_is_exact_on_sts() {
    let mut rng = rng(7);
    let mut checked = 0;
    for _ in 0..10_000 {
        let (a, b, c) = random_sts(&mut rng);
        let lambda = [0.0, 0.3, 1.0, 3.0][rng.random_range(0..4)];
        let w = work_sts_closed(a, b, c, lambda).unwrap().value;
        let w_sep = work_sts_separable(a, b, lambda).unwrap().value;
        let ppt = classify(&SqueezedThermalParams { a, b, c }.build().unwrap()).unwrap();
        match witness(w, w_sep) {
            WitnessVerdict::Inconclusive => continue,
            WitnessVerdict::Entangled => assert_eq!(ppt.class, SeparabilityClass::Entangled),
            WitnessVerdict::Separable => assert_eq!(ppt.class, SeparabilityClass::Separable),
        }
        checked += 1;
    }
    assert!(checked > 9_900);
}

#[test]
fn two_measurements_smear_the_work() {
    let mut rng = rng(8);
    for _ in 0..2_000 {
        let sigma = random_state(2, &mut rng);
        let mb = random_measurement(&mut rng);
        let ma = random_measurement(&mut rng);
        let one = work_one_measurement(&sigma, &mb).unwrap().value;
        let two = work_two_measurements(&sigma, &mb, &ma).unwrap().value;
        assert!(two <= one + 1e-10, "{two} > {one}");
    }
}

#[test]
fn double_heterodyne_is_wehrl_mutual_information() {
    let mut rng = rng(9);
    let het = GaussianMeasurement::heterodyne();
    for _ in 0..1_000 {
        let sigma = random_state(2, &mut rng);
        assert_abs_diff_eq!(
            work_two_measurements(&sigma, &het, &het).unwrap().value,
            wehrl_mutual_info(&sigma).unwrap(),
            epsilon = 1e-12
        );
    }
}

#[test]
fn renyi_mutual_information_routes_agree() {
    let mut rng = rng(10);
    for _ in 0..1_000 {
        let sigma = random_state(2, &mut rng);
        assert_abs_diff_eq!(homodyne_qp_work(&sigma).unwrap(), renyi2_mutual_info(&sigma).unwrap(), epsilon = 1e-10);
    }
    let hom = GaussianMeasurement::homodyne;
    for _ in 0..500 {
        let a = rng.random_range(0.5..4.0);
        let b = rng.random_range(0.5..4.0);
        let w = TwoModeStandardForm::correlation_box(a, b);
        let (c, d) = (rng.random_range(-w..w), rng.random_range(-w..w));
        let Ok(sigma) = (TwoModeStandardForm { a, b, c, d }).build() else {
            continue;
        };
        let qq = work_two_measurements(&sigma, &hom(0.0), &hom(0.0)).unwrap().value;
        let pp = work_two_measurements(&sigma, &hom(FRAC_PI_2), &hom(FRAC_PI_2)).unwrap().value;
        assert_abs_diff_eq!(qq + pp, renyi2_mutual_info(&sigma).unwrap(), epsilon = 1e-10);
    }
}

#[test]
fn pure_tripartite_work_ignores_measurements() {
    let mut rng = rng(11);
    let mut tested = 0;
    while tested < 200 {
        let p = PureTripartiteParams {
            a: rng.random_range(0.5..4.0),
            b: rng.random_range(0.5..4.0),
            c: rng.random_range(0.5..4.0),
        };
        let Ok(sigma) = p.build() else { continue };
        tested += 1;
        assert_abs_diff_eq!(sigma.determinant(), 1.0 / 64.0, epsilon = 1e-8);
        for nu in sigma.symplectic_eigenvalues().unwrap() {
            assert_abs_diff_eq!(nu, 0.5, epsilon = 1e-8);
        }
        for _ in 0..5 {
            let w = work_tripartite(&sigma, &random_measurement(&mut rng), &random_measurement(&mut rng))
                .unwrap()
                .value;
            assert_abs_diff_eq!(w, (2.0 * p.a).ln(), epsilon = 1e-9);
        }
    }
}

#[test]
fn swapping_the_measuring_party_on_symmetric_states() {
    let mut rng = rng(12);
    for _ in 0..500 {
        let a = rng.random_range(0.5..5.0);
        let c = rng.random_range(0.0..1.0) * SqueezedThermalParams::c_max(a, a);
        let sigma = TwoModeStandardForm { a, b: a, c, d: -c }.build().unwrap();
        let swapped = sigma.permute_modes(&[1, 0]).unwrap();
        let m = random_measurement(&mut rng);
        assert_abs_diff_eq!(
            work_one_measurement(&sigma, &m).unwrap().value,
            work_one_measurement(&swapped, &m).unwrap().value,
            epsilon = 1e-12
        );
    }
}

#[test]
fn classification_grid_matches_threshold() {
    for i in 0..19 {
        let a = 0.5 + 0.25 * i as f64;
        let cmax = SqueezedThermalParams::c_max(a, a);
        let c_sep = SqueezedThermalParams::c_sep(a, a);
        for k in 0..100 {
            let c = cmax * k as f64 / 99.0;
            let v = classify(&SqueezedThermalParams::symmetric(a, c).build().unwrap()).unwrap();
            let expected = if c > c_sep {
                SeparabilityClass::Entangled
            } else {
                SeparabilityClass::Separable
            };
            assert_eq!(v.class, expected, "a={a} c={c}");
        }
    }
}

#[test]
fn symmetric_mixed_state_is_permutation_invariant() {
    for a in [0.5, 0.8, 1.0, 2.5, 7.0] {
        let sigma = build_symmetric_mixed_tripartite(a).unwrap();
        for order in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert_eq!(sigma.permute_modes(&order).unwrap().entries(), sigma.entries());
        }
    }
}

#[test]
fn heterodyne_max_matches_maximization_over_c() {
    let mut rng = rng(13);
    for _ in 0..300 {
        let a = rng.random_range(0.5..5.0);
        let b = rng.random_range(0.5..5.0);
        let cmax = SqueezedThermalParams::c_max(a, b);
        let best = (0..=400)
            .map(|k| work_sts_closed(a, b, cmax * k as f64 / 400.0, 1.0).unwrap().value)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_abs_diff_eq!(sts_explicit::max_heterodyne(a, b), best, epsilon = 1e-10);
        assert_abs_diff_eq!(sts_explicit::max_homodyne(a, b), work_sts_closed(a, b, cmax, 0.0).unwrap().value, epsilon = 1e-10);
    }
}

#[test]
fn separable_threshold_is_work_at_c_sep() {
    let mut rng = rng(14);
    for _ in 0..500 {
        let a = rng.random_range(0.5..5.0);
        let b = rng.random_range(0.5..5.0);
        let l = rng.random_range(0.0..6.0);
        let c_sep = SqueezedThermalParams::c_sep(a, b);
        assert_abs_diff_eq!(
            work_sts_separable(a, b, l).unwrap().value,
            work_sts_closed(a, b, c_sep, l).unwrap().value,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            work_sts_max(a, b, l).unwrap().value,
            work_sts_closed(a, b, SqueezedThermalParams::c_max(a, b), l).unwrap().value,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            work_sep_symmetric(a, l).unwrap().value,
            work_sts_separable(a, a, l).unwrap().value,
            epsilon = 1e-12
        );
    }
}

fn sym_state() -> impl Strategy<Value = (f64, f64)> {
    (0.5f64..6.0, 0.0f64..1.0).prop_map(|(a, t)| (a, t * SqueezedThermalParams::c_max(a, a)))
}

fn measurement() -> impl Strategy<Value = GaussianMeasurement> {
    (prop_oneof![Just(0.0), Just(1.0), 0.001f64..50.0], 0.0f64..TAU)
        .prop_map(|(l, phi)| GaussianMeasurement::new(l, phi).unwrap())
}

proptest! {
    #[test]
    fn closed_form_matches_generic((a, c) in sym_state(), m in measurement()) {
        let generic = work_one_measurement(&SqueezedThermalParams::symmetric(a, c).build().unwrap(), &m).unwrap().value;
        let closed = work_symmetric_closed(a, c, m.strength()).unwrap().value;
        prop_assert!((generic - closed).abs() < 1e-10, "{} vs {}", generic, closed);
    }

    #[test]
    fn work_is_bounded_by_ln_2a((a, c) in sym_state(), l in 0.0f64..50.0) {
        let w = work_symmetric_closed(a, c, l).unwrap().value;
        prop_assert!(w >= 0.0);
        prop_assert!(w <= work_max_symmetric(a).unwrap().value + 1e-12);
    }

    #[test]
    fn conditioning_never_increases_the_determinant(seed in any::<u64>(), m in measurement()) {
        let mut r = rng(seed);
        let sigma: CovarianceMatrix = random_state(2, &mut r);
        let w = work_one_measurement(&sigma, &m).unwrap().value;
        prop_assert!(w >= -1e-12);
    }

    #[test]
    fn homodyne_is_the_small_strength_limit(seed in any::<u64>(), phi in 0.0f64..TAU) {
        let mut r = rng(seed);
        let sigma = random_state(2, &mut r);
        let exact = conditional_bipartite(&sigma, &GaussianMeasurement::homodyne(phi)).unwrap();
        let near = conditional_bipartite(&sigma, &GaussianMeasurement::new(1e-9, phi).unwrap()).unwrap();
        prop_assert!(max_abs_diff(exact.entries(), near.entries()) < 1e-6 * sigma.entries().amax());
    }

    #[test]
    fn average_of_angle_independent_work_is_pointwise(a in 0.6f64..4.0, b in 0.6f64..4.0, t in 0.0f64..0.99, l in 0.0f64..5.0) {
        let c = t * SqueezedThermalParams::c_max(a, b);
        let sigma = SqueezedThermalParams { a, b, c }.build().unwrap();
        let avg = gaussian_work::work::work_avg_angle(&sigma, l, &AngleQuadrature::default()).unwrap().value;
        prop_assert!((avg - work_sts_closed(a, b, c, l).unwrap().value).abs() < 1e-10);
    }
}
