//! Property-based checks: invariances, bounds, hull containment, and
//! optimality by comparison against random measurements.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use infodist::entropy::{entropy_reduction_single, entropy_upper_bound, EntropyMethod};
use infodist::measures::{
    additive_measures_single, average_measures_tol, estimation_fidelity_single,
    evaluate_pair, operation_fidelity_single, physical_reversibility_single, MeasurePair,
};
use infodist::optimal::{solve_lambda_for_info, type1_point, InfoTarget};
use infodist::oracle::{oracle_f, oracle_g, oracle_i, oracle_r, sample_haar, OperatorMatrix};
use infodist::region::{averaged_region, trace_curve};
use infodist::verify::random_measurement;
use infodist::Spectrum;

fn spectrum_strategy(d: usize) -> impl Strategy<Value = Spectrum<f64>> {
    prop::collection::vec(0.05f64..1.0, d)
        .prop_filter("separated squared values", |v| {
            let mut s = v.clone();
            s.sort_by(|a, b| b.partial_cmp(a).unwrap());
            s.windows(2).all(|w| w[0] * w[0] - w[1] * w[1] > 1e-3 * s[0] * s[0])
        })
        .prop_map(|v| Spectrum::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn additive_measures_are_scale_invariant(
        d in 2usize..=6,
        scale in 0.1f64..10.0,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<f64> = (0..d).map(|_| 0.05 + 0.95 * rng.gen::<f64>()).collect();
        let s = Spectrum::new(v).unwrap();
        let t = s.scaled(scale).unwrap();
        let (ig_a, df_a, dr_a) = additive_measures_single(&s);
        let (ig_b, df_b, dr_b) = additive_measures_single(&t);
        prop_assert!((ig_a - ig_b).abs() < 1e-12);
        prop_assert!((df_a - df_b).abs() < 1e-12);
        prop_assert!((dr_a - dr_b).abs() < 1e-12);
    }
}

macro_rules! bounds_prop {
    ($name:ident, $d:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn $name(s in spectrum_strategy($d)) {
                let d = $d as f64;
                let g = estimation_fidelity_single(&s);
                let f = operation_fidelity_single(&s);
                let r = physical_reversibility_single(&s);
                prop_assert!(g >= 1.0 / d - 1e-12 && g <= 2.0 / (d + 1.0) + 1e-12);
                prop_assert!(f > 0.0 && f <= 1.0 + 1e-12);
                prop_assert!((0.0..=1.0 + 1e-12).contains(&r));
                let (ig, df, dr) = additive_measures_single(&s);
                prop_assert!(ig >= -1e-12 && ig <= (2.0 * d / (d + 1.0)).log2() + 1e-12);
                prop_assert!(df >= -1e-12 && df <= ((d + 1.0) / 2.0).log2() + 1e-12);
                prop_assert!(dr >= -1e-12);
                let i = entropy_reduction_single(&s, EntropyMethod::Quadrature, 1e-8)
                    .unwrap()
                    .value;
                prop_assert!(i >= -1e-9 && i <= entropy_upper_bound($d) + 1e-9);
            }
        }
    };
}

bounds_prop!(bounds_hold_d2, 2);
bounds_prop!(bounds_hold_d3, 3);
bounds_prop!(bounds_hold_d4, 4);
bounds_prop!(bounds_hold_d5, 5);
bounds_prop!(bounds_hold_d6, 6);

#[test]
fn family_curve_is_monotone_in_lambda() {
    for pair in MeasurePair::ADDITIVE {
        let c = trace_curve(4, 1, 3, pair, 101).unwrap();
        for w in c.samples.windows(2) {
            assert!(
                w[1].info <= w[0].info + 1e-12,
                "info not decreasing in lambda for {pair:?}"
            );
            assert!(
                w[1].dist <= w[0].dist + 1e-10 || !w[0].dist.is_finite(),
                "dist not decreasing in lambda for {pair:?}"
            );
        }
    }
}

#[test]
fn random_single_outcome_points_stay_in_hull() {
    for pair in [MeasurePair::IG_DF, MeasurePair::IG_DR] {
        let hull = averaged_region(3, pair, 400, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 10_000 {
            let v: Vec<f64> = (0..3).map(|_| 0.02 + 0.98 * rng.gen::<f64>()).collect();
            let s = match Spectrum::new(v) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let pt = evaluate_pair(&s, pair, 1e-8);
            assert!(
                hull.contains(pt, 1e-3),
                "point {pt:?} outside {pair:?} hull"
            );
            checked += 1;
        }
    }
}

#[test]
fn averaged_measurement_points_stay_in_hull() {
    for pair in [MeasurePair::IG_DF, MeasurePair::I_DF, MeasurePair::IG_DR] {
        let hull = averaged_region(3, pair, 300, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6);
            let m = random_measurement(3, n, rng.gen()).unwrap();
            let pt = average_measures_tol(&m, pair, 1e-8).unwrap();
            assert!(
                hull.contains((pt.info, pt.dist), 1e-3),
                "averaged point ({}, {}) outside {pair:?} hull",
                pt.info,
                pt.dist
            );
        }
    }
}

#[test]
fn oracle_is_invariant_under_basis_rotation() {
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    let d = 3;
    let e = sample_haar(d, 30_000, 31).unwrap();
    let s = Spectrum::new(vec![1.0, 0.6, 0.25]).unwrap();
    let diag = OperatorMatrix::from_spectrum(&s);

    // Haar-random unitary from the QR of a complex Gaussian matrix
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let a = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    let v = a.qr().q();
    let rotated = OperatorMatrix::new(&v * diag.matrix() * v.adjoint()).unwrap();

    for (a, b) in [
        (oracle_g(&e, &diag).unwrap(), oracle_g(&e, &rotated).unwrap()),
        (oracle_f(&e, &diag).unwrap(), oracle_f(&e, &rotated).unwrap()),
        (oracle_r(&e, &diag).unwrap(), oracle_r(&e, &rotated).unwrap()),
        (oracle_i(&e, &diag).unwrap(), oracle_i(&e, &rotated).unwrap()),
    ] {
        let se = (a.std_err.powi(2) + b.std_err.powi(2)).sqrt().max(1e-12);
        assert!(
            (a.value - b.value).abs() <= 5.0 * se,
            "rotated estimate {} vs {} (combined SE {se})",
            b.value,
            a.value
        );
    }
}

#[test]
fn no_random_measurement_beats_the_optimal_construction() {
    // optimality by comparison: at matched estimation information, no
    // random measurement disturbs less (in D_F) than the d-outcome optimal
    let d = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let n = rng.gen_range(1..=2 * d);
        let m = random_measurement(d, n, rng.gen()).unwrap();
        let pt = average_measures_tol(&m, MeasurePair::IG_DF, 1e-8).unwrap();
        let lam = solve_lambda_for_info(d, InfoTarget::Ig, pt.info).unwrap();
        let best = type1_point(d, lam, MeasurePair::IG_DF).unwrap();
        assert!(
            pt.dist >= best.dist - 1e-8,
            "random measurement at I_G = {} has D_F = {} below optimal {}",
            pt.info,
            pt.dist,
            best.dist
        );
    }
}
