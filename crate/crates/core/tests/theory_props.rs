use bridgegap::generators::{gen_model, BridgeSpec, ModelParams};
use bridgegap::metrics::{count_entry_paths, DEFAULT_EXPANSION_BUDGET};
use bridgegap::rng::derive_seed;
use bridgegap::theory::{
    expected_entry_paths, social_distance_law, stirling_ratio, stirling_ratio_approx, TheoryInputs,
};
use bridgegap::NodeId;
use proptest::prelude::*;

#[test]
fn ratio_rises_toward_one() {
    for l in [2u64, 5, 10] {
        let ns = [100u64, 1_000, 10_000, 100_000, 1_000_000, 10_000_000];
        let r: Vec<f64> = ns.iter().map(|&n| stirling_ratio(n, l).unwrap()).collect();
        assert!(r.windows(2).all(|w| w[0] < w[1]), "{r:?}");
        assert!(r.iter().all(|&x| x <= 1.0));
    }
    let direct = stirling_ratio_approx(1_000_000, 10).unwrap();
    assert!((direct.ratio() - stirling_ratio(1_000_000, 10).unwrap()).abs() < 1e-9);
}

#[test]
fn huge_inputs_stay_finite() {
    assert!(stirling_ratio(1_000_000_000, 1000).unwrap().is_finite());
    let r = social_distance_law(&TheoryInputs::with_count(1_000_000_000, 1_000_000, 1e-8, 10.0)).unwrap();
    assert!(r.predicted_dstar.is_finite());
}

/// Monte Carlo over 10^5 draws at n1 = 5, n2 = 3, p1 = 0.5, b = 0.2: the mean
/// of X_3 from a fixed source must sit within 3 standard errors of 1.8.
#[test]
fn expectation_at_small_scale() {
    let inputs = TheoryInputs::with_prob(5, 3, 0.5, 0.2);
    let exact = expected_entry_paths(&inputs, 3).unwrap().exact;
    assert!((exact - 1.8).abs() < 1e-12);
    let draws = 100_000u64;
    let (mut sum, mut sum_sq) = (0f64, 0f64);
    for s in 0..draws {
        let params = ModelParams {
            n1: 5,
            p1: 0.5,
            n2: 3,
            p2: 0.0,
            bridges: BridgeSpec::Prob(0.2),
            seed: derive_seed(77, &[s]),
        };
        let g = gen_model(&params).unwrap();
        let x = count_entry_paths(&g, NodeId(0), 3, DEFAULT_EXPANSION_BUDGET).unwrap().count(3) as f64;
        sum += x;
        sum_sq += x * x;
    }
    let n = draws as f64;
    let mean = sum / n;
    let se = ((sum_sq / n - mean * mean) * n / (n - 1.0) / n).sqrt();
    assert!((mean - exact).abs() <= 3.0 * se, "{mean} vs {exact} (se {se})");
}

proptest! {
    #[test]
    fn exact_never_exceeds_approx(n1 in 2u64..5000, n2 in 1u64..500, p1 in 0.0f64..=1.0, b in 0.0f64..=1.0, l_frac in 0.0f64..1.0) {
        let l = 1 + ((n1 - 1) as f64 * l_frac) as u64;
        let e = expected_entry_paths(&TheoryInputs::with_prob(n1, n2, p1, b), l).unwrap();
        prop_assert!(e.exact <= e.approx * (1.0 + 1e-12));
    }

    #[test]
    fn law_decreasing_in_bridges_and_density(n1 in 100u64..100_000, n2 in 10u64..1000, deg in 1.5f64..50.0, x in 1.0f64..50.0) {
        let p1 = deg / n1 as f64;
        let at = |p1: f64, x: f64| social_distance_law(&TheoryInputs::with_count(n1, n2, p1, x)).unwrap().predicted_dstar;
        prop_assert!(at(p1, x * 1.5) < at(p1, x));
        prop_assert!(at(p1 * 1.5, x) < at(p1, x));
    }

    #[test]
    fn expected_paths_grow_geometrically(n1 in 1000u64..100_000, n2 in 10u64..1000, deg in 2.0f64..30.0, nb in 0.001f64..0.5) {
        // Consistency: E[X_l] at ceil(d0)+1 equals E[X_l] at floor(d0) times
        // (n1 p1)^(difference) under the approximation, and dominates it.
        let inputs = TheoryInputs::with_prob(n1, n2, deg / n1 as f64, nb / n2 as f64);
        let r = social_distance_law(&inputs).unwrap();
        let lo = (r.d0.floor() as u64).max(1);
        let hi = r.d0.ceil() as u64 + 1;
        prop_assume!(hi <= n1);
        let a = expected_entry_paths(&inputs, lo).unwrap();
        let b = expected_entry_paths(&inputs, hi).unwrap();
        let scaled = a.approx * deg.powi((hi - lo) as i32);
        prop_assert!((b.approx - scaled).abs() <= 1e-9 * scaled);
        prop_assert!(b.exact >= a.exact);
        prop_assert!(b.approx >= 1.0 - 1e-9);
    }
}
