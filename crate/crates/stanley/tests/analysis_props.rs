//! Property coverage for the analysis operations, each checked against an
//! independent route: brute-force pair enumeration for H, a linear scan
//! for the counting-function floor, and exact synthetic data for the
//! exponent fit.

use proptest::prelude::*;

use stanley::analysis::{
    counting_function, exponent_fit, h_count, theorem_floor, CountingProfile, GeometricGrid,
};
use stanley::{Engine, SeedSet, SequenceState};

fn generated(raw: &[i64], bound: u64) -> SequenceState {
    let mut state = SequenceState::new(SeedSet::new(raw, 3).unwrap(), Engine::Sieve);
    state.extend_to_bound(bound).unwrap();
    state
}

/// H by full pair enumeration, sharing nothing with the library path.
fn h_brute(terms: &[u64], n: u64) -> u64 {
    let mut count = 0;
    for (i, &s1) in terms.iter().enumerate() {
        for &s2 in &terms[i + 1..] {
            if s2 < n && 2 * s2 >= n && s2 - s1 == n - s2 {
                count += 1;
            }
        }
    }
    count
}

proptest! {
    #[test]
    fn h_count_equals_pair_enumeration(
        raw in proptest::collection::vec(0i64..60, 1..4),
        n in 0u64..600,
    ) {
        prop_assume!(SeedSet::new(&raw, 3).is_ok());
        let state = generated(&raw, 600);
        prop_assert_eq!(
            h_count(&state.view(), n).unwrap(),
            h_brute(state.terms(), n)
        );
    }

    #[test]
    fn counting_function_steps_by_one_at_terms(x in 1u64..2000) {
        let state = generated(&[0, 4], 2000);
        let view = state.view();
        let here = counting_function(&view, x).unwrap();
        let before = counting_function(&view, x - 1).unwrap();
        let is_term = state.terms().binary_search(&x).is_ok();
        prop_assert_eq!(here - before, u64::from(is_term));
    }

    #[test]
    fn theorem_floor_minimality_and_monotonicity(
        x in 0u64..2_000_000,
        max_seed in 0u64..50,
    ) {
        prop_assume!(x >= max_seed);
        let s = theorem_floor(x, max_seed).unwrap();
        // s satisfies the bound and is the least such value.
        prop_assert!(s as u128 * (s as u128 + 1) / 2 + max_seed as u128 >= x as u128);
        if s > 0 {
            let p = s - 1;
            prop_assert!((p as u128 * (p as u128 + 1) / 2 + max_seed as u128) < x as u128);
        }
        // Nondecreasing in x, nonincreasing in max_seed.
        if x > max_seed {
            prop_assert!(theorem_floor(x - 1, max_seed).unwrap() <= s);
        }
        if max_seed > 0 {
            prop_assert!(theorem_floor(x, max_seed - 1).unwrap() >= s);
        }
    }

    /// On exact power-law data (x, count) = (r^j, s^j) the fitted slope is
    /// ln s / ln r to floating-point accuracy.
    #[test]
    fn exponent_fit_recovers_power_laws(r in 2u64..6, s in 1u64..6, points in 5u32..12) {
        prop_assume!(s <= r); // keeps counts within u64 and nondecreasing
        let samples: Vec<(u64, u64)> =
            (1..=points).map(|j| (r.pow(j), s.pow(j))).collect();
        let profile = CountingProfile::new(samples, 0).unwrap();
        let fit = exponent_fit(&profile).unwrap();
        let expected = (s as f64).ln() / (r as f64).ln();
        prop_assert!((fit.slope() - expected).abs() < 1e-6,
            "slope {} vs {}", fit.slope(), expected);
    }
}

#[test]
fn theorem_floor_large_value_cross_check() {
    // Least s with s(s+1) >= 2 * (10^6 - 4), scanned linearly near the
    // square root.
    let fast = theorem_floor(1_000_000, 4).unwrap();
    let approx = (2.0 * (1_000_000f64 - 4.0)).sqrt() as u64;
    let slow = (approx.saturating_sub(3)..)
        .find(|&s| s as u128 * (s as u128 + 1) / 2 + 4 >= 1_000_000)
        .unwrap();
    assert_eq!(fast, slow);
    assert_eq!(fast, 1414);
}

#[test]
fn record_gaps_structure_at_scale() {
    let state = generated(&[0, 4], 10_000);
    let stats = stanley::analysis::gap_stats(&state.view()).unwrap();
    let records = stats.record_gaps();
    assert!(!records.is_empty());
    // Record positions and values both strictly increase, and the last
    // record is the overall maximum.
    assert!(records.windows(2).all(|w| w[0].index < w[1].index));
    assert!(records.windows(2).all(|w| w[0].gap < w[1].gap));
    assert_eq!(records.last().unwrap().gap, stats.max_gap().gap);
}

#[test]
fn counting_profile_respects_completeness() {
    let state = generated(&[0, 1], 100);
    let err = CountingProfile::sample(&state.view(), &GeometricGrid::default(), 1000);
    assert!(err.is_err());
    let ok = CountingProfile::sample(&state.view(), &GeometricGrid::default(), 100).unwrap();
    assert_eq!(
        ok.samples().iter().map(|&(x, _)| x).collect::<Vec<_>>(),
        vec![1, 2, 4, 8, 16, 32, 64]
    );
}
