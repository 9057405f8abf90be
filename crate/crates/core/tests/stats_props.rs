use std::collections::BTreeMap;

use monopath_core::asymptotics::gumbel_cdf;
use monopath_core::rng::RngStream;
use monopath_core::stats::{
    empirical_pmf, geometric_pmf, ks_distance, summarize, tv_distance_discrete, EmpiricalSample,
};
use proptest::prelude::*;

fn normalized(weights: &[u32]) -> BTreeMap<u64, f64> {
    let total: u32 = weights.iter().sum();
    let mut outcomes = Vec::new();
    for (k, &w) in weights.iter().enumerate() {
        outcomes.extend(std::iter::repeat_n(k as u64, w as usize));
    }
    assert_eq!(outcomes.len() as u32, total);
    empirical_pmf(outcomes)
}

proptest! {
    #[test]
    fn ks_invariant_under_increasing_maps(values in prop::collection::vec(-5.0f64..5.0, 1..200)) {
        let base = ks_distance(&EmpiricalSample::new(values.clone()).unwrap(), gumbel_cdf);
        // z -> e^z, with the CDF composed with the inverse map
        let mapped = values.iter().map(|z| z.exp()).collect();
        let moved = ks_distance(&EmpiricalSample::new(mapped).unwrap(), |y: f64| gumbel_cdf(y.ln()));
        prop_assert!((base - moved).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&base));
    }

    #[test]
    fn tv_symmetric_and_bounded(
        a in prop::collection::vec(0u32..20, 1..12),
        b in prop::collection::vec(0u32..20, 1..12),
        cap in 0u64..15,
    ) {
        prop_assume!(a.iter().sum::<u32>() > 0 && b.iter().sum::<u32>() > 0);
        let pa = normalized(&a);
        let pb = normalized(&b);
        let ab = tv_distance_discrete(&pa, |k| pb.get(&k).copied().unwrap_or(0.0), cap).unwrap();
        let ba = tv_distance_discrete(&pb, |k| pa.get(&k).copied().unwrap_or(0.0), cap).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab));
    }

    #[test]
    fn summarize_permutation_invariant(
        values in prop::collection::vec(-1e3f64..1e3, 2..100),
        seed in any::<u64>(),
    ) {
        let mut shuffled = values.clone();
        let mut s = RngStream::new(seed, 0);
        for i in (1..shuffled.len()).rev() {
            let j = (s.next_u64() % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        let x = summarize(&values).unwrap();
        let y = summarize(&shuffled).unwrap();
        prop_assert!((x.mean - y.mean).abs() <= 1e-12 * (1.0 + x.mean.abs()));
        prop_assert!((x.variance - y.variance).abs() <= 1e-10 * (1.0 + x.variance));
    }
}

#[test]
fn summarize_matches_two_pass() {
    let mut s = RngStream::new(77, 0);
    // large offset, small spread: the regime where naive sums lose digits
    let values: Vec<f64> = (0..1_000_000).map(|_| 1e6 + s.uniform()).collect();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let got = summarize(&values).unwrap();
    assert!((got.mean / mean - 1.0).abs() < 1e-12);
    assert!(
        (got.variance / var - 1.0).abs() < 1e-12,
        "{} vs {var}",
        got.variance
    );
}

#[test]
fn geometric_sample_tv_is_small() {
    let mut s = RngStream::new(78, 0);
    let outcomes = (0..100_000).map(|_| monopath_core::rng::sample_geometric(0.5, &mut s).unwrap());
    let pmf = empirical_pmf(outcomes);
    let tv = tv_distance_discrete(&pmf, |k| geometric_pmf(k, 0.5), 30).unwrap();
    assert!(tv < 0.01, "{tv}");
}
