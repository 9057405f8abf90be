mod common;

use monopath_core::asymptotics::{exploration_drift, gumbel_cdf, rest_term_limit};
use monopath_core::exact::{count_monotone_paths, reach_prob_dp, DirectedGraph};
use monopath_core::gap::{
    coupled_exploration, estimate, exploration_statistic, harmonic_exponential_statistic,
    joint_exploration_increment, run_trials, sample_path_count, sample_rest_term, simulate_reach,
};
use monopath_core::math::{log_complement, EULER_GAMMA};
use monopath_core::rng::RngStream;
use monopath_core::stats::{ks_distance, ks_threshold, summarize, EmpiricalSample};
use num_traits::ToPrimitive;

/// Vertex-by-vertex reference: vertex k is reachable with probability
/// 1 - (1-p)^{N_{k-1}}, one Bernoulli draw per vertex.
fn naive_chain_reach(n: u64, p: f64, stream: &mut RngStream) -> bool {
    let log_c = log_complement(p);
    let mut reachable = 1u64;
    for _ in 2..n {
        if stream.uniform() <= -(reachable as f64 * log_c).exp_m1() {
            reachable += 1;
        }
    }
    stream.uniform() <= -(reachable as f64 * log_c).exp_m1()
}

/// Edge-level reference: sample the whole graph and search it.
fn graph_reach(n: u32, p: f64, stream: &mut RngStream) -> bool {
    let g = DirectedGraph::sample(n, p, stream).unwrap();
    let mut reach = vec![false; n as usize + 1];
    reach[1] = true;
    for &(i, j) in g.edges() {
        if reach[i as usize] {
            reach[j as usize] = true;
        }
    }
    reach[n as usize]
}

fn bool_kernel(v: bool) -> f64 {
    if v {
        1.0
    } else {
        0.0
    }
}

#[test]
fn gap_chain_and_dp_agree() {
    for (n, p) in [(100u64, 0.05), (500, 0.012), (2000, 0.004)] {
        let exact = reach_prob_dp(n, p, 0.0).unwrap().probability;
        let gap = estimate(7, 100_000, |s| simulate_reach(n, p, s).map(bool_kernel)).unwrap();
        let chain = estimate(8, 100_000, |s| Ok(bool_kernel(naive_chain_reach(n, p, s)))).unwrap();
        common::assert_within_se("gap vs dp", gap.mean, gap.std_error, exact, 3.0, 0.0);
        common::assert_within_se("chain vs dp", chain.mean, chain.std_error, exact, 3.0, 0.0);
        let joint_se = gap.std_error.hypot(chain.std_error);
        common::assert_within_se("gap vs chain", gap.mean, joint_se, chain.mean, 3.0, 0.0);
    }
}

#[test]
fn gap_matches_sampled_graphs() {
    let (n, p) = (100u32, 0.05);
    let graphs = estimate(9, 20_000, |s| Ok(bool_kernel(graph_reach(n, p, s)))).unwrap();
    let exact = reach_prob_dp(n as u64, p, 0.0).unwrap().probability;
    common::assert_within_se(
        "graphs vs dp",
        graphs.mean,
        graphs.std_error,
        exact,
        3.0,
        0.0,
    );
}

#[test]
fn reach_example_n200() {
    let exact = reach_prob_dp(200, 0.05, 0.0).unwrap().probability;
    let e = estimate(1, 100_000, |s| {
        simulate_reach(200, 0.05, s).map(bool_kernel)
    })
    .unwrap();
    common::assert_within_se("n=200", e.mean, e.std_error, exact, 3.0, 0.0);
}

fn exploration_sample(a: f64, p: f64, seed: u64, trials: u64) -> Vec<f64> {
    run_trials(seed, trials, |s| exploration_statistic(a, p, s)).unwrap()
}

#[test]
fn exploration_mean_near_limit() {
    let v = exploration_sample(1.0, 1e-3, 21, 10_000);
    let sum = summarize(&v).unwrap();
    let target = common::gumbel_mean_quadrature() + exploration_drift(1.0);
    assert!((target - 1.1184).abs() < 2e-4);
    common::assert_within_se(
        "exploration mean",
        sum.mean,
        sum.std_error,
        target,
        3.0,
        0.0,
    );
}

#[test]
fn exploration_is_shifted_gumbel() {
    for a in [0.5, 1.0, 2.0] {
        for p in [1e-3, 5e-4] {
            let drift = exploration_drift(a);
            let v: Vec<f64> = exploration_sample(a, p, 22, 10_000)
                .into_iter()
                .map(|z| z - drift)
                .collect();
            let d = ks_distance(&EmpiricalSample::new(v).unwrap(), gumbel_cdf);
            assert!(d < ks_threshold(10_000), "a={a} p={p}: KS {d}");
            assert!(d < 0.02);
        }
    }
}

#[test]
fn joint_increment_concentrates() {
    let target = ((2f64.exp() - 1.0) / (1f64.exp() - 1.0)).ln();
    assert!((target - 1.3133).abs() < 1e-4);
    let fine = run_trials(31, 1000, |s| joint_exploration_increment(1.0, 2.0, 1e-4, s)).unwrap();
    let coarse = run_trials(31, 1000, |s| joint_exploration_increment(1.0, 2.0, 1e-2, s)).unwrap();
    let fine = summarize(&fine).unwrap();
    let coarse = summarize(&coarse).unwrap();
    common::assert_within_se("increment", fine.mean, fine.std_error, target, 3.0, 0.0);
    assert!(fine.variance < coarse.variance);
}

#[test]
fn rest_term_mean_and_vanishing_variance() {
    let mut variances = Vec::new();
    for p in [1e-2, 1e-3, 1e-4] {
        let v = run_trials(41, 10_000, |s| sample_rest_term(1.0, p, s)).unwrap();
        let sum = summarize(&v).unwrap();
        if p == 1e-3 {
            common::assert_within_se(
                "rest mean",
                sum.mean,
                sum.std_error,
                rest_term_limit(1.0),
                3.0,
                0.05,
            );
        }
        variances.push(sum.variance);
    }
    assert!(variances.windows(2).all(|w| w[1] < w[0]), "{variances:?}");
}

#[test]
fn coupled_statistic_has_exploration_law() {
    let v = run_trials(42, 10_000, |s| {
        coupled_exploration(1.0, 1e-3, s).map(|c| c.exploration_stat)
    })
    .unwrap();
    let drift = exploration_drift(1.0);
    let shifted = v.into_iter().map(|z| z - drift).collect();
    let d = ks_distance(&EmpiricalSample::new(shifted).unwrap(), gumbel_cdf);
    assert!(d < ks_threshold(10_000), "KS {d}");
}

#[test]
fn harmonic_statistic_mean_and_law() {
    let v = run_trials(51, 10_000, |s| harmonic_exponential_statistic(1.0, 1e-3, s)).unwrap();
    let sum = summarize(&v).unwrap();
    let target = common::harmonic(1000) - 1000f64.ln();
    assert!((target - 0.5777).abs() < 1e-4);
    common::assert_within_se("harmonic mean", sum.mean, sum.std_error, target, 3.0, 0.0);

    // G + log a with a = 1
    let v = run_trials(52, 10_000, |s| harmonic_exponential_statistic(1.0, 1e-4, s)).unwrap();
    let d = ks_distance(&EmpiricalSample::new(v).unwrap(), gumbel_cdf);
    assert!(d < 0.02, "KS {d}");
    assert!((common::harmonic(1) - 1.0).abs() < 1e-15 && EULER_GAMMA > 0.0);
}

/// Path count to the m-th reachable vertex on a fully sampled graph.
fn graph_path_count(m: usize, n: u32, p: f64, stream: &mut RngStream) -> Option<f64> {
    let g = DirectedGraph::sample(n, p, stream).unwrap();
    let mut reach = vec![false; n as usize + 1];
    reach[1] = true;
    for &(i, j) in g.edges() {
        if reach[i as usize] {
            reach[j as usize] = true;
        }
    }
    let target = (1..=n).filter(|&v| reach[v as usize]).nth(m - 1)?;
    count_monotone_paths(&g, 1, target).to_f64()
}

#[test]
fn path_count_matches_graph_oracle() {
    let (a, p) = (0.65, 0.1);
    let m = 6;
    let walk = run_trials(61, 20_000, |s| {
        sample_path_count(a, p, s).map(|c| c.to_f64().unwrap())
    })
    .unwrap();
    let graphs: Vec<f64> = (0..20_000u64)
        .map(|i| {
            graph_path_count(m, 120, p, &mut RngStream::new(62, i))
                .expect("enough reachable vertices")
        })
        .collect();
    let w = summarize(&walk).unwrap();
    let g = summarize(&graphs).unwrap();
    common::assert_within_se(
        "path count walk vs graphs",
        w.mean,
        w.std_error.hypot(g.std_error),
        g.mean,
        3.0,
        0.0,
    );
    assert!(walk.iter().all(|&c| c >= 1.0));

    // P(count = 1) too
    let ones = |v: &[f64]| v.iter().filter(|&&c| c == 1.0).count() as f64 / v.len() as f64;
    let (pw, pg) = (ones(&walk), ones(&graphs));
    let se = (pw * (1.0 - pw) / 20_000.0 + pg * (1.0 - pg) / 20_000.0).sqrt();
    common::assert_within_se("P(count = 1)", pw, se, pg, 3.0, 0.0);
}
