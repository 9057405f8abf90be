//! Exact finite-`n` computations.
//!
//! Let `N_k` be the number of vertices in `1..=k` reachable from vertex 1.
//! Vertex `k` is reachable iff it has an edge from one of the `N_{k-1}`
//! reachable vertices before it, so `N` is a Markov chain that moves up by
//! one with probability `1 - (1-p)^{N_{k-1}}` and
//! `P(1 -> n) = E[1 - (1-p)^{N_{n-1}}]`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::math::{exp, ln, ln_1p, log_complement, one_minus_pow};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Largest `n` accepted by [`brute_force_reach_prob`].
pub const BRUTE_FORCE_MAX_N: u32 = 7;

/// Above this size the exact DP defaults to a nonzero truncation threshold.
pub const FULL_DP_MAX_N: u64 = 20_000;

/// Truncation threshold used when the caller has no preference.
pub fn default_truncation_eps(n: u64) -> f64 {
    if n <= FULL_DP_MAX_N {
        0.0
    } else {
        1e-14
    }
}

fn check_edge_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!(
            "edge probability must lie in (0, 1), got {p}"
        )))
    }
}

/// Law of `N_k` at a fixed position `k`, stored on a contiguous window of
/// states `first_state..first_state + probs.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateDistribution {
    position: u64,
    first_state: u64,
    probs: Vec<f64>,
    truncation_mass: f64,
}

impl StateDistribution {
    /// `N_1 = 1` with certainty.
    pub fn initial() -> Self {
        StateDistribution {
            position: 1,
            first_state: 1,
            probs: vec![1.0],
            truncation_mass: 0.0,
        }
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    /// `P(N_k = m)`; zero outside the stored window.
    pub fn probability(&self, m: u64) -> f64 {
        m.checked_sub(self.first_state)
            .and_then(|i| self.probs.get(i as usize))
            .copied()
            .unwrap_or(0.0)
    }

    /// `(m, P(N_k = m))` over the stored window.
    pub fn states(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let first = self.first_state;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &pr)| (first + i as u64, pr))
    }

    /// Probability mass discarded by truncation so far.
    pub fn truncation_mass(&self) -> f64 {
        self.truncation_mass
    }

    /// Total stored mass; equals `1 - truncation_mass` up to rounding.
    pub fn stored_mass(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Transition tables for one edge probability.
struct Chain {
    // (1-p)^m and 1-(1-p)^m, indexed by m
    stay: Vec<f64>,
    advance: Vec<f64>,
    log_c: f64,
    eps: f64,
}

impl Chain {
    fn new(p: f64, eps: f64) -> Self {
        Chain {
            stay: Vec::new(),
            advance: Vec::new(),
            log_c: log_complement(p),
            eps,
        }
    }

    fn ensure(&mut self, max_state: u64) {
        let max_state = max_state as usize;
        while self.stay.len() <= max_state {
            let m = self.stay.len() as f64;
            self.stay.push(exp(m * self.log_c));
            self.advance.push(one_minus_pow(self.log_c, m));
        }
    }

    /// Moves `dist` from position `k` to `k + 1`.
    fn step(&mut self, dist: &mut StateDistribution) {
        let first = dist.first_state as usize;
        let top = first + dist.probs.len() - 1;
        self.ensure(top as u64 + 1);
        let probs = &mut dist.probs;
        probs.push(0.0);
        for i in (1..probs.len()).rev() {
            let m = first + i;
            probs[i] = probs[i] * self.stay[m] + probs[i - 1] * self.advance[m - 1];
        }
        probs[0] *= self.stay[first];
        dist.position += 1;

        if self.eps > 0.0 {
            let threshold = self.eps / dist.position as f64;
            while probs.len() > 1 && *probs.last().unwrap() < threshold {
                dist.truncation_mass += probs.pop().unwrap();
            }
            let drop = probs
                .iter()
                .take(probs.len() - 1)
                .take_while(|&&pr| pr < threshold)
                .count();
            if drop > 0 {
                dist.truncation_mass += probs[..drop].iter().sum::<f64>();
                probs.drain(..drop);
                dist.first_state += drop as u64;
            }
        } else if *probs.last().unwrap() == 0.0 && probs.len() > 1 {
            // underflowed front of the chain; nothing to lose
            probs.pop();
        }
    }

    /// `E[1 - (1-p)^{N}]` under `dist`.
    fn advance_expectation(&mut self, dist: &StateDistribution) -> f64 {
        let top = dist.first_state + dist.probs.len() as u64 - 1;
        self.ensure(top);
        dist.states()
            .map(|(m, pr)| pr * self.advance[m as usize])
            .sum()
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!(
            "truncation threshold must be a finite nonnegative number, got {eps}"
        )))
    }
}

/// Law of `N_k`, with states below `truncation_eps / j` at step `j` cut
/// from either edge of the support.
pub fn state_distribution(k: u64, p: f64, truncation_eps: f64) -> Result<StateDistribution> {
    if k == 0 {
        return Err(Error::invalid("position must be at least 1"));
    }
    check_edge_probability(p)?;
    check_eps(truncation_eps)?;
    let mut chain = Chain::new(p, truncation_eps);
    let mut dist = StateDistribution::initial();
    while dist.position < k {
        chain.step(&mut dist);
    }
    Ok(dist)
}

/// Result of the exact DP. The true probability lies within
/// `truncation_mass` of `probability`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReachProbability {
    pub probability: f64,
    pub truncation_mass: f64,
}

/// `P_p(1 -> n)` by propagating the law of `N_k` up to `k = n - 1`.
pub fn reach_prob_dp(n: u64, p: f64, truncation_eps: f64) -> Result<ReachProbability> {
    if n == 0 {
        return Err(Error::invalid("vertex count must be at least 1"));
    }
    check_edge_probability(p)?;
    check_eps(truncation_eps)?;
    if n == 1 {
        return Ok(ReachProbability {
            probability: 1.0,
            truncation_mass: 0.0,
        });
    }
    let mut chain = Chain::new(p, truncation_eps);
    let mut dist = StateDistribution::initial();
    while dist.position < n - 1 {
        chain.step(&mut dist);
    }
    Ok(ReachProbability {
        probability: chain.advance_expectation(&dist),
        truncation_mass: dist.truncation_mass,
    })
}

/// `P_p(1 -> n)` by summing over every graph on `n <= 7` vertices.
pub fn brute_force_reach_prob(n: u32, p: f64) -> Result<f64> {
    if n == 0 || n > BRUTE_FORCE_MAX_N {
        return Err(Error::invalid(alloc::format!(
            "brute-force enumeration supports 1 <= n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(alloc::format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let n = n as usize;
    // in_bits[j]: (edge bit, source) for every pair (i, j), i < j
    let mut in_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut bit = 0;
    for (j, incoming) in in_edges.iter_mut().enumerate().skip(1) {
        for i in 0..j {
            incoming.push((bit, i));
            bit += 1;
        }
    }
    let pairs = bit;
    let mut reachable_by_size = vec![0u64; pairs + 1];
    for mask in 0u64..(1u64 << pairs) {
        let mut reach = 1u32;
        for (j, incoming) in in_edges.iter().enumerate().skip(1) {
            if incoming
                .iter()
                .any(|&(b, i)| mask >> b & 1 == 1 && reach >> i & 1 == 1)
            {
                reach |= 1 << j;
            }
        }
        if reach >> (n - 1) & 1 == 1 {
            reachable_by_size[mask.count_ones() as usize] += 1;
        }
    }
    Ok(reachable_by_size
        .iter()
        .enumerate()
        .map(|(e, &count)| {
            count as f64 * libm::pow(p, e as f64) * libm::pow(1.0 - p, (pairs - e) as f64)
        })
        .sum())
}

/// Graph on vertices `1..=n` whose edges all point from smaller to larger
/// labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    n: u32,
    // sorted by (target, source)
    edges: Vec<(u32, u32)>,
}

impl DirectedGraph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut sorted = Vec::new();
        for (i, j) in edges {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::invalid(alloc::format!(
                    "edge ({i}, {j}) is not a forward edge on 1..={n}"
                )));
            }
            sorted.push((j, i));
        }
        sorted.sort_unstable();
        sorted.dedup();
        Ok(DirectedGraph {
            n,
            edges: sorted.into_iter().map(|(j, i)| (i, j)).collect(),
        })
    }

    /// Every forward edge on `1..=n`.
    pub fn complete(n: u32) -> Self {
        let edges = (2..=n).flat_map(|j| (1..j).map(move |i| (i, j))).collect();
        DirectedGraph { n, edges }
    }

    /// A Barak–Erdős graph: each forward edge present with probability `p`.
    pub fn sample(n: u32, p: f64, stream: &mut RngStream) -> Result<Self> {
        check_edge_probability(p)?;
        let mut edges = Vec::new();
        for j in 2..=n {
            for i in 1..j {
                if stream.uniform() <= p {
                    edges.push((i, j));
                }
            }
        }
        Ok(DirectedGraph { n, edges })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    /// Edges ordered by target, then source.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// Number of increasing paths from `source` to `target`. Zero when
/// `source > target` or either endpoint is outside the graph.
pub fn count_monotone_paths(g: &DirectedGraph, source: u32, target: u32) -> BigUint {
    if source == 0 || target > g.n || source > target {
        return BigUint::zero();
    }
    let base = source as usize;
    let mut counts = vec![BigUint::zero(); (target - source) as usize + 1];
    counts[0] = BigUint::one();
    for &(i, j) in &g.edges {
        if j > target {
            break;
        }
        if i < source {
            continue;
        }
        let (lo, hi) = counts.split_at_mut(j as usize - base);
        let from = &lo[i as usize - base];
        if !from.is_zero() {
            hi[0] += from;
        }
    }
    counts.pop().unwrap_or_default()
}

/// Expected number of increasing paths from 1 to `n`, `p (1+p)^{n-2}`.
pub fn expected_path_count(n: u64, p: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(alloc::format!(
            "expected path count needs n >= 2, got {n}"
        )));
    }
    check_edge_probability(p)?;
    Ok(exp(ln(p) + (n - 2) as f64 * ln_1p(p)))
}
