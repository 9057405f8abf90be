//! Monte Carlo kernels on the gap representation of the reachable set.
//!
//! Once `i` vertices are reachable, each later vertex is reachable with
//! probability `q_i = 1 - (1-p)^i`, independently, until the next one is
//! found. The gap to the `(i+1)`-th reachable vertex is therefore
//! Geometric(`q_i`), and successive gaps are independent. Every kernel here
//! walks those gaps instead of individual vertices.
//!
//! Vertex 1 sits at position 1 and the `m`-th reachable vertex at
//! `1 + X_1 + ... + X_{m-1}`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::math::{budget_count, exp, ln, ln_1p, log_complement, one_minus_pow};
use crate::rng::{geometric_from_uniform_log, CoupledPair, RngStream};
use crate::{Error, Result};

/// Independent gaps `X_1, X_2, ...` between consecutive reachable vertices.
///
/// Each gap is the inversion `inf{k >= 1 : U >= (1-q_i)^k}` of one uniform.
/// The miss probability `(1-p)^i` is tracked by multiplication so that
/// uniforms clearly above it (gap 1) skip the logarithm; draws within the
/// tracking error of the boundary fall back to the exact inversion.
pub struct GapProcess<'a> {
    log_c: f64,
    one_minus_p: f64,
    // (1-p)^index, refreshed from exp every REFRESH steps
    miss: f64,
    index: u64,
    stream: &'a mut RngStream,
}

const REFRESH: u64 = 256;
// far above REFRESH rounding steps of 2^-53 each
const MISS_SLACK: f64 = 1e-12;

impl<'a> GapProcess<'a> {
    pub fn new(p: f64, stream: &'a mut RngStream) -> Result<Self> {
        check_p(p)?;
        Ok(GapProcess {
            log_c: log_complement(p),
            one_minus_p: 1.0 - p,
            miss: 1.0,
            index: 0,
            stream,
        })
    }

    /// Number of gaps drawn so far.
    pub fn index(&self) -> u64 {
        self.index
    }
}

impl Iterator for GapProcess<'_> {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        self.index += 1;
        // log(1 - q_i) = i log(1 - p)
        let log_miss = self.index as f64 * self.log_c;
        self.miss = if self.index.is_multiple_of(REFRESH) {
            exp(log_miss)
        } else {
            self.miss * self.one_minus_p
        };
        let u = self.stream.uniform();
        if u >= self.miss * (1.0 + MISS_SLACK) {
            return Some(1);
        }
        Some(geometric_from_uniform_log(u, log_miss))
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!(
            "edge probability must lie in (0, 1), got {p}"
        )))
    }
}

/// `floor(a / p)`, rejecting budgets that buy no gap at all.
fn gap_budget(a: f64, p: f64) -> Result<u64> {
    check_p(p)?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(alloc::format!(
            "exploration budget must be positive and finite, got {a}"
        )));
    }
    match budget_count(a, p) {
        0 => Err(Error::invalid(alloc::format!(
            "exploration budget a = {a} is below p = {p}"
        ))),
        m => Ok(m),
    }
}

/// Whether vertex `n` is reachable from vertex 1 in one sampled graph.
pub fn simulate_reach(n: u64, p: f64, stream: &mut RngStream) -> Result<bool> {
    let gaps = GapProcess::new(p, stream)?;
    if n <= 1 {
        return Ok(n == 1);
    }
    let mut position = 1u64;
    for gap in gaps {
        position = position.saturating_add(gap);
        if position >= n {
            return Ok(position == n);
        }
    }
    unreachable!("gap process is infinite")
}

/// One realization of the exploration process up to budget `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct GapTrial {
    pub p: f64,
    pub a: f64,
    /// `X_1, ..., X_m` with `m = floor(a / p)`.
    pub gaps: Vec<u64>,
    /// `positions[0] = 1` and `positions[j] = 1 + X_1 + ... + X_j`.
    pub positions: Vec<u64>,
    /// `p (X_1 + ... + X_m) - log(1 / p)`.
    pub exploration_stat: f64,
    pub path_count: Option<BigUint>,
    pub rest_term: Option<f64>,
}

/// Draws the `floor(a / p)` gaps of the exploration process and records them.
pub fn exploration_trial(a: f64, p: f64, stream: &mut RngStream) -> Result<GapTrial> {
    let m = gap_budget(a, p)?;
    let gaps: Vec<u64> = GapProcess::new(p, stream)?.take(m as usize).collect();
    let mut positions = Vec::with_capacity(gaps.len() + 1);
    positions.push(1u64);
    let mut at = 1u64;
    for &g in &gaps {
        at = at.saturating_add(g);
        positions.push(at);
    }
    let total = at - 1;
    Ok(GapTrial {
        p,
        a,
        gaps,
        positions,
        exploration_stat: p * total as f64 + ln(p),
        path_count: None,
        rest_term: None,
    })
}

/// `p (X_1 + ... + X_{floor(a/p)}) - log(1 / p)`; tends in law to
/// `G + log(e^a - 1)` for a standard Gumbel `G` as `p -> 0`.
pub fn exploration_statistic(a: f64, p: f64, stream: &mut RngStream) -> Result<f64> {
    let m = gap_budget(a, p)?;
    let total: u64 = GapProcess::new(p, stream)?.take(m as usize).sum();
    Ok(p * total as f64 + ln(p))
}

/// Exploration statistics at two budgets `a1 <= a2` on one gap sequence.
pub fn joint_exploration(a1: f64, a2: f64, p: f64, stream: &mut RngStream) -> Result<(f64, f64)> {
    let (m1, m2) = joint_budgets(a1, a2, p)?;
    let mut head = 0u64;
    let mut tail = 0u64;
    for (i, gap) in GapProcess::new(p, stream)?.take(m2 as usize).enumerate() {
        if (i as u64) < m1 {
            head += gap;
        } else {
            tail += gap;
        }
    }
    let first = p * head as f64 + ln(p);
    Ok((first, first + p * tail as f64))
}

fn joint_budgets(a1: f64, a2: f64, p: f64) -> Result<(u64, u64)> {
    if a1 > a2 {
        return Err(Error::invalid(alloc::format!(
            "exploration budgets must satisfy a1 <= a2, got {a1} > {a2}"
        )));
    }
    Ok((gap_budget(a1, p)?, gap_budget(a2, p)?))
}

/// `statistic(a2) - statistic(a1) = p (X_{m1+1} + ... + X_{m2})` on a shared
/// gap sequence; tends in probability to `log((e^{a2} - 1) / (e^{a1} - 1))`.
pub fn joint_exploration_increment(
    a1: f64,
    a2: f64,
    p: f64,
    stream: &mut RngStream,
) -> Result<f64> {
    let (m1, m2) = joint_budgets(a1, a2, p)?;
    let tail: u64 = GapProcess::new(p, stream)?
        .take(m2 as usize)
        .skip(m1 as usize)
        .sum();
    Ok(p * tail as f64)
}

/// The exploration statistic split along the geometric/exponential
/// coupling: `exploration_stat = harmonic_stat + rest_term`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoupledExploration {
    /// `p sum X_i - log(1/p)`.
    pub exploration_stat: f64,
    /// `sum Y_i / i - log(1/p)`.
    pub harmonic_stat: f64,
    /// `sum p (1/q_i - 1/(i p)) Y_i + sum (p / q_i)(q_i X_i - Y_i)`.
    pub rest_term: f64,
}

/// Draws coupled pairs `(X_i, Y_i)` from one uniform each, with
/// `q_i = 1 - (1-p)^i`, and evaluates all three statistics.
pub fn coupled_exploration(a: f64, p: f64, stream: &mut RngStream) -> Result<CoupledExploration> {
    let m = gap_budget(a, p)?;
    let log_c = log_complement(p);
    let mut gaps = 0u64;
    let mut harmonic_sum = 0.0;
    let mut rest = 0.0;
    for i in 1..=m {
        let fi = i as f64;
        let q = one_minus_pow(log_c, fi);
        let pair = CoupledPair::from_uniform_log(stream.uniform(), q, fi * log_c);
        let x = pair.x_geometric as f64;
        let y = pair.y_exponential;
        gaps += pair.x_geometric;
        harmonic_sum += y / fi;
        rest += p * (1.0 / q - 1.0 / (fi * p)) * y + (p / q) * (q * x - y);
    }
    Ok(CoupledExploration {
        exploration_stat: p * gaps as f64 + ln(p),
        harmonic_stat: harmonic_sum + ln(p),
        rest_term: rest,
    })
}

/// One draw of the rest term `R_p(a)`.
pub fn sample_rest_term(a: f64, p: f64, stream: &mut RngStream) -> Result<f64> {
    coupled_exploration(a, p, stream).map(|c| c.rest_term)
}

/// `sum_{i <= floor(a/p)} Y_i / i - log(1/p)` with independent Exp(1)
/// variables; tends in law to `G + log a`.
pub fn harmonic_exponential_statistic(a: f64, p: f64, stream: &mut RngStream) -> Result<f64> {
    let m = gap_budget(a, p)?;
    let mut sum = 0.0;
    for i in 1..=m {
        sum += -ln(stream.uniform()) / i as f64;
    }
    Ok(sum + ln(p))
}

/// Number of increasing paths from vertex 1 to the `floor(a/p)`-th reachable
/// vertex. At least 1 by construction.
pub fn sample_path_count(a: f64, p: f64, stream: &mut RngStream) -> Result<BigUint> {
    path_count_walk(a, p, stream, None)
}

/// [`sample_path_count`] with the gap sequence recorded.
pub fn path_count_trial(a: f64, p: f64, stream: &mut RngStream) -> Result<GapTrial> {
    let mut gaps = Vec::new();
    let count = path_count_walk(a, p, stream, Some(&mut gaps))?;
    let mut positions = Vec::with_capacity(gaps.len() + 1);
    positions.push(1u64);
    let mut at = 1u64;
    for &g in &gaps {
        at = at.saturating_add(g);
        positions.push(at);
    }
    Ok(GapTrial {
        p,
        a,
        exploration_stat: p * (at - 1) as f64 + ln(p),
        gaps,
        positions,
        path_count: Some(count),
        rest_term: None,
    })
}

/// Builds the reachable vertices one at a time. With `r` vertices reachable,
/// the next reachable vertex is `X_r ~ Geometric(q_r)` positions further on
/// and its in-neighbours among the reachable set are i.i.d. Bernoulli(`p`)
/// conditioned on at least one success: the first one is drawn from the
/// truncated geometric law, the rest by geometric skips.
fn path_count_walk(
    a: f64,
    p: f64,
    stream: &mut RngStream,
    mut record: Option<&mut Vec<u64>>,
) -> Result<BigUint> {
    let m = gap_budget(a, p)? as usize;
    let log_c = log_complement(p);
    let mut counts: Vec<BigUint> = Vec::with_capacity(m);
    counts.push(BigUint::one());
    while counts.len() < m {
        let r = counts.len();
        let log_miss = r as f64 * log_c;
        let gap = geometric_from_uniform_log(stream.uniform(), log_miss);
        if let Some(gaps) = record.as_deref_mut() {
            gaps.push(gap);
        }

        let q = one_minus_pow(log_c, r as f64);
        // P(first >= j) = ((1-p)^j - (1-p)^r) / q_r
        let v = stream.uniform();
        let first = (ln_1p(-v * q) / log_c) as usize;
        let mut j = first.min(r - 1);
        let mut count = BigUint::zero();
        while j < r {
            count += &counts[j];
            let skip = geometric_from_uniform_log(stream.uniform(), log_c);
            j = j.saturating_add(usize::try_from(skip).unwrap_or(usize::MAX));
        }
        debug_assert!(!count.is_zero());
        counts.push(count);
    }
    Ok(counts.pop().expect("vertex 1 is always present"))
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateWithError {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub master_seed: u64,
}

impl EstimateWithError {
    /// Summarizes per-trial values given in trial order.
    pub fn from_values(values: &[f64], master_seed: u64) -> Result<Self> {
        let summary = crate::stats::summarize(values)?;
        Ok(EstimateWithError {
            mean: summary.mean,
            std_error: summary.std_error,
            trials: values.len() as u64,
            master_seed,
        })
    }
}

/// Runs `kernel` on trials `0..trials`, trial `i` on stream
/// `(master_seed, i)`, and returns the outputs in trial order.
pub fn run_trials<T, F>(master_seed: u64, trials: u64, kernel: F) -> Result<Vec<T>>
where
    F: Fn(&mut RngStream) -> Result<T>,
{
    (0..trials)
        .map(|i| kernel(&mut RngStream::new(master_seed, i)))
        .collect()
}

/// Mean and standard error of `kernel` over `trials >= 2` independent
/// streams.
pub fn estimate<F>(master_seed: u64, trials: u64, kernel: F) -> Result<EstimateWithError>
where
    F: Fn(&mut RngStream) -> Result<f64>,
{
    if trials < 2 {
        return Err(Error::invalid(alloc::format!(
            "an estimate needs at least 2 trials, got {trials}"
        )));
    }
    let values = run_trials(master_seed, trials, kernel)?;
    EstimateWithError::from_values(&values, master_seed)
}
