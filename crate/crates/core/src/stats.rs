//! Summary statistics and goodness-of-fit distances.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::math::sqrt;
use crate::{Error, Result};

/// Two-sided 1% asymptotic critical value of the Kolmogorov–Smirnov
/// statistic, scaled by `sqrt(n)`.
pub const KS_CRITICAL_1PCT: f64 = 1.63;

/// KS acceptance threshold `1.63 / sqrt(n)`.
pub fn ks_threshold(n: usize) -> f64 {
    KS_CRITICAL_1PCT / sqrt(n as f64)
}

/// Sorted sample.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalSample {
    sorted_values: Vec<f64>,
}

impl EmpiricalSample {
    /// Sorts `values`. NaNs are rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("empirical sample is empty"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::invalid("empirical sample contains NaN"));
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(EmpiricalSample {
            sorted_values: values,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted_values
    }

    pub fn count(&self) -> usize {
        self.sorted_values.len()
    }
}

/// Kolmogorov–Smirnov distance `sup |F_n - F|` between the sample's
/// empirical CDF and `cdf`.
pub fn ks_distance<F: Fn(f64) -> f64>(sample: &EmpiricalSample, cdf: F) -> f64 {
    let n = sample.count() as f64;
    sample
        .values()
        .iter()
        .enumerate()
        .fold(0.0f64, |acc, (i, &x)| {
            let f = cdf(x);
            let above = (i as f64 + 1.0) / n - f;
            let below = f - i as f64 / n;
            acc.max(above.abs()).max(below.abs())
        })
}

/// Mean, unbiased variance and standard error of the mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
}

/// Single-pass accumulator (Welford's update with a Kahan-compensated mean).
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    count: usize,
    mean: f64,
    mean_comp: f64,
    m2: f64,
    m2_comp: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        let step = delta / self.count as f64;
        kahan_add(&mut self.mean, &mut self.mean_comp, step);
        let term = delta * (x - self.mean);
        kahan_add(&mut self.m2, &mut self.m2_comp, term);
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn finish(&self) -> Result<Summary> {
        if self.count < 2 {
            return Err(Error::invalid(alloc::format!(
                "summary needs at least 2 values, got {}",
                self.count
            )));
        }
        let n = self.count as f64;
        let variance = (self.m2 / (n - 1.0)).max(0.0);
        Ok(Summary {
            count: self.count,
            mean: self.mean,
            variance,
            std_error: sqrt(variance / n),
        })
    }
}

#[inline]
fn kahan_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

impl Extend<f64> for Accumulator {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.push(x);
        }
    }
}

/// Mean, unbiased variance and SE of `values` (at least two of them).
pub fn summarize(values: &[f64]) -> Result<Summary> {
    let mut acc = Accumulator::new();
    acc.extend(values.iter().copied());
    acc.finish()
}

/// Relative frequencies of integer outcomes.
pub fn empirical_pmf<I: IntoIterator<Item = u64>>(outcomes: I) -> BTreeMap<u64, f64> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut total = 0u64;
    for k in outcomes {
        *counts.entry(k).or_default() += 1;
        total += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / total as f64))
        .collect()
}

/// Geometric probability mass `q (1-q)^(k-1)` on `{1, 2, ...}`.
pub fn geometric_pmf(k: u64, q: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    q * libm::pow(1.0 - q, (k - 1) as f64)
}

/// Total-variation distance between an empirical PMF and a reference PMF,
/// compared pointwise on `k <= support_cap` with the mass above the cap
/// lumped into one tail cell.
pub fn tv_distance_discrete<R: Fn(u64) -> f64>(
    empirical: &BTreeMap<u64, f64>,
    reference: R,
    support_cap: u64,
) -> Result<f64> {
    let total: f64 = empirical.values().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Unnormalized(total));
    }
    let mut head = 0.0;
    let mut emp_head = 0.0;
    let mut ref_head = 0.0;
    for k in 0..=support_cap {
        let e = empirical.get(&k).copied().unwrap_or(0.0);
        let r = reference(k);
        head += (e - r).abs();
        emp_head += e;
        ref_head += r;
    }
    let emp_tail = (1.0 - emp_head).max(0.0);
    let ref_tail = (1.0 - ref_head).max(0.0);
    let tv = 0.5 * head + 0.5 * (emp_tail - ref_tail).abs();
    Ok(tv.clamp(0.0, 1.0))
}
