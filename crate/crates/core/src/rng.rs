//! Reproducible random streams and the variate samplers built on them.
//!
//! Every trial of every experiment owns one [`RngStream`], keyed by the
//! experiment's master seed and the trial index. Streams are ChaCha8 keystreams
//! selected with the cipher's 64-bit stream id, so the output of trial `i`
//! never depends on which thread ran it or on how many trials came before.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::math::{ceil_nonneg, ln, log_complement};
use crate::{Error, Result};

/// 2^-53
const UNIT: f64 = 1.0 / 9_007_199_254_740_992.0;

/// Single-owner random stream for one trial.
#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    stream_index: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_index);
        RngStream {
            master_seed,
            stream_index,
            inner,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform on `(0, 1]`, in steps of 2^-53. Never returns zero, so
    /// `ln(uniform())` is always finite.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) + 1) as f64 * UNIT
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

fn check_success_probability(q: f64) -> Result<()> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!(
            "geometric success probability must lie in (0, 1], got {q}"
        )))
    }
}

/// Inversion of the geometric law on `{1, 2, ...}` given `log(1 - q)`:
/// the least `k >= 1` with `u >= (1 - q)^k`.
///
/// `log_c = -inf` encodes `q = 1`.
#[inline]
pub fn geometric_from_uniform_log(u: f64, log_c: f64) -> u64 {
    // u >= (1-q)^k  <=>  k >= ln(u) / ln(1-q)
    let ratio = ln(u) / log_c;
    if ratio.is_nan() || ratio <= 1.0 {
        // also catches -0.0 from q = 1 and u = 1
        1
    } else if ratio >= 9.0e18 {
        u64::MAX
    } else {
        ceil_nonneg(ratio) as u64
    }
}

/// Geometric variate with success probability `q` obtained from a given
/// uniform `u` in `(0, 1]`.
pub fn geometric_from_uniform(u: f64, q: f64) -> Result<u64> {
    check_success_probability(q)?;
    Ok(geometric_from_uniform_log(u, log_complement(q)))
}

/// Geometric variate on `{1, 2, ...}` with mean `1 / q`.
pub fn sample_geometric(q: f64, stream: &mut RngStream) -> Result<u64> {
    check_success_probability(q)?;
    let log_c = log_complement(q);
    Ok(geometric_from_uniform_log(stream.uniform(), log_c))
}

/// Exp(1) variate, `-ln U`.
#[inline]
pub fn sample_exponential(stream: &mut RngStream) -> f64 {
    -ln(stream.uniform())
}

/// Standard Gumbel variate, `-ln(-ln U)`.
pub fn sample_gumbel(stream: &mut RngStream) -> f64 {
    // U = 1 would give +inf; redraw. Happens with probability 2^-53.
    loop {
        let u = stream.uniform();
        if u < 1.0 {
            return -ln(-ln(u));
        }
    }
}

/// A geometric gap and an exponential variable built from one shared
/// uniform, so that `q * x` stays close to `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoupledPair {
    pub x_geometric: u64,
    pub y_exponential: f64,
    pub q: f64,
}

impl CoupledPair {
    /// Builds the pair from `u` in `(0, 1]` and `log_c = log(1 - q)`.
    #[inline]
    pub fn from_uniform_log(u: f64, q: f64, log_c: f64) -> Self {
        let pair = CoupledPair {
            x_geometric: geometric_from_uniform_log(u, log_c),
            y_exponential: -ln(u),
            q,
        };
        debug_assert!(pair.satisfies_bound(), "coupling bound violated: {pair:?}");
        pair
    }

    pub fn from_uniform(u: f64, q: f64) -> Result<Self> {
        check_open_probability(q)?;
        Ok(Self::from_uniform_log(u, q, log_complement(q)))
    }

    /// Right-hand side of the coupling bound,
    /// `|q / log(1/(1-q)) - 1| * y + q`.
    pub fn bound(&self) -> f64 {
        let rate = -log_complement(self.q);
        (self.q / rate - 1.0).abs() * self.y_exponential + self.q
    }

    /// `|q x - y|`.
    pub fn deviation(&self) -> f64 {
        (self.q * self.x_geometric as f64 - self.y_exponential).abs()
    }

    /// Whether `|q x - y|` respects the coupling bound, up to a few ulps of
    /// floating-point rounding.
    pub fn satisfies_bound(&self) -> bool {
        let slack = 1e-12 * (self.y_exponential + 1.0);
        self.deviation() <= self.bound() + slack
    }
}

fn check_open_probability(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!(
            "coupling success probability must lie in (0, 1), got {q}"
        )))
    }
}

/// Draws a [`CoupledPair`] with success probability `q` in `(0, 1)`.
pub fn sample_coupled_pair(q: f64, stream: &mut RngStream) -> Result<CoupledPair> {
    check_open_probability(q)?;
    Ok(CoupledPair::from_uniform_log(
        stream.uniform(),
        q,
        log_complement(q),
    ))
}
