//! Elementary functions for `no_std` builds, plus the two stable primitives
//! the models lean on: `log(1 - p)` and `1 - (1 - p)^m`.

/// Euler–Mascheroni constant, the mean of the standard Gumbel law.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn exp_m1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn tanh(x: f64) -> f64 {
    libm::tanh(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

/// `ceil(x)` for `0 <= x < 2^63`, without a libm call.
#[inline]
pub fn ceil_nonneg(x: f64) -> f64 {
    let t = x as u64 as f64;
    if t < x {
        t + 1.0
    } else {
        t
    }
}

/// `log(1 - p)`, accurate for tiny `p`.
#[inline]
pub fn log_complement(p: f64) -> f64 {
    ln_1p(-p)
}

/// `1 - (1 - p)^m` given `log_c = log(1 - p)`, without cancellation when
/// `m * p` is small.
#[inline]
pub fn one_minus_pow(log_c: f64, m: f64) -> f64 {
    -exp_m1(m * log_c)
}

/// `log(e^a - 1)`, accurate for small `a`.
#[inline]
pub fn ln_exp_m1(a: f64) -> f64 {
    if a > 36.0 {
        // e^{-a} below half an ulp of 1
        a
    } else {
        ln(exp_m1(a))
    }
}

/// `floor(a / p)` as an integer count, the number of gaps an exploration
/// budget `a` buys at edge probability `p`.
#[inline]
pub fn budget_count(a: f64, p: f64) -> u64 {
    let m = floor(a / p);
    if m <= 0.0 {
        0
    } else {
        m as u64
    }
}
