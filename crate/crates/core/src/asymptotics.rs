//! Closed-form limit laws and the calibration maps between `x`, `b` and `p`.
//!
//! Inside the critical window `p = (log n - log log n + x) / n` the
//! probability that `n` is reachable from 1 tends to
//!
//! ```text
//! 1 - e^{e^{-x} - x} E1(e^{-x})  =  1 - f(e^x),    f(b) = (1/b) e^{1/b} E1(1/b)
//! ```
//!
//! which also equals `1/2 + E[tanh((x - G) / 2)] / 2` for a standard Gumbel `G`.

use alloc::vec::Vec;

use crate::math::{exp, exp_m1, ln, ln_1p, EULER_GAMMA};
use crate::{Error, Result};

/// Below this argument `E1` is evaluated by its power series, above it by a
/// continued fraction.
const E1_SERIES_LIMIT: f64 = 1.0;

/// `E1(z)` underflows past this point and is reported as zero.
const E1_UNDERFLOW: f64 = 700.0;

const E1_MAX_TERMS: usize = 100_000;

fn check_positive(name: &str, z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!(
            "{name} must be positive and finite, got {z}"
        )))
    }
}

/// `E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)`, for `z <= 1`.
fn e1_series(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut k = 1.0;
    loop {
        term *= -z / k;
        let contribution = term / k;
        sum += contribution;
        if contribution.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        k += 1.0;
    }
    -EULER_GAMMA - ln(z) - sum
}

/// `e^z E1(z)` for `z > 1` by the continued fraction
/// `1 / (z + 1 - 1 / (z + 3 - 4 / (z + 5 - ...)))`, evaluated with the
/// modified Lentz method.
fn scaled_e1_fraction(z: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..E1_MAX_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() <= 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence {
        method: "E1 continued fraction",
        iterations: E1_MAX_TERMS,
        estimate: h,
    })
}

/// Exponential integral `E1(z) = int_z^inf e^{-t} / t dt` for `z > 0`.
pub fn exp_integral_e1(z: f64) -> Result<f64> {
    check_positive("E1 argument", z)?;
    if z <= E1_SERIES_LIMIT {
        Ok(e1_series(z))
    } else if z > E1_UNDERFLOW {
        Ok(0.0)
    } else {
        Ok(exp(-z) * scaled_e1_fraction(z)?)
    }
}

/// `e^z E1(z)`, finite for every `z > 0` (tends to `1/z` at infinity).
pub fn scaled_exp_integral_e1(z: f64) -> Result<f64> {
    check_positive("E1 argument", z)?;
    if z <= E1_SERIES_LIMIT {
        Ok(exp(z) * e1_series(z))
    } else {
        scaled_e1_fraction(z)
    }
}

/// Which closed form produced a [`LimitPoint`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitForm {
    Integral,
    TanhQuadrature,
}

/// Limiting reachability probability at one window coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitPoint {
    pub x: f64,
    /// `b = e^x`.
    pub b: f64,
    pub limit_prob: f64,
    /// `E1(e^{-x})`; zero once it underflows.
    pub e1_value: f64,
    pub form_used: LimitForm,
}

/// `w e^w E1(w)`, the complement of the limit at `w = e^{-x} = 1/b`.
fn complement_at(w: f64) -> f64 {
    if w == 0.0 {
        return 0.0;
    }
    if w.is_infinite() {
        return 1.0;
    }
    // The continued fraction always converges for w > 1; the series needs no
    // iteration budget.
    let scaled = scaled_exp_integral_e1(w).unwrap_or(1.0 / (w + 1.0));
    (w * scaled).clamp(0.0, 1.0)
}

/// Limit of `P(1 -> n)` at `p = (log n - log log n + x) / n`:
/// `1 - e^{e^{-x} - x} E1(e^{-x})`.
///
/// Increases from 0 at `x = -inf` to 1 at `x = +inf`; values of `x` whose
/// `e^{-x}` leaves the floating-point range return those limits exactly.
pub fn limit_prob(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    1.0 - complement_at(exp(-x))
}

/// [`limit_prob`] together with its intermediate values.
pub fn limit_point(x: f64) -> LimitPoint {
    let w = exp(-x);
    LimitPoint {
        x,
        b: exp(x),
        limit_prob: limit_prob(x),
        e1_value: if w > 0.0 && w.is_finite() {
            exp_integral_e1(w).unwrap_or(0.0)
        } else if w == 0.0 {
            f64::INFINITY
        } else {
            0.0
        },
        form_used: LimitForm::Integral,
    }
}

/// `f(b) = (1/b) e^{1/b} E1(1/b)`, so that the limit at `b` is `1 - f(b)`.
pub fn f_of_b(b: f64) -> Result<f64> {
    check_positive("b", b)?;
    Ok(complement_at(1.0 / b))
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss–Kronrod panel: (Kronrod estimate, |Kronrod - Gauss|).
fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

const QUAD_MAX_PANELS: usize = 20_000;

/// Adaptive Gauss–Kronrod integration of `f` over each consecutive pair of
/// `breaks`, to absolute error `tol` overall.
fn integrate<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> Result<f64> {
    // (lo, hi, value, error)
    let mut panels: Vec<(f64, f64, f64, f64)> = breaks
        .windows(2)
        .map(|w| {
            let (v, e) = gauss_kronrod(&f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= tol {
            return Ok(panels.iter().map(|p| p.2).sum());
        }
        if panels.len() >= QUAD_MAX_PANELS {
            return Err(Error::NonConvergence {
                method: "adaptive Gauss-Kronrod quadrature",
                iterations: panels.len(),
                estimate: total_err,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .3.total_cmp(&b.1 .3))
            .expect("at least one panel");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        for (a, b) in [(lo, mid), (mid, hi)] {
            let (v, e) = gauss_kronrod(&f, a, b);
            panels.push((a, b, v, e));
        }
    }
}

/// The limit evaluated as `1/2 + E[tanh((x - G) / 2)] / 2` for a standard
/// Gumbel `G`, by quadrature to absolute error `quad_tol`.
///
/// With `t = e^{-G}`, which is Exp(1), the expectation becomes
/// `int_0^inf tanh((x + ln t) / 2) e^{-t} dt`, and
/// `tanh((x + ln t) / 2) = (e^x t - 1) / (e^x t + 1)`.
pub fn limit_prob_tanh(x: f64, quad_tol: f64) -> Result<f64> {
    check_positive("quadrature tolerance", quad_tol)?;
    if x.is_nan() {
        return Err(Error::invalid("x is NaN"));
    }
    let c = exp(x);
    if c.is_infinite() {
        return Ok(1.0);
    }
    // The integrand is bounded by e^{-t}; cut where the tail costs quad_tol/4
    // of the final probability.
    let horizon = ln(2.0 / quad_tol).max(1.0);
    let mut breaks = alloc::vec![0.0];
    let knee = 1.0 / c;
    if knee > 0.0 && knee < horizon {
        breaks.push(knee);
    }
    breaks.push(horizon);
    let integrand = |t: f64| {
        let ct = c * t;
        (ct - 1.0) / (ct + 1.0) * exp(-t)
    };
    let expectation = integrate(integrand, &breaks, quad_tol)?;
    Ok((0.5 + 0.5 * expectation).clamp(0.0, 1.0))
}

/// [`limit_prob_tanh`] with its intermediate values.
pub fn limit_point_tanh(x: f64, quad_tol: f64) -> Result<LimitPoint> {
    let mut point = limit_point(x);
    point.limit_prob = limit_prob_tanh(x, quad_tol)?;
    point.form_used = LimitForm::TanhQuadrature;
    Ok(point)
}

/// Edge probability in the critical window at size `n` and coordinate `x`,
/// with the matching `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalSequence {
    pub n: u64,
    pub x: f64,
    pub p: f64,
    /// `b = p e^{n p}`, so that `n = log(b / p) / p`.
    pub b: f64,
}

/// `p = (log n - log log n + x) / n` and `b = p e^{n p}`.
pub fn critical_p(n: u64, x: f64) -> Result<CriticalSequence> {
    if n < 3 {
        return Err(Error::invalid(alloc::format!(
            "critical window needs n >= 3, got {n}"
        )));
    }
    let nf = n as f64;
    let log_n = ln(nf);
    let p = (log_n - ln(log_n) + x) / nf;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(alloc::format!(
            "critical edge probability {p} for n = {n}, x = {x} lies outside (0, 1)"
        )));
    }
    Ok(CriticalSequence {
        n,
        x,
        p,
        b: exp(ln(p) + nf * p),
    })
}

const LAMBERT_MAX_ITERATIONS: usize = 50;

/// Principal branch of the Lambert W function for `y >= 0`, by Halley
/// iteration.
pub fn lambert_w0(y: f64) -> Result<f64> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::invalid(alloc::format!(
            "Lambert W argument must be finite and nonnegative, got {y}"
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let mut w = if y > core::f64::consts::E {
        let l1 = ln(y);
        let l2 = ln(l1);
        l1 - l2 + l2 / l1
    } else {
        ln_1p(y) * 0.8
    };
    let mut residual = f64::INFINITY;
    for _ in 0..LAMBERT_MAX_ITERATIONS {
        let ew = exp(w);
        let f = w * ew - y;
        residual = (f / y).abs();
        if residual <= 1e-15 {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 1e-16 * w.abs() {
            return Ok(w);
        }
    }
    if residual <= 1e-14 {
        Ok(w)
    } else {
        Err(Error::NonConvergence {
            method: "Lambert W Halley iteration",
            iterations: LAMBERT_MAX_ITERATIONS,
            estimate: residual,
        })
    }
}

/// Solves `n = log(b / p) / p` for `p`: `n p e^{n p} = n b`, so
/// `p = W(n b) / n`.
pub fn solve_p_from_b(n: u64, b: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    check_positive("b", b)?;
    let nf = n as f64;
    let w = lambert_w0(nf * b)?;
    let p = w / nf;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(alloc::format!(
            "solution p = {p} for n = {n}, b = {b} lies outside (0, 1)"
        )));
    }
    // log p + n p = log b; the form n - log(b/p)/p cancels when n p is tiny
    let np = nf * p;
    let residual = (ln(p) + np - ln(b)).abs();
    if residual > 1e-12 * (1.0 + np + ln(b).abs()) {
        return Err(Error::NonConvergence {
            method: "calibration n = log(b/p)/p",
            iterations: LAMBERT_MAX_ITERATIONS,
            estimate: residual,
        });
    }
    Ok(p)
}

/// Standard Gumbel CDF `exp(-e^{-z})`.
pub fn gumbel_cdf(z: f64) -> f64 {
    exp(-exp(-z))
}

/// Standard Gumbel density `exp(-(z + e^{-z}))`.
pub fn gumbel_density(z: f64) -> f64 {
    exp(-(z + exp(-z)))
}

/// Mean of the standard Gumbel law.
pub const GUMBEL_MEAN: f64 = EULER_GAMMA;

/// Deterministic drift `log(e^a - 1)` of the centered exploration process.
pub fn exploration_drift(a: f64) -> f64 {
    crate::math::ln_exp_m1(a)
}

/// Limit mean of the rest term, `log(e^a - 1) - log a`.
pub fn rest_term_limit(a: f64) -> f64 {
    if a < 1.0 {
        ln(exp_m1(a) / a)
    } else {
        exploration_drift(a) - ln(a)
    }
}
