#![allow(dead_code)]

/// Composite Simpson rule with `intervals` (even) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, intervals: usize) -> f64 {
    assert!(intervals.is_multiple_of(2));
    let h = (hi - lo) / intervals as f64;
    let mut sum = f(lo) + f(hi);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(lo + i as f64 * h);
    }
    sum * h / 3.0
}

/// `E1(z)` as `int_0^inf exp(-z e^s) ds`, Simpson on 10^6 panels.
pub fn e1_quadrature(z: f64) -> f64 {
    let upper = (745.0 / z).ln();
    simpson(|s| (-z * s.exp()).exp(), 0.0, upper, 1_000_000)
}

/// Mean of the standard Gumbel law by quadrature of `z exp(-(z + e^{-z}))`.
pub fn gumbel_mean_quadrature() -> f64 {
    simpson(|z| z * (-(z + (-z).exp())).exp(), -8.0, 45.0, 1_000_000)
}

/// `H_m`.
pub fn harmonic(m: u64) -> f64 {
    (1..=m).rev().map(|i| 1.0 / i as f64).sum()
}

pub fn assert_within_se(label: &str, mean: f64, se: f64, target: f64, k: f64, extra: f64) {
    let gap = (mean - target).abs();
    assert!(
        gap <= k * se + extra,
        "{label}: |{mean} - {target}| = {gap} exceeds {k} SE ({se}) + {extra}"
    );
}
