mod common;

use monopath_core::asymptotics::{
    critical_p, exp_integral_e1, f_of_b, gumbel_cdf, gumbel_density, limit_point, limit_point_tanh,
    limit_prob, limit_prob_tanh, solve_p_from_b, LimitForm, GUMBEL_MEAN,
};
use monopath_core::math::EULER_GAMMA;

fn x_grid() -> impl Iterator<Item = f64> {
    (0..41).map(|i| -10.0 + 0.5 * i as f64)
}

#[test]
fn e1_matches_quadrature() {
    for z in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let oracle = common::e1_quadrature(z);
        let value = exp_integral_e1(z).unwrap();
        assert!((value - oracle).abs() < 1e-10, "z={z}: {value} vs {oracle}");
    }
}

#[test]
fn gompertz_point_against_quadrature() {
    let oracle = 1.0 - std::f64::consts::E * common::e1_quadrature(1.0);
    assert!((limit_prob(0.0) - oracle).abs() < 1e-9);
    assert!((limit_prob(0.0) - 0.403_652_637).abs() < 1e-9);
}

#[test]
fn euler_gamma_is_gumbel_mean() {
    let oracle = common::gumbel_mean_quadrature();
    assert!((oracle - EULER_GAMMA).abs() < 1e-10, "{oracle}");
    assert_eq!(GUMBEL_MEAN, EULER_GAMMA);
}

#[test]
fn b_form_identity_on_grid() {
    for x in x_grid() {
        let via_b = 1.0 - f_of_b(x.exp()).unwrap();
        assert!((limit_prob(x) - via_b).abs() <= 1e-10, "x={x}");
    }
}

#[test]
fn tanh_form_agrees_on_grid() {
    for x in x_grid() {
        let t = limit_prob_tanh(x, 1e-10).unwrap();
        assert!(
            (limit_prob(x) - t).abs() <= 1e-8,
            "x={x}: {} vs {t}",
            limit_prob(x)
        );
    }
}

#[test]
fn limit_strictly_increasing() {
    let values: Vec<f64> = x_grid().map(limit_prob).collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]));
    assert!(values.iter().all(|&v| (0.0..=1.0).contains(&v)));
}

#[test]
fn limit_points_carry_intermediates() {
    let point = limit_point(0.0);
    assert_eq!(point.form_used, LimitForm::Integral);
    assert!((point.e1_value - exp_integral_e1(1.0).unwrap()).abs() < 1e-16);
    assert_eq!(point.b, 1.0);
    let tanh = limit_point_tanh(0.0, 1e-10).unwrap();
    assert_eq!(tanh.form_used, LimitForm::TanhQuadrature);
    assert!((tanh.limit_prob - point.limit_prob).abs() < 1e-8);
}

#[test]
fn calibration_inverse_consistency() {
    for p in [1e-4f64, 1e-3, 1e-2] {
        for np in [1.0, 5.0, 12.5, 20.0] {
            let n = (np / p).round() as u64;
            let nf = n as f64;
            let b = p * (nf * p).exp();
            let back = solve_p_from_b(n, b).unwrap();
            assert!((back / p - 1.0).abs() <= 1e-12, "p={p} n={n}: {back}");
        }
    }
}

#[test]
fn calibration_round_trip_through_critical_p() {
    let s = critical_p(100_000, 0.0).unwrap();
    let p = solve_p_from_b(100_000, s.b).unwrap();
    assert!((p - s.p).abs() <= 1e-12);
}

#[test]
fn gumbel_density_is_cdf_derivative() {
    let h = 1e-5;
    for z in [-1.0, 0.0, 2.0] {
        let fd = (gumbel_cdf(z + h) - gumbel_cdf(z - h)) / (2.0 * h);
        assert!((fd - gumbel_density(z)).abs() < 1e-6, "z={z}");
    }
}
