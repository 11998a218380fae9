//! Cross-checks between the two independent routes to the modular lambda
//! function: the theta-series evaluation and the arithmetic-geometric-mean
//! inversion. The two share no code, so agreement on a grid pins both.

mod common;

use arakelov::modlambda::{
    certify_clambda, certify_lambda_decreasing, lambda_eval, lambda_inverse, ImaginaryTau,
    ThetaSeriesConfig,
};
use common::{assert_contains_rational, bigfloat_to_rational, rat};
use rigor::{Interval, PrecisionConfig};

const PREC: u32 = 192;

#[test]
fn lambda_inverse_roundtrips_across_the_unit_interval() {
    let cfg = ThetaSeriesConfig::with_bits(PREC);
    let tol = rat(1, 1_000_000_000_000_000_000) / rat(100, 1);
    for k in 1..=23 {
        let alpha = rat(k, 24);
        let y = lambda_inverse(&alpha, PREC).unwrap();
        let tau = ImaginaryTau::new(y, PREC).unwrap();
        let back = lambda_eval(&tau, &cfg).unwrap();
        let lo = bigfloat_to_rational(back.lo());
        let hi = bigfloat_to_rational(back.hi());
        assert!(lo <= &alpha + &tol, "lo drifted at k={k}: {back}");
        assert!(hi >= &alpha - &tol, "hi drifted at k={k}: {back}");
        assert!(&hi - &lo <= &tol + &tol, "roundtrip too wide at k={k}: {back}");
    }
}

#[test]
fn lambda_is_decreasing_on_a_wide_window() {
    let range = Interval::from_ratio_i64(1, 2, PREC)
        .unwrap()
        .hull(&Interval::from_u64(3));
    let cert = certify_lambda_decreasing(&range, 16, &PrecisionConfig::default()).unwrap();
    assert!(cert.is_certified(), "got {:?}", cert.status);
}

#[test]
fn lambda_values_at_reciprocal_heights_sum_to_one() {
    let cfg = ThetaSeriesConfig::with_bits(PREC);
    for (p, q) in [(3i64, 5i64), (4, 5), (1, 1), (13, 10), (5, 2)] {
        let at_y = lambda_eval(&ImaginaryTau::from_ratio_i64(p, q, PREC).unwrap(), &cfg).unwrap();
        let at_inv = lambda_eval(&ImaginaryTau::from_ratio_i64(q, p, PREC).unwrap(), &cfg).unwrap();
        let sum = at_y.add(&at_inv, PREC);
        assert_contains_rational(&sum, &rat(1, 1));
    }
}

#[test]
fn derivative_certification_is_stable_under_extra_precision() {
    let base = certify_clambda(&PrecisionConfig::default()).unwrap();
    assert!(base.is_certified());
    let refined = certify_clambda(&PrecisionConfig::with_bits(256)).unwrap();
    assert!(refined.is_certified());
    assert!(refined.depth_used <= base.depth_used + 4);
}
