use std::f64::consts::{E, PI};

use frl_core::higherdim::{
    bound_bck, bound_new, bound_table, bound_upper, first_stationary_point, lambda_d, lambda_d_direct,
    linear_growth_report, normalized_kernel, u_d, MAX_DIMENSION,
};
use frl_core::specfun::bessel::{bessel_j, BesselOrder};
use proptest::prelude::*;

#[test]
fn lambda_below_half_everywhere() {
    for d in 2..=MAX_DIMENSION {
        let lam = lambda_d(d).unwrap();
        assert!(lam > 0.0 && lam < 0.5, "d={d}: {lam}");
        assert!(lam <= u_d(d), "d={d}: {lam} > {}", u_d(d));
    }
}

#[test]
fn lambda_decreasing_to_sixty() {
    let rows = bound_table(2, 60).unwrap();
    assert!(rows.windows(2).all(|w| w[1].lambda_d < w[0].lambda_d));
}

#[test]
fn routes_agree_across_the_range() {
    for d in (2..=MAX_DIMENSION).step_by(7) {
        assert!((lambda_d(d).unwrap() - lambda_d_direct(d).unwrap()).abs() < 1e-8, "d={d}");
    }
}

#[test]
fn bounds_ordered() {
    for r in bound_table(2, MAX_DIMENSION).unwrap() {
        assert!(r.bound_bck < r.bound_new, "d={}", r.d);
        assert!(r.bound_new <= r.bound_upper, "d={}", r.d);
        assert!((r.bound_upper - bound_upper(r.d)).abs() < 1e-15);
    }
}

#[test]
fn linear_growth_sandwich() {
    let rows = linear_growth_report(MAX_DIMENSION).unwrap();
    assert_eq!(rows.len(), (MAX_DIMENSION - 1) as usize);
    assert!(rows.iter().all(|r| r.sandwiched));
    // bound_new/d approaches 1/(2πe) from above
    let last = rows.last().unwrap();
    let ratio = last.bound_new / last.d as f64 * 2.0 * PI * E;
    assert!(ratio > 1.0 && ratio < 1.1, "{ratio}");
}

#[test]
fn bck_closed_forms() {
    // Γ(2) = 1 and Γ(3) = 2
    assert!((bound_bck(2).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
    assert!((bound_bck(4).unwrap() - 1.0 / PI).abs() < 1e-15);
    let lam = lambda_d(4).unwrap();
    assert!((bound_new(4).unwrap() - (2.0 / (1.0 + lam)).sqrt() / PI).abs() < 1e-14);
}

#[test]
fn minimum_is_the_first_stationary_point() {
    for d in [2u32, 5, 9, 33] {
        let t0 = first_stationary_point(d).unwrap();
        let j = bessel_j(BesselOrder::new(d as f64 / 2.0 + 1.0).unwrap(), t0).unwrap();
        assert!(j.abs() < 1e-12);
        let v0 = normalized_kernel(d, t0).unwrap();
        for i in 1..=400 {
            let t = t0 * 2.0 * i as f64 / 400.0;
            assert!(normalized_kernel(d, t).unwrap() >= v0 - 1e-14, "d={d} t={t}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_bounded_by_one(d in 2u32..=MAX_DIMENSION, t in 0.0f64..200.0) {
        let v = normalized_kernel(d, t).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-12);
        prop_assert!(v >= -lambda_d(d).unwrap() - 1e-10);
    }
}
