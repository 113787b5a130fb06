use frl_core::eigenfunction::{
    fourier_transform, integral, l1_norm, positive_negative_parts, root_certificate, Basis, CoefficientFile,
    EigenPlusFunction, DEFAULT_GRID_STEP,
};
use frl_core::Error;
use proptest::prelude::*;

fn psi_coeffs(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_len)
}

/// Normalized expansion from random ψ-basis coefficients, pivoting on the top one.
fn normalized_from_psi(c: &[f64]) -> Option<EigenPlusFunction> {
    let raw = EigenPlusFunction::from_psi(c).ok()?;
    let top = c.len() - 1;
    if top == 0 || c[top].abs() < 1e-3 {
        return None;
    }
    EigenPlusFunction::with_pivot(raw.coeffs().to_vec(), top).ok()
}

#[test]
fn reference_candidate_roots() {
    let f = EigenPlusFunction::reference_candidate();
    assert!(f.is_normalized());
    assert!(f.eval(0.0).abs() < 1e-12);
    let cert = root_certificate(&f, DEFAULT_GRID_STEP, 1e-12).unwrap();
    assert!((cert.largest_root - 0.59354).abs() < 1e-4);
    let near = cert.near_double_roots.iter().map(|m| m.location).collect::<Vec<_>>();
    assert!(near.iter().any(|x| (x - 0.8990).abs() < 1e-3), "{near:?}");
    for m in &cert.local_minima {
        assert!(m.value > -1e-12 && m.location > cert.largest_root);
    }
    // sign checks just past the certificate
    for i in 1..2000 {
        let x = cert.largest_root + 1e-3 * i as f64;
        assert!(f.eval(x) > 0.0 || (x - 0.899).abs() < 1e-2, "x={x}");
    }
}

#[test]
fn reference_candidate_integrals() {
    let f = EigenPlusFunction::reference_candidate();
    let l1 = l1_norm(&f, 1e-12).unwrap();
    let (pos, neg) = positive_negative_parts(&f, 1e-12).unwrap();
    assert!((pos + neg - l1).abs() < 1e-10);
    assert!((pos - neg).abs() < 1e-9 * l1, "zero mean: {pos} vs {neg}");
    assert!(integral(&f, 1e-12).unwrap().abs() < 1e-9 * l1);
}

#[test]
fn coefficient_files() {
    let text = r#"{"coeffs": ["-113/100", "1/25", "1/3240", 2.0e-7], "basis": "unnormalized-H4n"}"#;
    let file = CoefficientFile::parse(text).unwrap();
    let f = file.to_function(false).unwrap();
    assert_eq!(f.coeffs()[0], -1.13);
    assert_eq!(f.coeffs()[2], 1.0 / 3240.0);
    assert!(matches!(file.to_function(true), Err(Error::Domain(_))));

    let reference = EigenPlusFunction::reference_candidate();
    let json = serde_json::to_string(&reference.to_file(Basis::Psi)).unwrap();
    let back = CoefficientFile::parse(&json).unwrap().to_function(true).unwrap();
    for (a, b) in back.coeffs().iter().zip(reference.coeffs()) {
        assert!((a - b).abs() <= 1e-15 * b.abs());
    }

    assert!(CoefficientFile::parse(r#"{"coeffs": ["1/0"]}"#).unwrap().to_function(false).is_err());
    assert!(CoefficientFile::parse(r#"{"coeffs": [1], "extra": 1}"#).is_err());
    assert!(CoefficientFile::parse(r#"{"coeffs": []}"#).unwrap().to_function(false).is_err());
}

#[test]
fn negative_leading_coefficient() {
    let f = EigenPlusFunction::new(vec![12.0, -1.0]).unwrap();
    assert!(matches!(
        root_certificate(&f, DEFAULT_GRID_STEP, 1e-12),
        Err(Error::NegativeAtInfinity { .. })
    ));
}

#[test]
fn single_term_root_is_closed_form() {
    // H_4(y) − 12 = 16y²(y² − 3), y = √(2π)x
    let f = EigenPlusFunction::normalized(vec![-12.0, 1.0]).unwrap();
    let cert = root_certificate(&f, DEFAULT_GRID_STEP, 1e-13).unwrap();
    let want = (3.0 / (2.0 * std::f64::consts::PI)).sqrt();
    assert!((cert.largest_root - want).abs() < 1e-11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn self_dual(c in psi_coeffs(7)) {
        let f = EigenPlusFunction::from_psi(&c).unwrap();
        for &y in &[0.0, 0.3, 0.9, 1.7] {
            let ft = fourier_transform(&f, y, 1e-9).unwrap();
            prop_assert!((ft - f.eval(y)).abs() < 1e-6, "y={y}: {ft} vs {}", f.eval(y));
        }
    }

    #[test]
    fn normalized_functions_have_zero_mean(c in psi_coeffs(7)) {
        let Some(f) = normalized_from_psi(&c) else { return Ok(()) };
        let l1 = l1_norm(&f, 1e-11).unwrap();
        prop_assert!(integral(&f, 1e-11).unwrap().abs() <= 1e-8 * l1.max(1.0));
    }

    #[test]
    fn roots_beyond_a_quarter(c in psi_coeffs(7)) {
        let Some(f) = normalized_from_psi(&c) else { return Ok(()) };
        match root_certificate(&f, DEFAULT_GRID_STEP, 1e-12) {
            Ok(cert) => prop_assert!(cert.largest_root >= 0.25 - 1e-9, "{}", cert.largest_root),
            Err(Error::NegativeAtInfinity { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn certificate_stable_under_refinement(c in psi_coeffs(5)) {
        let Some(f) = normalized_from_psi(&c) else { return Ok(()) };
        let (Ok(coarse), Ok(fine)) = (
            root_certificate(&f, DEFAULT_GRID_STEP, 1e-12),
            root_certificate(&f, DEFAULT_GRID_STEP / 10.0, 1e-12),
        ) else { return Ok(()) };
        prop_assert!((coarse.largest_root - fine.largest_root).abs() < 1e-9,
            "{} vs {}", coarse.largest_root, fine.largest_root);
    }
}
