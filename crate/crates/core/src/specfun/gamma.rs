//! Gamma function via the Lanczos approximation (g = 7, 9 terms).

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::scaled::ScaledValue;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which `Γ(x)` is finite in `f64`.
pub const GAMMA_F64_MAX_ARG: f64 = 171.624_376_956_302_7;

fn lanczos_sum(x: f64) -> f64 {
    // x here is the shifted argument z - 1
    let mut a = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    a
}

fn check(x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return domain(format!("gamma requires a finite positive argument, got {x}"));
    }
    Ok(())
}

/// `Γ(x)` for `0 < x ≤ 171.6`; larger arguments overflow to `+inf`
/// (use [`gamma_scaled`] there).
pub fn gamma(x: f64) -> Result<f64> {
    check(x)?;
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos sum on its accurate branch
        return gamma_unchecked(x + 1.0) / x;
    }
    if x == x.floor() && x <= 171.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    if x > GAMMA_F64_MAX_ARG {
        return f64::INFINITY;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check(x)?;
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 15.0 {
        return gamma_unchecked(x).ln();
    }
    // Stirling series; at x ≥ 15 the truncation error is below 1e-17 relative.
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2
                * (1.0 / 360.0
                    - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// `Γ(x)` as a [`ScaledValue`]; exact to `f64` rounding below the overflow
/// threshold, and with relative error about `|ln Γ(x)|·ε` above it.
pub fn gamma_scaled(x: f64) -> Result<ScaledValue> {
    check(x)?;
    if x <= 170.0 {
        return Ok(ScaledValue::from_f64(gamma_unchecked(x)));
    }
    Ok(ScaledValue::from_ln(ln_gamma_unchecked(x), 1.0))
}

/// Product `(lo)(lo+1)…(hi)` of consecutive integers as a [`ScaledValue`]; one for an empty range.
pub fn rising_product(lo: u64, hi: u64) -> ScaledValue {
    let mut acc = ScaledValue::ONE;
    let mut chunk = 1.0f64;
    for k in lo..=hi {
        chunk *= k as f64;
        if chunk > 1e250 {
            acc = acc.mul_f64(chunk);
            chunk = 1.0;
        }
    }
    acc.mul_f64(chunk)
}

/// `n!` as a [`ScaledValue`] by direct multiplication.
pub fn factorial_scaled(n: u64) -> ScaledValue {
    rising_product(2, n)
}

/// The two-sided Stirling envelope `√(2π) x^{x−1/2} e^{−x} e^{μ}` with
/// `μ ∈ (1/(12x+1), 1/(12x))`, returned as `(lower, upper)`.
pub fn stirling_envelope(x: f64) -> (f64, f64) {
    let base = (0.5 * (2.0 * PI).ln() + (x - 0.5) * x.ln() - x).exp();
    (
        base * (1.0 / (12.0 * x + 1.0)).exp(),
        base * (1.0 / (12.0 * x)).exp(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn classical_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(1.5).unwrap(), PI.sqrt() / 2.0) < 1e-14);
        assert!(rel(gamma(1e-3).unwrap(), 999.423_772_484_595_4) < 1e-13);
    }

    #[test]
    fn factorials_up_to_170() {
        let mut fact = 1.0f64;
        for n in 1..=170u32 {
            fact *= n as f64;
            // accumulated product carries up to ~n ulps of its own error
            assert!(rel(gamma(n as f64 + 1.0).unwrap(), fact) < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn recurrence_holds_at_non_integers() {
        for i in 1..400 {
            let x = 0.37 * i as f64;
            if x + 1.0 > 170.0 {
                break;
            }
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
        assert!(gamma(f64::NAN).is_err());
        assert!(gamma_scaled(f64::INFINITY).is_err());
    }

    #[test]
    fn scaled_gamma_extends_beyond_overflow() {
        // ln Γ(1001) = ln(1000!) = 5912.12817848816
        let g = gamma_scaled(1001.0).unwrap();
        assert!((g.ln_abs() - 5_912.128_178_488_16).abs() < 1e-9);
        let direct = factorial_scaled(1000);
        let r = g.ratio(direct);
        assert!((r - 1.0).abs() < 1e-11, "{r}");
        // continuity across the switch at 170
        let a = gamma_scaled(170.0).unwrap();
        let b = gamma_scaled(170.5).unwrap();
        assert!((b.ratio(a) / 170f64.sqrt() - 1.0).abs() < 1e-2);
    }

    #[test]
    fn stirling_envelope_contains_gamma() {
        let mut x = 0.5;
        while x <= 50.0 {
            let (lo, hi) = stirling_envelope(x);
            let g = gamma(x).unwrap();
            assert!(lo < g && g < hi, "x = {x}: {lo} {g} {hi}");
            x += 0.5;
        }
    }
}
