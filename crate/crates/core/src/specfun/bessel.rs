//! Bessel functions of the first kind, their first zero and their stationary points.
//!
//! Small arguments (`x ≤ 12`) use the power series. Larger arguments use
//! Miller's backward recurrence on `J_{α+k}`, `α = ν − ⌊ν⌋`, normalized with
//! the Neumann sum `Σ_k c_k J_{α+2k}(x) = (x/2)^α`. Neither branch has the
//! cancellation problems of the series at `x ≈ 2ν` or the asymptotic
//! expansion at `x ≲ ν²`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::specfun::gamma::{gamma_unchecked, ln_gamma_unchecked};

const SERIES_MAX_X: f64 = 12.0;
const RESCALE: f64 = 1e250;

/// A validated order `ν ≥ −1/2`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu.is_finite() && nu >= -0.5) {
            return domain(format!("Bessel order must be finite and >= -1/2, got {nu}"));
        }
        Ok(BesselOrder(nu))
    }

    pub fn nu(self) -> f64 {
        self.0
    }
}

/// `J_ν(x)` for `x ≥ 0`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return domain(format!("Bessel argument must be finite and >= 0, got {x}"));
    }
    Ok(bessel_j_raw(order.0, x))
}

/// `J_ν(x)` for any `ν > −1`, `x ≥ 0`; no validation.
pub(crate) fn bessel_j_raw(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if x <= SERIES_MAX_X {
        series(nu, x)
    } else {
        miller(nu, x)
    }
}

fn series(nu: f64, x: f64) -> f64 {
    let half = x / 2.0;
    let first = if nu + 1.0 < 15.0 {
        half.powf(nu) / gamma_unchecked(nu + 1.0)
    } else {
        (nu * half.ln() - ln_gamma_unchecked(nu + 1.0)).exp()
    };
    if first == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut term = first;
    let mut sum = first;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > half {
            return sum;
        }
        k += 1.0;
    }
}

fn miller(nu: f64, x: f64) -> f64 {
    let base = nu.floor();
    let alpha = nu - base;
    // index of the wanted order relative to alpha; −1 for nu in (−1, 0)
    let target = base as i64;
    let top = (nu.max(x) + 30.0 + 10.0 * x.cbrt()).ceil() as usize;

    let mut vals = vec![0.0f64; top + 2];
    vals[top] = 1e-300;
    for k in (1..=top).rev() {
        let mu = alpha + k as f64;
        let next = 2.0 * mu / x * vals[k] - vals[k + 1];
        vals[k - 1] = next;
        if next.abs() > RESCALE {
            for v in &mut vals[k - 1..] {
                *v /= RESCALE;
            }
        }
    }

    // Σ c_k J_{α+2k} = (x/2)^α, c_0 = Γ(α+1), c_k = (α+2k) Γ(α+k)/k!
    let mut g = gamma_unchecked(alpha + 1.0);
    let mut norm = g * vals[0];
    let mut k = 1usize;
    while 2 * k <= top {
        let c = (alpha + 2.0 * k as f64) * g;
        norm += c * vals[2 * k];
        g *= (alpha + k as f64) / (k as f64 + 1.0);
        k += 1;
    }
    let scale = (x / 2.0).powf(alpha) / norm;
    if target >= 0 {
        vals[target as usize] * scale
    } else {
        (2.0 * alpha / x * vals[0] - vals[1]) * scale
    }
}

/// `J'_ν(x) = (J_{ν−1}(x) − J_{ν+1}(x))/2`, for `ν > 0`.
pub fn bessel_j_derivative(order: BesselOrder, x: f64) -> Result<f64> {
    if order.0 <= 0.0 {
        return domain("derivative via the order recurrence needs nu > 0");
    }
    bessel_j(order, x)?;
    Ok((bessel_j_raw(order.0 - 1.0, x) - bessel_j_raw(order.0 + 1.0, x)) / 2.0)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Step of the sign-change scan; below half the asymptotic zero spacing `π`.
const ZERO_SCAN_STEP: f64 = 0.25;

/// Smallest positive zero `j_ν` of `J_ν`, `ν ≥ 0`, to about `1e−13`.
///
/// The scan starts at the origin, so `j_ν > ν` is an observation, not an assumption.
pub fn bessel_first_zero(order: BesselOrder) -> Result<f64> {
    let nu = order.0;
    if nu < 0.0 {
        return domain(format!("first zero requires nu >= 0, got {nu}"));
    }
    let f = |x: f64| bessel_j_raw(nu, x);
    let limit = nu + 100.0;
    let mut a = ZERO_SCAN_STEP;
    let mut fa = f(a);
    while a < limit {
        let b = a + ZERO_SCAN_STEP;
        let fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
        if (fa > 0.0) != (fb > 0.0) {
            return Ok(bisect(f, a, b, 1e-13));
        }
        a = b;
        fa = fb;
    }
    Err(Error::Internal(format!("no sign change of J_{nu} found on [0, {limit}]")))
}

/// First `count` positive zeros of `J'_ν`, `ν > 0`, in increasing order.
pub fn bessel_stationary_points(order: BesselOrder, count: usize) -> Result<Vec<f64>> {
    let nu = order.0;
    if nu <= 0.0 {
        return domain(format!("stationary points require nu > 0, got {nu}"));
    }
    if count == 0 {
        return domain("count must be at least 1");
    }
    let f = |x: f64| bessel_j_raw(nu - 1.0, x) - bessel_j_raw(nu + 1.0, x);
    let step = 0.1;
    let limit = nu + 100.0 + 4.0 * count as f64;
    let mut out = Vec::with_capacity(count);
    let mut a = 0.05;
    let mut fa = f(a);
    while out.len() < count {
        if a > limit {
            return Err(Error::Internal(format!(
                "found only {} stationary points of J_{nu} below {limit}",
                out.len()
            )));
        }
        let b = a + step;
        let fb = f(b);
        if (fa > 0.0) != (fb > 0.0) {
            out.push(bisect(f, a, b, 1e-13));
        }
        a = b;
        fa = fb;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn j(nu: f64, x: f64) -> f64 {
        bessel_j(BesselOrder::new(nu).unwrap(), x).unwrap()
    }

    /// Bessel's integral `J_n(x) = (1/π)∫_0^π cos(nθ − x sin θ) dθ`; the
    /// trapezoid rule is spectrally accurate on this periodic integrand.
    fn bessel_integral(n: u32, x: f64) -> f64 {
        let m = 4000;
        let h = PI / m as f64;
        let g = |t: f64| (n as f64 * t - x * t.sin()).cos();
        let mut s = 0.5 * (g(0.0) + g(PI));
        for i in 1..m {
            s += g(i as f64 * h);
        }
        s * h / PI
    }

    #[test]
    fn closed_forms() {
        assert_eq!(j(0.0, 0.0), 1.0);
        assert!((j(0.5, PI / 2.0) - 2.0 / PI).abs() < 1e-14);
        for i in 1..400 {
            let x = 0.5 * i as f64;
            let s = (2.0 / (PI * x)).sqrt();
            assert!((j(0.5, x) - s * x.sin()).abs() < 1e-12, "x={x}");
            assert!((j(-0.5, x) - s * x.cos()).abs() < 1e-12, "x={x}");
            assert!((j(1.5, x) - s * (x.sin() / x - x.cos())).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn integer_orders_match_bessel_integral() {
        for &n in &[0u32, 1, 2, 5, 13, 30, 60] {
            for i in 0..=100 {
                let x = 2.0 * i as f64 + 0.37;
                let want = bessel_integral(n, x);
                let got = j(n as f64, x);
                assert!((got - want).abs() < 1e-11, "n={n} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn branches_agree_below_the_switch() {
        for &nu in &[0.0, 0.3, 1.5, 7.25, 20.0] {
            for i in 0..=20 {
                let x = 8.0 + 0.2 * i as f64;
                let a = series(nu, x);
                let b = miller(nu, x);
                assert!((a - b).abs() < 1e-12, "nu={nu} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn order_recurrence_holds() {
        // J_{ν−1} + J_{ν+1} = (2ν/x) J_ν
        for &nu in &[0.5, 1.0, 2.7, 11.0, 45.5] {
            for i in 1..50 {
                let x = 3.9 * i as f64;
                let lhs = bessel_j_raw(nu - 1.0, x) + bessel_j_raw(nu + 1.0, x);
                let rhs = 2.0 * nu / x * bessel_j_raw(nu, x);
                assert!((lhs - rhs).abs() < 1e-11, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn bounded_by_one() {
        for k in 0..=20 {
            let nu = 0.5 * k as f64;
            for i in 0..10_000 {
                let x = 100.0 * i as f64 / 9999.0;
                assert!(j(nu, x).abs() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BesselOrder::new(-0.6).is_err());
        assert!(bessel_j(BesselOrder::new(1.0).unwrap(), -1.0).is_err());
        assert!(bessel_first_zero(BesselOrder::new(-0.5).unwrap()).is_err());
    }

    /// Bisection on `tan x = x` in `(π, 3π/2)`, the first zero of `J_{3/2}`.
    fn tan_root() -> f64 {
        let (mut lo, mut hi) = (PI + 1e-9, 1.5 * PI - 1e-9);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.tan() - mid < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn first_zeros() {
        let z = |nu: f64| bessel_first_zero(BesselOrder::new(nu).unwrap()).unwrap();
        assert!((z(0.5) - PI).abs() < 1e-12);
        assert!((z(1.5) - tan_root()).abs() < 1e-12);
        assert!((z(0.0) - 2.404_825_557_695_773).abs() < 1e-12);
        assert!((z(2.0) - 5.135_622_301_840_683).abs() < 1e-11);
        for k in 0..=120 {
            let nu = 0.5 * k as f64;
            let r = z(nu);
            assert!(r > nu, "nu={nu}: {r}");
            assert!(j(nu, r).abs() < 1e-12);
        }
    }

    #[test]
    fn stationary_points() {
        let order = BesselOrder::new(1.0).unwrap();
        let p = bessel_stationary_points(order, 1).unwrap();
        assert!((p[0] - 1.841_183_781_340_659).abs() < 1e-11);

        let order = BesselOrder::new(2.0).unwrap();
        let p = bessel_stationary_points(order, 10).unwrap();
        let vals: Vec<f64> = p.iter().map(|&t| j(2.0, t).abs()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        for n in 1..=10 {
            let nu = n as f64;
            let p = bessel_stationary_points(BesselOrder::new(nu).unwrap(), 3).unwrap();
            assert!(p[0] >= nu);
            assert!(p.windows(2).all(|w| w[0] < w[1]));
            let d = bessel_j_derivative(BesselOrder::new(nu).unwrap(), p[0]).unwrap();
            assert!(d.abs() < 1e-12);
        }
    }
}
