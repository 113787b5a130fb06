//! Lower and upper bounds for `A(f)A(f̂)` in dimension `d ≥ 2`.
//!
//! `Λ_d(t) = Γ(d/2+1) J_{d/2}(t) / (t/2)^{d/2}` and `λ_d = −min_t Λ_d(t)`.
//! The minimum sits at the first stationary point `t₀ = j_{d/2+1}`.

use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::specfun::bessel::{bessel_first_zero, bessel_j, bessel_j_derivative, BesselOrder};
use crate::specfun::gamma::{gamma, ln_gamma, GAMMA_F64_MAX_ARG};

pub const MIN_DIMENSION: u32 = 2;
pub const MAX_DIMENSION: u32 = 120;

fn check_d(d: u32) -> Result<()> {
    if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&d) {
        return domain(format!("dimension must lie in {MIN_DIMENSION}..={MAX_DIMENSION}, got {d}"));
    }
    Ok(())
}

fn half(d: u32) -> f64 {
    d as f64 / 2.0
}

/// `Λ_d(t)`, equal to `1` at `t = 0`.
pub fn normalized_kernel(d: u32, t: f64) -> Result<f64> {
    check_d(d)?;
    if !(t >= 0.0 && t.is_finite()) {
        return domain(format!("kernel argument must be finite and nonnegative, got {t}"));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let nu = half(d);
    let j = bessel_j(BesselOrder::new(nu)?, t)?;
    Ok(j * (ln_gamma(nu + 1.0)? - nu * (t / 2.0).ln()).exp())
}

/// The minimizer `t₀ = j_{d/2+1}`.
pub fn first_stationary_point(d: u32) -> Result<f64> {
    check_d(d)?;
    bessel_first_zero(BesselOrder::new(half(d) + 1.0)?)
}

/// `λ_d = −Λ_d(j_{d/2+1})`.
pub fn lambda_d(d: u32) -> Result<f64> {
    let t0 = first_stationary_point(d)?;
    Ok(-normalized_kernel(d, t0)?)
}

/// `λ_d` by scanning `Λ_d` for its first local minimum and refining with golden section.
pub fn lambda_d_direct(d: u32) -> Result<f64> {
    check_d(d)?;
    let step = 0.05;
    let f = |t: f64| normalized_kernel(d, t).unwrap_or(f64::NAN);
    let (mut t, mut prev, mut cur) = (step, f(0.0), f(step));
    loop {
        let next = f(t + step);
        if cur <= prev && cur <= next {
            let tm = golden_min(f, t - step, t + step);
            return Ok(-f(tm));
        }
        if t > half(d) + 200.0 {
            return Err(crate::Error::Internal(format!("no local minimum of the kernel found for d = {d}")));
        }
        t += step;
        prev = cur;
        cur = next;
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 * b.abs().max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// `2J'_{d/2}(t₀) − (d/t₀)J_{d/2}(t₀)`, zero at the minimizer.
pub fn stationarity_residual(d: u32) -> Result<f64> {
    let t0 = first_stationary_point(d)?;
    let order = BesselOrder::new(half(d))?;
    Ok(2.0 * bessel_j_derivative(order, t0)? - d as f64 / t0 * bessel_j(order, t0)?)
}

/// `(1/π) (Γ(d/2+1)/(1+λ_d))^{2/d}`.
pub fn bound_new(d: u32) -> Result<f64> {
    let lam = lambda_d(d)?;
    Ok(bound_bck(d)? * (2.0 / (1.0 + lam)).powf(2.0 / d as f64))
}

/// `(1/π) (Γ(d/2+1)/2)^{2/d}`.
pub fn bound_bck(d: u32) -> Result<f64> {
    if d < MIN_DIMENSION {
        return domain(format!("dimension must be at least {MIN_DIMENSION}, got {d}"));
    }
    let h = half(d);
    if h + 1.0 <= GAMMA_F64_MAX_ARG {
        return Ok((gamma(h + 1.0)? / 2.0).powf(1.0 / h) / PI);
    }
    Ok(((ln_gamma(h + 1.0)? - 2f64.ln()) / h).exp() / PI)
}

/// `(d+2)/(2π)`.
pub fn bound_upper(d: u32) -> f64 {
    (d as f64 + 2.0) / (2.0 * PI)
}

/// `(√(2π)/e) e^{1/(6(d+2))} (d/2+1)^{1/2} (2/e)^{d/2}`, an upper envelope for `λ_d`.
pub fn u_d(d: u32) -> f64 {
    let h = half(d);
    (2.0 * PI).sqrt() / E * (1.0 / (6.0 * (d as f64 + 2.0))).exp() * (h + 1.0).sqrt() * (2.0 / E).powf(h)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub d: u32,
    pub lambda_d: f64,
    pub bound_new: f64,
    pub bound_bck: f64,
    pub bound_upper: f64,
    pub u_d: f64,
}

impl BoundReport {
    pub fn new(d: u32) -> Result<Self> {
        let lam = lambda_d(d)?;
        let bck = bound_bck(d)?;
        Ok(BoundReport {
            d,
            lambda_d: lam,
            bound_new: bck * (2.0 / (1.0 + lam)).powf(2.0 / d as f64),
            bound_bck: bck,
            bound_upper: bound_upper(d),
            u_d: u_d(d),
        })
    }
}

/// Rows for `d_min..=d_max`, computed in parallel.
pub fn bound_table(d_min: u32, d_max: u32) -> Result<Vec<BoundReport>> {
    if d_min > d_max {
        return domain(format!("empty dimension range {d_min}..={d_max}"));
    }
    (d_min..=d_max).into_par_iter().map(BoundReport::new).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub d: u32,
    /// `d/(2πe)`.
    pub lower: f64,
    pub bound_new: f64,
    pub upper: f64,
    pub sandwiched: bool,
}

/// `d/(2πe) < bound_new(d) < (d+2)/(2π)` for `2 ≤ d ≤ d_max`.
pub fn linear_growth_report(d_max: u32) -> Result<Vec<GrowthRow>> {
    bound_table(MIN_DIMENSION, d_max.max(MIN_DIMENSION)).map(|rows| {
        rows.into_iter()
            .map(|r| {
                let lower = r.d as f64 / (2.0 * PI * E);
                GrowthRow {
                    d: r.d,
                    lower,
                    bound_new: r.bound_new,
                    upper: r.bound_upper,
                    sandwiched: lower < r.bound_new && r.bound_new < r.bound_upper,
                }
            })
            .collect()
    })
}
