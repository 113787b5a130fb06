//! Generalized Laguerre polynomials `L_n^ν`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{domain, Result};
use crate::scaled::{ldexp, ScaledValue};

const RENORM_HI: f64 = 1e200;

/// Streaming evaluator of `L_k^ν(t)` for `k = 0, 1, 2, …` via
/// `(k+1) L_{k+1} = (2k+1+ν−t) L_k − (k+ν) L_{k−1}`.
#[derive(Clone, Debug)]
pub struct LaguerreRecurrence {
    nu: f64,
    t: f64,
    degree: u64,
    prev: f64,
    cur: f64,
    exponent: i64,
}

impl LaguerreRecurrence {
    pub fn new(nu: f64, t: f64) -> Result<Self> {
        check_nu(nu)?;
        if !t.is_finite() {
            return domain(format!("laguerre argument must be finite, got {t}"));
        }
        Ok(LaguerreRecurrence {
            nu,
            t,
            degree: 0,
            prev: 0.0,
            cur: 1.0,
            exponent: 0,
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn value(&self) -> ScaledValue {
        ScaledValue::new(self.cur, self.exponent)
    }

    /// `|L_k|` relative to `max(|L_{k−1}|, |L_k|)`.
    pub fn relative_magnitude(&self) -> f64 {
        let m = self.prev.abs().max(self.cur.abs());
        if m == 0.0 {
            0.0
        } else {
            self.cur.abs() / m
        }
    }

    pub fn step(&mut self) {
        let k = self.degree as f64;
        let next = ((2.0 * k + 1.0 + self.nu - self.t) * self.cur - (k + self.nu) * self.prev) / (k + 1.0);
        self.prev = self.cur;
        self.cur = next;
        self.degree += 1;
        let m = self.prev.abs().max(self.cur.abs());
        if m > RENORM_HI || (m < 1.0 / RENORM_HI && m > 0.0) {
            let e = ScaledValue::from_f64(m).exponent();
            self.prev = ldexp(self.prev, -e);
            self.cur = ldexp(self.cur, -e);
            self.exponent += e;
        }
    }

    pub fn advance_to(&mut self, degree: u64) {
        while self.degree < degree {
            self.step();
        }
    }
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu.is_finite() && nu > -1.0) {
        return domain(format!("laguerre parameter must satisfy nu > -1, got {nu}"));
    }
    Ok(())
}

/// `L_n^ν(t)`.
pub fn laguerre(n: u64, nu: f64, t: f64) -> Result<ScaledValue> {
    let mut r = LaguerreRecurrence::new(nu, t)?;
    r.advance_to(n);
    Ok(r.value())
}

/// `L_n^ν(t)` as an `f64` (saturating outside the native range).
pub fn laguerre_f64(n: u64, nu: f64, t: f64) -> Result<f64> {
    laguerre(n, nu, t).map(ScaledValue::to_f64)
}

/// Left side of Fejér's formula, `x^{ν/2+1/4} e^{−x/2} L_n^ν(x)`.
pub fn laguerre_fejer_exact(n: u64, nu: f64, x: f64) -> Result<f64> {
    let scale = ScaledValue::from_ln((nu / 2.0 + 0.25) * x.ln() - x / 2.0, 1.0);
    Ok((scale * laguerre(n, nu, x)?).to_f64())
}

/// Fejér's main term `π^{−1/2} n^{ν/2−1/4} cos(2√(nx) − νπ/2 − π/4)`.
pub fn laguerre_fejer(n: u64, nu: f64, x: f64) -> f64 {
    let nf = n as f64;
    nf.powf(nu / 2.0 - 0.25) / PI.sqrt() * (2.0 * (nf * x).sqrt() - nu * FRAC_PI_2 - FRAC_PI_4).cos()
}

/// Partial sum `Σ_{n≤N} t^n L_n^ν(x)` of the generating function.
pub fn generating_partial_sum(n_max: u64, nu: f64, t: f64, x: f64) -> Result<f64> {
    let mut r = LaguerreRecurrence::new(nu, x)?;
    let mut sum = 0.0;
    let mut power = 1.0;
    loop {
        sum += power * r.value().to_f64();
        if r.degree() == n_max {
            return Ok(sum);
        }
        r.step();
        power *= t;
    }
}

/// `(1−t)^{−ν−1} e^{−tx/(1−t)}`.
pub fn generating_function(nu: f64, t: f64, x: f64) -> f64 {
    (1.0 - t).powf(-nu - 1.0) * (-t * x / (1.0 - t)).exp()
}
