//! Hermite polynomials and functions.
//!
//! Everything here is built on one primitive: the three-term recurrence
//! `H_{k+1} = 2x H_k − 2k H_{k−1}` run with a shared binary exponent, and with
//! the Gaussian weight `e^{−x²/2}` folded into the state at evenly spaced
//! steps. The pair `(H_{k−1}, H_k)` is renormalized whenever its magnitude
//! leaves `2^{±300}`, so degree 20000 at `|x| ≤ 10` costs nothing special.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use serde::Serialize;

use crate::scaled::{ldexp, ScaledValue};
use crate::specfun::gamma::{factorial_scaled, gamma_scaled, rising_product};

const RENORM_HI: f64 = 1e90; // ≈ 2^300
const RENORM_LO: f64 = 1e-90;
/// Each folded weight factor is at least `2^{-MAX_FOLD_BITS}`.
const MAX_FOLD_BITS: f64 = 200.0;

/// Streaming evaluator of `e^{−x²/2} H_k(x)` for `k = 0, 1, 2, …`.
#[derive(Clone, Debug)]
pub struct HermiteRecurrence {
    x: f64,
    degree: u64,
    prev: f64,
    cur: f64,
    exponent: i64,
    /// Number of weight factors `e^{−x²/(2m)}` still to be applied.
    folds_left: u64,
    fold_count: u64,
    fold_ln: f64,
    fold_factor: f64,
    /// Degree spacing between folds.
    fold_every: u64,
}

impl HermiteRecurrence {
    /// Prepares a recurrence at `x` that will be advanced up to degree `max_degree`.
    pub fn new(x: f64, max_degree: u64) -> Self {
        let total_bits = x * x / 2.0 / LN_2;
        let folds = ((total_bits / MAX_FOLD_BITS).ceil() as u64).max(1);
        let fold_ln = -x * x / 2.0 / folds as f64;
        let fold_every = (max_degree / folds).max(1);
        let mut r = HermiteRecurrence {
            x,
            degree: 0,
            prev: 0.0,
            cur: 1.0,
            exponent: 0,
            folds_left: folds,
            fold_count: folds,
            fold_ln,
            fold_factor: fold_ln.exp(),
            fold_every,
        };
        // fold the first factor in at degree 0 so short runs stay weighted too
        r.fold();
        r
    }

    fn fold(&mut self) {
        if self.folds_left == 0 {
            return;
        }
        self.prev *= self.fold_factor;
        self.cur *= self.fold_factor;
        self.folds_left -= 1;
        self.renormalize();
    }

    fn renormalize(&mut self) {
        let m = self.prev.abs().max(self.cur.abs());
        if m == 0.0 || (RENORM_LO..=RENORM_HI).contains(&m) {
            return;
        }
        let e = ScaledValue::from_f64(m).exponent();
        self.prev = ldexp(self.prev, -e);
        self.cur = ldexp(self.cur, -e);
        self.exponent += e;
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// `e^{−x²/2} H_k(x)` at the current degree `k`.
    pub fn value(&self) -> ScaledValue {
        let remaining = self.fold_ln * self.folds_left as f64;
        ScaledValue::new(self.cur, self.exponent) * ScaledValue::from_ln(remaining, 1.0)
    }

    /// `e^{−x²/2} H_{k−1}(x)` (zero at degree 0).
    pub fn previous(&self) -> ScaledValue {
        let remaining = self.fold_ln * self.folds_left as f64;
        ScaledValue::new(self.prev, self.exponent) * ScaledValue::from_ln(remaining, 1.0)
    }

    /// Sign of `H_k(x)`; the weight never changes it.
    pub fn sign(&self) -> f64 {
        if self.cur == 0.0 {
            0.0
        } else {
            self.cur.signum()
        }
    }

    /// `|H_k|` relative to `max(|H_{k−1}|, |H_k|)`; small values mean the sign is fragile.
    pub fn relative_magnitude(&self) -> f64 {
        let m = self.prev.abs().max(self.cur.abs());
        if m == 0.0 {
            0.0
        } else {
            self.cur.abs() / m
        }
    }

    /// Advances from degree `k` to `k + 1`.
    pub fn step(&mut self) {
        let k = self.degree as f64;
        let next = 2.0 * self.x * self.cur - 2.0 * k * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.degree += 1;
        self.renormalize();
        let applied = self.fold_count - self.folds_left;
        if self.folds_left > 0 && self.degree >= applied * self.fold_every {
            self.fold();
        }
    }

    /// Advances to `degree` (no-op if already there or beyond).
    pub fn advance_to(&mut self, degree: u64) {
        while self.degree < degree {
            self.step();
        }
    }
}

/// `e^{−x²/2} H_n(x)`.
pub fn hermite_weighted(n: u64, x: f64) -> ScaledValue {
    let mut r = HermiteRecurrence::new(x, n);
    r.advance_to(n);
    r.value()
}

/// `e^{−x²/2} H_k(x)` for every `k` in `degrees` (must be nondecreasing), from a single recurrence pass.
pub fn hermite_weighted_many(degrees: &[u64], x: f64) -> Vec<ScaledValue> {
    let max = degrees.last().copied().unwrap_or(0);
    let mut r = HermiteRecurrence::new(x, max);
    degrees
        .iter()
        .map(|&d| {
            r.advance_to(d);
            r.value()
        })
        .collect()
}

/// `H_{2m}(0) = (−1)^m (2m)!/m!`; zero for odd degree.
pub fn hermite_at_zero(n: u64) -> ScaledValue {
    if n % 2 == 1 {
        return ScaledValue::ZERO;
    }
    let m = n / 2;
    let v = rising_product(m + 1, n);
    if m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `2^{1/4} (2^n n!)^{−1/2}`, the orthonormalizing factor of `ψ_n`.
pub fn psi_normalizer(n: u64) -> ScaledValue {
    factorial_scaled(n)
        .ldexp(n as i64)
        .sqrt()
        .recip()
        .mul_f64(2f64.powf(0.25))
}

/// Hermite function `ψ_n(x) = 2^{1/4}(2^n n!)^{−1/2} H_n(√(2π)x) e^{−πx²}`,
/// orthonormal in `L²(ℝ)` and a Fourier eigenfunction with eigenvalue `(−i)^n`.
pub fn psi(n: u64, x: f64) -> f64 {
    (psi_normalizer(n) * hermite_weighted(n, (2.0 * PI).sqrt() * x)).to_f64()
}

/// Truncation order of the large-`n` cosine expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticOrder {
    /// `cos(√(2n+1) x − nπ/2)`
    Leading,
    /// plus `x³/(6√(2n+1)) sin(√(2n+1) x − nπ/2)`
    Corrected,
}

/// Large-`n` approximation to `Γ(n/2+1)/Γ(n+1) · e^{−x²/2} H_n(x)`.
pub fn hermite_asymptotic(n: u64, x: f64, order: AsymptoticOrder) -> f64 {
    let w = ((2 * n + 1) as f64).sqrt();
    // n mod 4 keeps the phase exact for large n
    let phase = w * x - (n % 4) as f64 * FRAC_PI_2;
    let main = phase.cos();
    match order {
        AsymptoticOrder::Leading => main,
        AsymptoticOrder::Corrected => main + x.powi(3) / (6.0 * w) * phase.sin(),
    }
}

/// Exact value of the quantity approximated by [`hermite_asymptotic`].
pub fn hermite_normalized_exact(n: u64, x: f64) -> f64 {
    let half = gamma_scaled(n as f64 / 2.0 + 1.0).expect("positive argument");
    (half / factorial_scaled(n) * hermite_weighted(n, x)).to_f64()
}
