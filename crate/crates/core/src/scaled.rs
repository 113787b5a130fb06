//! Mantissa/exponent arithmetic for magnitudes outside the `f64` range.
//!
//! Hermite recurrences at degree ~20000 and factorial normalizers such as
//! `Γ(4n+1)/Γ(2n+1)` overflow native floats long before the quantities we
//! actually care about (ratios, signs) become meaningless. [`ScaledValue`]
//! carries a base-2 exponent in an `i64` next to an `f64` mantissa in
//! `[1, 2)` (or its negative), so products and quotients never overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

/// `mantissa · 2^exponent` with `|mantissa| ∈ [1, 2)`, or exactly zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaledValue {
    mantissa: f64,
    exponent: i64,
}

/// Splits a finite nonzero `x` into `(m, e)` with `|m| ∈ [1, 2)` and `x = m·2^e`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal
        let (m, e) = frexp(x * f64::from_bits((1023 + 64) << 52));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    (m, biased - 1023)
}

/// `x · 2^e` without intermediate overflow or premature underflow.
pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    if e > 2100 {
        return x * f64::INFINITY;
    }
    if e < -2200 {
        return x * 0.0;
    }
    while e > 1000 {
        x *= f64::from_bits((1023 + 1000) << 52);
        e -= 1000;
    }
    while e < -1000 {
        x *= f64::from_bits((1023 - 1000) << 52);
        e += 1000;
    }
    x * f64::from_bits(((1023 + e) as u64) << 52)
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        mantissa: 0.0,
        exponent: 0,
    };
    pub const ONE: ScaledValue = ScaledValue {
        mantissa: 1.0,
        exponent: 0,
    };

    /// Builds `m · 2^e` for any finite `m`, renormalizing the mantissa.
    pub fn new(m: f64, e: i64) -> Self {
        let (mm, ee) = frexp(m);
        if mm == 0.0 {
            return Self::ZERO;
        }
        if !mm.is_finite() {
            return ScaledValue {
                mantissa: mm,
                exponent: 0,
            };
        }
        ScaledValue {
            mantissa: mm,
            exponent: e + ee,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    /// `sign · 2^log2_abs`.
    pub fn from_log2(log2_abs: f64, sign: f64) -> Self {
        if log2_abs == f64::NEG_INFINITY || sign == 0.0 {
            return Self::ZERO;
        }
        let e = log2_abs.floor();
        let m = (log2_abs - e).exp2();
        Self::new(sign.signum() * m, e as i64)
    }

    /// `sign · e^ln_abs`.
    pub fn from_ln(ln_abs: f64, sign: f64) -> Self {
        Self::from_log2(ln_abs / std::f64::consts::LN_2, sign)
    }

    pub fn mantissa(self) -> f64 {
        self.mantissa
    }

    pub fn exponent(self) -> i64 {
        self.exponent
    }

    /// Nearest `f64`; saturates to `±inf` or flushes to `±0` outside the native range.
    pub fn to_f64(self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.mantissa.is_finite()
    }

    /// `-1`, `0` or `1`.
    pub fn signum(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn abs(self) -> Self {
        ScaledValue {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn log2_abs(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.abs().log2() + self.exponent as f64
    }

    pub fn ln_abs(self) -> f64 {
        self.log2_abs() * std::f64::consts::LN_2
    }

    /// Multiplies by `2^k` exactly.
    pub fn ldexp(self, k: i64) -> Self {
        if self.is_zero() {
            return self;
        }
        ScaledValue {
            mantissa: self.mantissa,
            exponent: self.exponent + k,
        }
    }

    pub fn recip(self) -> Self {
        Self::new(1.0 / self.mantissa, -self.exponent)
    }

    /// Square root of a nonnegative value (NaN mantissa otherwise).
    pub fn sqrt(self) -> Self {
        if self.is_zero() {
            return self;
        }
        if self.exponent.rem_euclid(2) == 0 {
            Self::new(self.mantissa.sqrt(), self.exponent / 2)
        } else {
            Self::new((2.0 * self.mantissa).sqrt(), (self.exponent - 1).div_euclid(2))
        }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        Self::new(self.mantissa * x, self.exponent)
    }

    /// Compares magnitudes only.
    pub fn cmp_abs(self, other: Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.exponent.cmp(&other.exponent).then(
                self.mantissa
                    .abs()
                    .partial_cmp(&other.mantissa.abs())
                    .unwrap_or(Ordering::Equal),
            ),
        }
    }

    /// `|self / other|` as an `f64`, usable for relative comparisons of huge values.
    pub fn ratio(self, other: Self) -> f64 {
        (self / other).to_f64()
    }
}

impl From<f64> for ScaledValue {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Div for ScaledValue {
    type Output = ScaledValue;
    fn div(self, rhs: Self) -> Self {
        Self::new(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> Self {
        ScaledValue {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Add for ScaledValue {
    type Output = ScaledValue;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= rhs.exponent {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = small.exponent - big.exponent;
        Self::new(big.mantissa + ldexp(small.mantissa, shift), big.exponent)
    }
}

impl Sub for ScaledValue {
    type Output = ScaledValue;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl PartialOrd for ScaledValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if !self.mantissa.is_finite() || !other.mantissa.is_finite() {
            return self.to_f64().partial_cmp(&other.to_f64());
        }
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.partial_cmp(&b);
        }
        let by_abs = self.cmp_abs(*other);
        Some(if a < 0.0 { by_abs.reverse() } else { by_abs })
    }
}

impl fmt::Display for ScaledValue {
    /// Decimal scientific notation, valid far outside the `f64` range.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() || !self.is_finite() {
            return write!(f, "{:e}", self.mantissa);
        }
        let log10 = self.mantissa.abs().log10() + self.exponent as f64 * std::f64::consts::LOG10_2;
        let mut dec = log10.floor();
        let mut m = 10f64.powf(log10 - dec);
        if m >= 10.0 {
            m /= 10.0;
            dec += 1.0;
        }
        let sign = if self.mantissa < 0.0 { "-" } else { "" };
        match f.precision() {
            Some(p) => write!(f, "{sign}{m:.p$}e{dec}"),
            None => write!(f, "{sign}{m}e{dec}"),
        }
    }
}
