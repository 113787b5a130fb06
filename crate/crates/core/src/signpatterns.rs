//! Sign patterns of Hermite polynomials, `φ_n` and Laguerre polynomials at
//! fixed points, and return times of linear flows on the torus.
//!
//! Exact recurrences decide every sign. Asymptotic formulas are reported
//! alongside as predictors only.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::eigenfunction::phi_scaled;
use crate::error::{domain, Error, Result};
use crate::specfun::hermite::HermiteRecurrence;
use crate::specfun::laguerre::LaguerreRecurrence;

/// Below this relative magnitude a computed sign is not trusted.
pub const SIGN_UNCERTAIN: f64 = 1e-13;
/// Patterns longer than this are searched but not tabulated by frequency.
pub const MAX_FREQUENCY_POINTS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: f64) -> Option<Sign> {
        if x > 0.0 {
            Some(Sign::Plus)
        } else if x < 0.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A nonempty sequence of strict signs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern(Vec<Sign>);

impl SignPattern {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        if signs.is_empty() {
            return domain("a sign pattern needs at least one sign");
        }
        Ok(SignPattern(signs))
    }

    pub fn uniform(sign: Sign, len: usize) -> Result<Self> {
        SignPattern::new(vec![sign; len])
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    /// Parses `+,+,-` (commas optional).
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::Domain(format!("invalid sign character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SignPattern::new(signs)
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The linear flow `n ↦ n·a` on `(ℝ/2πℤ)^k`, sampled at integer times.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowSpec {
    pub direction: Vec<f64>,
    pub epsilon: f64,
    pub n_max: u64,
}

impl FlowSpec {
    pub fn validate(&self) -> Result<()> {
        if self.direction.is_empty() || self.direction.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return domain("flow direction needs finite positive components");
        }
        if !(self.epsilon > 0.0 && self.epsilon < PI) {
            return domain(format!("epsilon must lie in (0, pi), got {}", self.epsilon));
        }
        Ok(())
    }
}

/// Representative of `x mod 2π` in `(−π, π]`.
pub fn torus_representative(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Euclidean distance from `n·a` to the origin of the torus.
pub fn torus_distance(direction: &[f64], n: u64) -> f64 {
    direction
        .iter()
        .map(|&a| torus_representative(n as f64 * a).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Every `1 ≤ n ≤ n_max` with `‖n·a mod 2π‖ ≤ ε`, in increasing order.
pub fn torus_return_times(spec: &FlowSpec) -> Result<Vec<u64>> {
    spec.validate()?;
    Ok((1..=spec.n_max)
        .into_par_iter()
        .filter(|&n| torus_distance(&spec.direction, n) <= spec.epsilon)
        .collect())
}

/// Which Hermite degrees a search visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HermiteDegree {
    /// `4n`.
    FourN,
    /// `4n + 2`.
    FourNPlusTwo,
}

impl HermiteDegree {
    pub fn degree(self, n: u64) -> u64 {
        match self {
            HermiteDegree::FourN => 4 * n,
            HermiteDegree::FourNPlusTwo => 4 * n + 2,
        }
    }
}

/// Leading-order sign predictor `cos(√(2m+1) x − mπ/2)` for `H_m(x)`.
pub fn hermite_predictor(m: u64, x: f64) -> f64 {
    let phase = (m % 4) as f64 * FRAC_PI_2;
    ((2.0 * m as f64 + 1.0).sqrt() * x - phase).cos()
}

/// Leading-order sign predictor `−sin(4√(πn) x)` for `φ_n(x)`.
pub fn phi_predictor(n: u64, x: f64) -> f64 {
    -(4.0 * (PI * n as f64).sqrt() * x).sin()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternFrequency {
    pub pattern: SignPattern,
    pub count: u64,
    pub frequency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignSearchResult {
    pub points: Vec<f64>,
    pub pattern: SignPattern,
    pub n_min: u64,
    pub n_max: u64,
    pub matches: Vec<u64>,
    pub predictor_matches: Vec<u64>,
    /// Indices where some sign could not be decided.
    pub uncertain: Vec<u64>,
    /// Observed patterns over the indices with all signs decided.
    pub frequencies: Vec<PatternFrequency>,
}

fn check_points(points: &[f64]) -> Result<()> {
    if points.is_empty() {
        return domain("at least one point is required");
    }
    if points.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
        return domain("points must be finite and positive");
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].contains(a) {
            return domain(format!("point {a} is repeated"));
        }
    }
    Ok(())
}

fn check_range(n_min: u64, n_max: u64) -> Result<()> {
    if n_min > n_max {
        return domain(format!("empty index range {n_min}..={n_max}"));
    }
    Ok(())
}

/// Decided sign at each index of `n_min..=n_max` for one point, `None` when uncertain.
type SignColumn = Vec<Option<Sign>>;

fn assemble(
    points: &[f64],
    pattern: SignPattern,
    n_min: u64,
    n_max: u64,
    columns: Vec<SignColumn>,
    predictor: impl Fn(u64, f64) -> f64,
) -> SignSearchResult {
    let mut matches = Vec::new();
    let mut predictor_matches = Vec::new();
    let mut uncertain = Vec::new();
    let mut counts: BTreeMap<Vec<Sign>, u64> = BTreeMap::new();
    let mut decided = 0u64;
    for (i, n) in (n_min..=n_max).enumerate() {
        let row: Option<Vec<Sign>> = columns.iter().map(|c| c[i]).collect();
        match row {
            None => uncertain.push(n),
            Some(row) => {
                if row == pattern.0 {
                    matches.push(n);
                }
                if points.len() <= MAX_FREQUENCY_POINTS {
                    *counts.entry(row).or_default() += 1;
                }
                decided += 1;
            }
        }
        let predicted: Option<Vec<Sign>> = points.iter().map(|&a| Sign::of(predictor(n, a))).collect();
        if predicted.as_deref() == Some(pattern.signs()) {
            predictor_matches.push(n);
        }
    }
    let frequencies = counts
        .into_iter()
        .map(|(signs, count)| PatternFrequency {
            pattern: SignPattern(signs),
            count,
            frequency: count as f64 / decided.max(1) as f64,
        })
        .collect();
    SignSearchResult { points: points.to_vec(), pattern, n_min, n_max, matches, predictor_matches, uncertain, frequencies }
}

/// Indices `n` in `n_min..=n_max` where `H_m(a_j)`, `m = 4n` or `4n + 2`, has sign `pattern[j]` for every `j`.
pub fn hermite_sign_search(
    points: &[f64],
    pattern: &SignPattern,
    degrees: HermiteDegree,
    n_min: u64,
    n_max: u64,
) -> Result<SignSearchResult> {
    check_points(points)?;
    check_range(n_min, n_max)?;
    if pattern.len() != points.len() {
        return domain(format!("pattern has {} signs for {} points", pattern.len(), points.len()));
    }
    let columns: Vec<SignColumn> = points
        .par_iter()
        .map(|&a| {
            let mut r = HermiteRecurrence::new(a, degrees.degree(n_max));
            (n_min..=n_max)
                .map(|n| {
                    r.advance_to(degrees.degree(n));
                    if r.relative_magnitude() < SIGN_UNCERTAIN {
                        None
                    } else {
                        Sign::of(r.sign())
                    }
                })
                .collect()
        })
        .collect();
    Ok(assemble(points, pattern.clone(), n_min, n_max, columns, |n, a| {
        hermite_predictor(degrees.degree(n), a)
    }))
}

/// Indices `n ≤ n_max` with `φ_n(a_j) > 1e−13` for every `j`.
pub fn phi_sign_search(points: &[f64], n_max: u64) -> Result<SignSearchResult> {
    check_points(points)?;
    let pattern = SignPattern::uniform(Sign::Plus, points.len())?;
    let columns: Vec<SignColumn> = points
        .par_iter()
        .map(|&a| {
            (0..=n_max)
                .map(|n| {
                    let v = phi_scaled(n, a).to_f64();
                    if v > SIGN_UNCERTAIN {
                        Some(Sign::Plus)
                    } else if v < -SIGN_UNCERTAIN {
                        Some(Sign::Minus)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    Ok(assemble(points, pattern, 0, n_max, columns, phi_predictor))
}

/// Sign of `cos(π(ν+1/2)/2)`, the sign Laguerre polynomials realize at all points infinitely often.
pub fn laguerre_expected_sign(nu: f64) -> Result<Sign> {
    if !(nu.is_finite() && nu > -1.0) {
        return domain(format!("laguerre parameter must satisfy nu > -1, got {nu}"));
    }
    let s = nu + 0.5;
    if s.fract() == 0.0 && (s as i64).rem_euclid(2) == 1 {
        return domain(format!("nu + 1/2 = {s} is an odd integer, where the cosine vanishes"));
    }
    Sign::of((FRAC_PI_2 * s).cos()).ok_or_else(|| Error::Internal("cosine vanished".into()))
}

/// Fejér predictor `cos(2√(nx) − νπ/2 − π/4)` for the sign of `L_n^ν(x)`.
pub fn laguerre_predictor(nu: f64, n: u64, x: f64) -> f64 {
    (2.0 * (n as f64 * x).sqrt() - nu * FRAC_PI_2 - PI / 4.0).cos()
}

/// Indices `n ≤ n_max` where every `L_n^ν(a_j)` has the expected sign.
pub fn laguerre_sign_search(nu: f64, points: &[f64], n_max: u64) -> Result<SignSearchResult> {
    let expected = laguerre_expected_sign(nu)?;
    check_points(points)?;
    let pattern = SignPattern::uniform(expected, points.len())?;
    let columns = points
        .par_iter()
        .map(|&a| {
            let mut r = LaguerreRecurrence::new(nu, a)?;
            Ok((0..=n_max)
                .map(|n| {
                    r.advance_to(n);
                    if r.relative_magnitude() < SIGN_UNCERTAIN {
                        None
                    } else {
                        Sign::of(r.value().signum())
                    }
                })
                .collect())
        })
        .collect::<Result<Vec<SignColumn>>>()?;
    Ok(assemble(points, pattern, 0, n_max, columns, |n, a| laguerre_predictor(nu, n, a)))
}

/// Fractional-part bookkeeping for the pattern `(+,+,−,+)` at the points `(1, 2, 3, 4)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionPrediction {
    pub y: f64,
    /// `{y}, {2y}, {3y}, {4y}`.
    pub fractional_parts: [f64; 4],
    /// Sign of `cos(2π k y)` read off the fractional parts (`+` outside `[1/4, 3/4]`).
    pub pattern: SignPattern,
    /// `{y}, {2y}, {4y}` all avoid `[1/4, 3/4]`.
    pub outer_constraints_hold: bool,
    /// Distance from `{3y}` to `[1/4, 3/4]`.
    pub third_distance: f64,
    /// `(+,+,−,+)` is not predicted.
    pub excluded: bool,
}

pub fn obstruction_predictor(y: f64) -> ObstructionPrediction {
    let frac = |k: f64| (k * y).rem_euclid(1.0);
    let fractional_parts = [frac(1.0), frac(2.0), frac(3.0), frac(4.0)];
    let inside = |f: f64| (0.25..=0.75).contains(&f);
    let signs: Vec<Sign> = fractional_parts
        .iter()
        .map(|&f| if inside(f) { Sign::Minus } else { Sign::Plus })
        .collect();
    let f3 = fractional_parts[2];
    let third_distance = if inside(f3) { 0.0 } else { (0.25 - f3).max(f3 - 0.75) };
    let target = [Sign::Plus, Sign::Plus, Sign::Minus, Sign::Plus];
    ObstructionPrediction {
        y,
        fractional_parts,
        excluded: signs != target,
        pattern: SignPattern(signs),
        outer_constraints_hold: !inside(fractional_parts[0]) && !inside(fractional_parts[1]) && !inside(fractional_parts[3]),
        third_distance,
    }
}
