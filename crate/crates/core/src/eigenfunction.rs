//! Fourier `+1`-eigenfunctions `f(x) = Σ α_n H_{4n}(√(2π)x) e^{−πx²}`,
//! their roots, `A(f)`, near-double roots and the `φ_n` perturbations.

use std::f64::consts::PI;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{fourier_even, integrate_with_breaks, truncation_radius, Integrand};
use crate::scaled::ScaledValue;
use crate::specfun::gamma::factorial_scaled;
use crate::specfun::hermite::{hermite_at_zero, hermite_weighted_many};

/// `|f(0)|` allowed for a function flagged as vanishing at the origin.
pub const ZERO_AT_ORIGIN_TOL: f64 = 1e-12;
/// Default sign-scan spacing in `x`.
pub const DEFAULT_GRID_STEP: f64 = 1e-3;
/// A local minimum this close to zero counts as a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-10;
/// Local minima below this fraction of `max |f|` are reported as near-double roots.
pub const NEAR_DOUBLE_FRACTION: f64 = 1e-2;
/// Beyond this `x` the sign scan switches from dense sampling to interval exclusion.
const DENSE_SCAN_LIMIT: f64 = 8.0;

/// Coefficient convention of a stored expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// `e_n(x) = H_{4n}(√(2π)x) e^{−πx²}`
    #[serde(rename = "unnormalized-H4n")]
    UnnormalizedH4n,
    /// orthonormal `ψ_{4n}`
    Psi,
}

/// A finite expansion over `e_n(x) = H_{4n}(√(2π)x) e^{−πx²}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPlusFunction {
    coeffs: Vec<f64>,
    normalized: bool,
}

/// Value of `e_n` at the origin, `H_{4n}(0) = (4n)!/(2n)!`.
pub fn basis_at_zero(n: usize) -> ScaledValue {
    hermite_at_zero(4 * n as u64)
}

/// `ψ_{4n} = psi_factor(n) · e_n`.
pub fn psi_factor(n: usize) -> f64 {
    let m = 4 * n as u64;
    (factorial_scaled(m).ldexp(m as i64).sqrt().recip().mul_f64(2f64.powf(0.25))).to_f64()
}

impl EigenPlusFunction {
    /// Plain expansion, no constraint at the origin.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return domain("coefficients must be a nonempty list of finite numbers");
        }
        Ok(EigenPlusFunction { coeffs, normalized: false })
    }

    /// Expansion that must satisfy `f(0) = Σ α_n H_{4n}(0) = 0`.
    pub fn normalized(coeffs: Vec<f64>) -> Result<Self> {
        let mut f = Self::new(coeffs)?;
        let v = f.value_at_zero();
        let scale = f.at_zero_scale();
        if v.abs() > ZERO_AT_ORIGIN_TOL * scale.max(1.0) {
            return domain(format!("f(0) = {v:e} is not zero (normalization requires |f(0)| <= 1e-12)"));
        }
        f.normalized = true;
        Ok(f)
    }

    /// Solves `coeffs[pivot]` from `f(0) = 0` and returns the normalized expansion.
    pub fn with_pivot(mut coeffs: Vec<f64>, pivot: usize) -> Result<Self> {
        if pivot >= coeffs.len() {
            return domain(format!("pivot index {pivot} outside coefficient range"));
        }
        coeffs[pivot] = 0.0;
        let rest: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a * basis_at_zero(n).to_f64())
            .sum();
        coeffs[pivot] = -rest / basis_at_zero(pivot).to_f64();
        Self::normalized(coeffs)
    }

    /// The explicit degree-12 candidate `α = (−113/100, 1/25, 1/3240, α_3)`, with `α_3` fixed by `f(0) = 0`.
    pub fn reference_candidate() -> Self {
        let a0 = -113.0 / 100.0;
        let a1 = 1.0 / 25.0;
        let a2 = 1.0 / 3240.0;
        let a3 = (-a0 - 12.0 * a1 - 1680.0 * a2) / 665_280.0;
        Self::normalized(vec![a0, a1, a2, a3]).expect("candidate vanishes at the origin")
    }

    /// From orthonormal `ψ_{4n}` coefficients.
    pub fn from_psi(psi_coeffs: &[f64]) -> Result<Self> {
        Self::new(psi_coeffs.iter().enumerate().map(|(n, &b)| b * psi_factor(n)).collect())
    }

    /// Coefficients over `ψ_{4n}`.
    pub fn to_psi(&self) -> Vec<f64> {
        self.coeffs.iter().enumerate().map(|(n, &a)| a / psi_factor(n)).collect()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Index of the last nonzero coefficient.
    pub fn top_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    fn value_at_zero(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a * basis_at_zero(n).to_f64())
            .sum()
    }

    fn at_zero_scale(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| (a * basis_at_zero(n).to_f64()).abs())
            .sum()
    }

    /// `f(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_scaled(x).to_f64()
    }

    /// `f(x)` without underflow at large `|x|`.
    pub fn eval_scaled(&self, x: f64) -> ScaledValue {
        let degrees: Vec<u64> = (0..self.coeffs.len() as u64).map(|n| 4 * n).collect();
        let vals = hermite_weighted_many(&degrees, (2.0 * PI).sqrt() * x);
        let mut acc = ScaledValue::ZERO;
        for (a, v) in self.coeffs.iter().zip(vals) {
            if *a != 0.0 {
                acc = acc + v.mul_f64(*a);
            }
        }
        acc
    }

    /// Plain `f64` evaluation `P(√(2π)x) e^{−πx²}`; only for moderate degree and `|x|`.
    fn eval_fast(&self, x: f64) -> f64 {
        self.poly((2.0 * PI).sqrt() * x) * (-PI * x * x).exp()
    }

    /// `P(y) = Σ α_n H_{4n}(y)`, so that `f(x) = P(√(2π)x) e^{−πx²}`.
    pub fn poly(&self, y: f64) -> f64 {
        let top = 4 * (self.coeffs.len() - 1);
        let (mut prev, mut cur) = (0.0, 1.0);
        let mut sum = self.coeffs[0];
        for k in 0..top {
            let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
            prev = cur;
            cur = next;
            if (k + 1) % 4 == 0 {
                sum += self.coeffs[(k + 1) / 4] * cur;
            }
        }
        sum
    }

    /// Monomial coefficients `c_k` of `P(y) = Σ c_k y^k`.
    pub fn monomial_coeffs(&self) -> Vec<f64> {
        let top = 4 * (self.coeffs.len() - 1);
        let mut out = vec![0.0; top + 1];
        let mut prev: Vec<f64> = vec![0.0; top + 2];
        let mut cur: Vec<f64> = vec![0.0; top + 2];
        cur[0] = 1.0;
        out[0] += self.coeffs[0];
        for k in 0..top {
            let mut next = vec![0.0; top + 2];
            for j in 0..=k {
                next[j + 1] += 2.0 * cur[j];
                next[j] -= 2.0 * k as f64 * prev[j];
            }
            prev = cur;
            cur = next;
            if (k + 1) % 4 == 0 {
                let a = self.coeffs[(k + 1) / 4];
                for j in 0..=top {
                    out[j] += a * cur[j];
                }
            }
        }
        out
    }

    /// `C` with `|f(x)| ≤ C e^{−πx²/2}`, from `max_y y^k e^{−y²/4} = (2k/e)^{k/2}`.
    pub fn envelope_constant(&self) -> f64 {
        self.monomial_coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let k = k as f64;
                let peak = if k == 0.0 { 1.0 } else { (2.0 * k / std::f64::consts::E).powf(k / 2.0) };
                c.abs() * peak
            })
            .sum()
    }

    /// Coefficient-file form in the requested basis.
    pub fn to_file(&self, basis: Basis) -> CoefficientFile {
        let coeffs = match basis {
            Basis::UnnormalizedH4n => self.coeffs.clone(),
            Basis::Psi => self.to_psi(),
        };
        CoefficientFile {
            coeffs: coeffs.into_iter().map(CoeffEntry::Real).collect(),
            basis,
        }
    }
}

/// Why the sign of `f` is known beyond the scanned range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailReason {
    LeadingTermDomination,
}

/// A strict local minimum of `f` past its largest root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalMinimum {
    pub location: f64,
    pub value: f64,
}

/// Certified sign structure of `f` on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootCertificate {
    /// Every positive root found, increasing.
    pub roots: Vec<f64>,
    /// `A(f)`; zero when `f ≥ 0` everywhere.
    pub largest_root: f64,
    /// Beyond this radius the leading term decides the sign.
    pub scan_bound: f64,
    pub tail_reason: TailReason,
    /// Local minima past the largest root with `|value| ≤ 1e−10`.
    pub double_roots: Vec<LocalMinimum>,
    /// Local minima past the largest root with value below 1% of `max |f|`.
    pub near_double_roots: Vec<LocalMinimum>,
    /// Every local minimum past the largest root.
    pub local_minima: Vec<LocalMinimum>,
}

/// Radius in `y` beyond which the top term of `P` dominates: the smaller of
/// the Cauchy bound and Fujiwara's bound.
pub fn domination_radius(c: &[f64]) -> f64 {
    let top = c.len() - 1;
    let lead = c[top].abs();
    let cauchy = 1.0 + c[..top].iter().map(|x| x.abs() / lead).fold(0.0, f64::max);
    let fujiwara = 2.0
        * (1..=top)
            .map(|k| {
                let r = (c[top - k] / c[top]).abs();
                let r = if k == top { r / 2.0 } else { r };
                r.powf(1.0 / k as f64)
            })
            .fold(0.0, f64::max);
    cauchy.min(fujiwara)
}

fn bisect_root(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut glo = g(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = g(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, g(x))
}

/// Sign-certifies `P` on `[y0, y1]` by bounding `|P'|`; returns the roots found.
fn exclude_roots(p: &[f64], y0: f64, y1: f64, tol: f64, roots: &mut Vec<f64>) -> Result<()> {
    let horner = |y: f64| p.iter().rev().fold(0.0, |acc, &c| acc * y + c);
    let dbound = |y: f64| {
        p.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * y + k as f64 * c.abs())
    };
    let mut stack = vec![(y0, y1)];
    let mut steps = 0usize;
    while let Some((a, b)) = stack.pop() {
        steps += 1;
        if steps > 10_000_000 {
            return Err(Error::Internal("tail exclusion did not terminate".into()));
        }
        let (pa, pb) = (horner(a), horner(b));
        if (pa > 0.0) != (pb > 0.0) {
            roots.push(bisect_root(horner, a, b, tol));
            continue;
        }
        // |P(y) − P(a)| ≤ max|P'|·(b − a) on [a, b]
        if pa.abs() > dbound(b) * (b - a) {
            continue;
        }
        if b - a < tol {
            // tangency inside a tolerance-width cell: record it as a root
            roots.push(0.5 * (a + b));
            continue;
        }
        let m = 0.5 * (a + b);
        stack.push((m, b));
        stack.push((a, m));
    }
    Ok(())
}

/// Certifies the positive roots of `f`, its largest root `A(f)`, and the local
/// minima past it.
pub fn root_certificate(f: &EigenPlusFunction, grid_step: f64, tol: f64) -> Result<RootCertificate> {
    if !(grid_step > 0.0 && tol > 0.0) {
        return domain("grid_step and tol must be positive");
    }
    let Some(top) = f.top_index() else {
        return domain("the zero function has no root certificate");
    };
    if f.coeffs[top] < 0.0 {
        return Err(Error::NegativeAtInfinity { leading: f.coeffs[top] });
    }
    let trimmed = EigenPlusFunction {
        coeffs: f.coeffs[..=top].to_vec(),
        normalized: f.normalized,
    };
    let sqrt2pi = (2.0 * PI).sqrt();
    let scan_bound = if top == 0 {
        0.0
    } else {
        domination_radius(&trimmed.monomial_coeffs()) / sqrt2pi
    };
    let mut roots = Vec::new();

    // dense sampling of f
    let dense_end = scan_bound.min(DENSE_SCAN_LIMIT);
    let n = (dense_end / grid_step).ceil() as usize + 1;
    let xs: Vec<f64> = (0..=n).map(|i| i as f64 * grid_step).collect();
    // P(y) stays far inside the f64 range for 4·top ≤ 120 and y ≤ 8√(2π)
    let fast = top <= 30;
    let g = |x: f64| if fast { trimmed.eval_fast(x) } else { trimmed.eval(x) };
    let vals: Vec<f64> = xs.par_iter().map(|&x| g(x)).collect();
    let sup = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut minima = Vec::new();
    for i in 1..xs.len() {
        let (a, b) = (vals[i - 1], vals[i]);
        if i > 1 && a != 0.0 && b != 0.0 && (a > 0.0) != (b > 0.0) {
            roots.push(bisect_root(g, xs[i - 1], xs[i], tol));
        } else if b == 0.0 {
            roots.push(xs[i]);
        }
        if i + 1 < xs.len() && vals[i] < vals[i - 1] && vals[i] <= vals[i + 1] {
            let (loc, value) = golden_min(g, xs[i - 1], xs[i + 1], tol.max(1e-12));
            if value < 0.0 && vals[i - 1] > 0.0 && vals[i + 1] > 0.0 {
                // two roots hidden inside one grid cell pair
                roots.push(bisect_root(g, xs[i - 1], loc, tol));
                roots.push(bisect_root(g, loc, xs[i + 1], tol));
            }
            minima.push(LocalMinimum { location: loc, value });
        }
    }

    // interval exclusion on P beyond the dense range
    if scan_bound > dense_end {
        let p = trimmed.monomial_coeffs();
        let mut tail_roots = Vec::new();
        exclude_roots(&p, dense_end * sqrt2pi, scan_bound * sqrt2pi, tol * sqrt2pi, &mut tail_roots)?;
        roots.extend(tail_roots.into_iter().map(|y| y / sqrt2pi));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= tol);
    let largest_root = roots.last().copied().unwrap_or(0.0);

    let local_minima: Vec<LocalMinimum> = minima
        .into_iter()
        .filter(|m| m.location > largest_root + tol && m.value >= -DOUBLE_ROOT_TOL)
        .collect();
    let double_roots = local_minima
        .iter()
        .copied()
        .filter(|m| m.value.abs() <= DOUBLE_ROOT_TOL)
        .collect();
    let near_double_roots = local_minima
        .iter()
        .copied()
        .filter(|m| m.value.abs() > DOUBLE_ROOT_TOL && m.value <= NEAR_DOUBLE_FRACTION * sup)
        .collect();
    Ok(RootCertificate {
        roots,
        largest_root,
        scan_bound,
        tail_reason: TailReason::LeadingTermDomination,
        double_roots,
        near_double_roots,
        local_minima,
    })
}

/// `φ_n(x) = e_{n+1}(x)/e_{n+1}(0) − e_n(x)/e_n(0)`.
pub fn phi(n: u64, x: f64) -> f64 {
    phi_scaled(n, x).to_f64()
}

/// [`phi`] without underflow at large `|x|`.
pub fn phi_scaled(n: u64, x: f64) -> ScaledValue {
    let (lo, hi) = (4 * n, 4 * n + 4);
    let vals = hermite_weighted_many(&[lo, hi], (2.0 * PI).sqrt() * x);
    vals[1] / hermite_at_zero(hi) - vals[0] / hermite_at_zero(lo)
}

fn integration_breaks(f: &EigenPlusFunction, tol: f64) -> Result<Vec<f64>> {
    let c = f.envelope_constant();
    let r = truncation_radius(c, 0.0, tol);
    let mut breaks = vec![0.0];
    if f.top_index().is_some_and(|t| f.coeffs[t] > 0.0) {
        let cert = root_certificate(f, DEFAULT_GRID_STEP, 1e-13)?;
        breaks.extend(cert.roots.iter().copied().filter(|&x| x < r));
    }
    breaks.push(r);
    Ok(breaks)
}

/// `‖f‖₁`, splitting at certified roots.
pub fn l1_norm(f: &EigenPlusFunction, tol: f64) -> Result<f64> {
    let breaks = integration_breaks(f, tol)?;
    Ok(2.0 * integrate_with_breaks(|x| f.eval(x).abs(), &breaks, tol / 2.0)?)
}

/// `f̂(y) = ∫ f(x) cos(2πxy) dx` by quadrature; equals `f(y)` for every expansion here.
pub fn fourier_transform(f: &EigenPlusFunction, y: f64, tol: f64) -> Result<f64> {
    let g = Integrand::gaussian(|x: f64| f.eval(x), f.envelope_constant());
    fourier_even(&g, y, tol)
}

/// `∫_ℝ f`.
pub fn integral(f: &EigenPlusFunction, tol: f64) -> Result<f64> {
    let breaks = integration_breaks(f, tol)?;
    Ok(2.0 * integrate_with_breaks(|x| f.eval(x), &breaks, tol / 2.0)?)
}

/// `(∫ f⁺, ∫ f⁻)` over `ℝ`.
pub fn positive_negative_parts(f: &EigenPlusFunction, tol: f64) -> Result<(f64, f64)> {
    let breaks = integration_breaks(f, tol)?;
    let pos = 2.0 * integrate_with_breaks(|x| f.eval(x).max(0.0), &breaks, tol / 2.0)?;
    let neg = 2.0 * integrate_with_breaks(|x| (-f.eval(x)).max(0.0), &breaks, tol / 2.0)?;
    Ok((pos, neg))
}

/// One coefficient in a file: a number or a rational/decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffEntry {
    Real(f64),
    Text(String),
}

impl CoeffEntry {
    pub fn value(&self) -> Result<f64> {
        match self {
            CoeffEntry::Real(x) => Ok(*x),
            CoeffEntry::Text(s) => parse_rational(s),
        }
    }
}

/// Parses `"p/q"` or a decimal literal.
pub fn parse_rational(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse coefficient {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            Ok(p / q)
        }
        None => s.parse().map_err(|_| bad()),
    }
}

/// `{"coeffs": [...], "basis": "unnormalized-H4n" | "psi"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientFile {
    pub coeffs: Vec<CoeffEntry>,
    #[serde(default = "default_basis")]
    pub basis: Basis,
}

fn default_basis() -> Basis {
    Basis::UnnormalizedH4n
}

impl CoefficientFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("invalid coefficient file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds the function; `normalized` demands `f(0) = 0`.
    pub fn to_function(&self, normalized: bool) -> Result<EigenPlusFunction> {
        let raw: Vec<f64> = self.coeffs.iter().map(CoeffEntry::value).collect::<Result<_>>()?;
        let f = match self.basis {
            Basis::UnnormalizedH4n => EigenPlusFunction::new(raw)?,
            Basis::Psi => EigenPlusFunction::from_psi(&raw)?,
        };
        if normalized {
            EigenPlusFunction::normalized(f.coeffs)
        } else {
            Ok(f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_values_at_zero() {
        let want = [1.0, 12.0, 1680.0, 665_280.0];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(basis_at_zero(n).to_f64(), *w);
        }
        let c = EigenPlusFunction::reference_candidate();
        assert!(c.eval(0.0).abs() < 1e-12);
        assert!(c.is_normalized());
    }

    #[test]
    fn quartic_root_in_closed_form() {
        let f = EigenPlusFunction::new(vec![0.0, 1.0]).unwrap();
        let x = ((3.0 + 6f64.sqrt()) / (4.0 * PI)).sqrt();
        assert!(f.eval(x).abs() < 1e-9);
        let cert = root_certificate(&f, DEFAULT_GRID_STEP, 1e-12).unwrap();
        assert!((cert.largest_root - x).abs() < 1e-10);
        assert_eq!(cert.roots.len(), 2);
    }

    #[test]
    fn monomial_coefficients_match_recurrence() {
        let f = EigenPlusFunction::new(vec![0.3, -0.2, 0.01, 1e-5]).unwrap();
        let c = f.monomial_coeffs();
        for i in 0..40 {
            let y = -4.0 + 0.2 * i as f64;
            let horner = c.iter().rev().fold(0.0, |acc, &k| acc * y + k);
            let rec = f.poly(y);
            assert!((horner - rec).abs() <= 1e-9 * rec.abs().max(1.0), "y={y}");
        }
        // H_4 = 16y⁴ − 48y² + 12
        let h4 = EigenPlusFunction::new(vec![0.0, 1.0]).unwrap().monomial_coeffs();
        assert_eq!(h4, vec![12.0, 0.0, -48.0, 0.0, 16.0]);
    }

    #[test]
    fn fast_path_matches_weighted_recurrence() {
        let c = EigenPlusFunction::reference_candidate();
        for i in 0..=80 {
            let x = 0.1 * i as f64;
            let (a, b) = (c.eval(x), c.eval_fast(x));
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300) + 1e-15, "x={x}");
        }
    }

    #[test]
    fn positive_gaussian_has_no_roots() {
        let f = EigenPlusFunction::new(vec![1.0]).unwrap();
        let cert = root_certificate(&f, DEFAULT_GRID_STEP, 1e-12).unwrap();
        assert!(cert.roots.is_empty());
        assert_eq!(cert.largest_root, 0.0);
    }

    #[test]
    fn certificate_errors() {
        let neg = EigenPlusFunction::new(vec![1.0, -1.0]).unwrap();
        assert!(matches!(root_certificate(&neg, 1e-3, 1e-12), Err(Error::NegativeAtInfinity { .. })));
        let zero = EigenPlusFunction::new(vec![0.0, 0.0]).unwrap();
        assert!(matches!(root_certificate(&zero, 1e-3, 1e-12), Err(Error::Domain(_))));
        assert!(EigenPlusFunction::normalized(vec![1.0]).is_err());
    }

    #[test]
    fn candidate_root_structure() {
        let c = EigenPlusFunction::reference_candidate();
        let cert = root_certificate(&c, DEFAULT_GRID_STEP, 1e-12).unwrap();
        assert!((cert.largest_root - 0.593_544_911_933_663).abs() < 1e-9);
        assert_eq!(cert.near_double_roots.len(), 1);
        let m = cert.near_double_roots[0];
        assert!((m.location - 0.899_084_084_141_028).abs() < 1e-6);
        assert!((m.value - 8.256_671_208_537e-4).abs() < 1e-9);
        assert!(cert.double_roots.is_empty());
    }

    #[test]
    fn phi_basics() {
        for n in 0..20 {
            assert!(phi(n, 0.0).abs() < 1e-15);
        }
        assert!(phi(0, 10.0) > 0.0);
        assert_eq!(phi_scaled(3, 40.0).signum(), 1.0);
        assert!(phi(6, 0.9) > 0.0);
    }

    #[test]
    fn psi_round_trip() {
        let c = EigenPlusFunction::reference_candidate();
        let back = EigenPlusFunction::from_psi(&c.to_psi()).unwrap();
        for (a, b) in c.coeffs().iter().zip(back.coeffs()) {
            assert!((a - b).abs() <= 1e-15 * a.abs());
        }
        // ψ_0 = 2^{1/4} e^{−πx²}
        assert!((psi_factor(0) - 2f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn coefficient_files() {
        let text = r#"{"coeffs": ["-113/100", "1/25", 0.5], "basis": "unnormalized-H4n"}"#;
        let file = CoefficientFile::parse(text).unwrap();
        let f = file.to_function(false).unwrap();
        assert_eq!(f.coeffs(), &[-1.13, 0.04, 0.5]);
        assert!(CoefficientFile::parse(r#"{"coeffs": [1], "extra": 2}"#).is_err());
        assert!(CoefficientFile::parse(r#"{"coeffs": ["1/0"]}"#).unwrap().to_function(false).is_err());
        let psi = CoefficientFile::parse(r#"{"coeffs": [1.0], "basis": "psi"}"#).unwrap();
        let g = psi.to_function(false).unwrap();
        assert!((g.eval(0.0) - 2f64.powf(0.25)).abs() < 1e-15);
        let round = serde_json::to_string(&f.to_file(Basis::Psi)).unwrap();
        assert!(round.contains("\"psi\""));
    }

    #[test]
    fn integrals() {
        let g = EigenPlusFunction::new(vec![1.0]).unwrap();
        assert!((l1_norm(&g, 1e-10).unwrap() - 1.0).abs() < 1e-9);
        let c = EigenPlusFunction::reference_candidate();
        assert!(integral(&c, 1e-10).unwrap().abs() < 1e-8);
        let (p, n) = positive_negative_parts(&c, 1e-10).unwrap();
        assert!((p - n).abs() < 1e-8);
        assert!((l1_norm(&c, 1e-10).unwrap() - 2.247_752_251_414_321_6).abs() < 1e-8);
    }
}
