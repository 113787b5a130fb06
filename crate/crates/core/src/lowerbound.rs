//! Numerical ingredients of the one-dimensional lower bound `A(f) ≥ 0.45`.
//!
//! Everything is built from the kernel
//! `Υ_A(x) = sin(2πAx)/(2πx) + (13/400)(8πx² − 2) e^{−πx²}`
//! and its measure-constrained sublevel sets. `Υ_A` is even, so level sets
//! are computed on `x ≥ 0` and mirrored.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, Integrand};

/// Step of the tabulation used to locate stationary points of `Υ_A`.
pub const PROFILE_GRID_STEP: f64 = 1e-3;
/// Step for the finite-difference derivatives of `h1`, `h2` in `τ`.
pub const FD_STEP: f64 = 1e-4;
/// The endpoint `τ = 13/500` where the inequality is shown to fail.
pub const TAU_STAR: f64 = 13.0 / 500.0;
/// Furthest the outer domain is ever explored.
pub const OUTER_CAP: f64 = 1.6e5;

const GAUSS_WEIGHT: f64 = 13.0 / 400.0;
const INTEGRAL_TOL: f64 = 1e-13;

/// `sin(ax)/x`, continuous at `0`.
fn sinc_scaled(a: f64, x: f64) -> f64 {
    if x.abs() < 1e-5 {
        let ax = a * x;
        a * (1.0 - ax * ax / 6.0 * (1.0 - ax * ax / 20.0))
    } else {
        (a * x).sin() / x
    }
}

/// `Υ_A(x)`, with `Υ_A(0) = A − 13/200`.
pub fn upsilon(a: f64, x: f64) -> f64 {
    sinc_scaled(2.0 * PI * a, x) / (2.0 * PI) + GAUSS_WEIGHT * (8.0 * PI * x * x - 2.0) * (-PI * x * x).exp()
}

/// Bound on `|Υ_A(x)|` for `x > 0`, used to truncate the outer domain.
fn upsilon_envelope(x: f64) -> f64 {
    1.0 / (2.0 * PI * x) + GAUSS_WEIGHT * (8.0 * PI * x * x + 2.0) * (-PI * x * x).exp()
}

/// Pointwise upper bound `1/2 + [sin(2π(A−1/4)x) − sin(2πAx)]/(πx)` on `[0, A]`.
pub fn pointwise_ub(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 0.5) {
        return domain(format!("pointwise bound needs 0 < A <= 1/2, got {a}"));
    }
    if !(0.0..=a).contains(&x) {
        return domain(format!("pointwise bound needs 0 <= x <= A, got x = {x}"));
    }
    let s = sinc_scaled(2.0 * PI * (a - 0.25), x) - sinc_scaled(2.0 * PI * a, x);
    Ok(0.5 + s / PI)
}

/// `∫_{1/4}^A` of the pointwise bound, an upper bound for `τ`.
pub fn tau_ub(a: f64) -> Result<f64> {
    if !(0.25..=0.5).contains(&a) {
        return domain(format!("tau bound needs 1/4 <= A <= 1/2, got {a}"));
    }
    let f = Integrand::compact(|x: f64| pointwise_ub(a, x.min(a)).unwrap_or(f64::NAN));
    integrate(&f, 0.25, a, 1e-10)
}

/// Disjoint, ordered closed intervals.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(l, r) in &intervals {
            if !(l.is_finite() && r.is_finite() && l < r) {
                return domain(format!("interval [{l}, {r}] is empty or not finite"));
            }
        }
        if intervals.windows(2).any(|w| w[0].1 >= w[1].0) {
            return domain("intervals must be disjoint and ordered");
        }
        Ok(IntervalSet { intervals })
    }

    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_measure(&self) -> f64 {
        self.intervals.iter().map(|(l, r)| r - l).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(l, r)| l <= x && x <= r)
    }

    /// Union with the reflection through the origin, for a set in `[0, ∞)`.
    pub fn mirror(&self) -> IntervalSet {
        let mut out: Vec<(f64, f64)> = self.intervals.iter().rev().map(|&(l, r)| (-r, -l)).collect();
        for &(l, r) in &self.intervals {
            match out.last_mut() {
                Some(last) if last.1 >= l => last.1 = r,
                _ => out.push((l, r)),
            }
        }
        IntervalSet { intervals: out }
    }

    /// `∫ f` over the set.
    pub fn integrate(&self, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
        let per = tol / self.intervals.len().max(1) as f64;
        let g = Integrand::compact(f);
        self.intervals.iter().map(|&(l, r)| integrate(&g, l, r, per)).sum()
    }

    /// Appends `[l, r]`, merging with the last interval when they touch.
    fn push(&mut self, l: f64, r: f64) {
        if r <= l {
            return;
        }
        match self.intervals.last_mut() {
            Some(last) if last.1 >= l => last.1 = last.1.max(r),
            _ => self.intervals.push((l, r)),
        }
    }
}

/// Where a level set of `Υ_A` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    /// `[−A, A]`.
    Inner,
    /// `ℝ ∖ [−A, A]`.
    Outer,
}

/// `σΥ_A` on `[lo, hi] ⊂ [0, ∞)` split at its stationary points into monotone pieces.
#[derive(Clone, Debug)]
pub struct UpsilonProfile {
    a: f64,
    sign: f64,
    lo: f64,
    hi: f64,
    /// Piece endpoints and the function values there.
    knots: Vec<(f64, f64)>,
}

impl UpsilonProfile {
    /// Tabulates `σΥ_A` on `[lo, hi]`, refining every interior local extremum.
    pub fn new(a: f64, sign: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 0.5) {
            return domain(format!("kernel parameter must satisfy 0 < A <= 1/2, got {a}"));
        }
        if !(0.0 <= lo && lo < hi && hi.is_finite()) {
            return domain(format!("profile range [{lo}, {hi}] is invalid"));
        }
        let g = |x: f64| sign * upsilon(a, x);
        let n = ((hi - lo) / PROFILE_GRID_STEP).ceil() as usize;
        let xs: Vec<f64> = (0..=n).map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 }).collect();
        let vs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
        let mut knots = vec![(lo, vs[0])];
        for i in 1..n {
            let is_min = vs[i] <= vs[i - 1] && vs[i] <= vs[i + 1];
            let is_max = vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1];
            if is_min || is_max {
                let s = if is_min { 1.0 } else { -1.0 };
                let x = golden_min(|x| s * g(x), xs[i - 1], xs[i + 1]);
                if x > knots.last().unwrap().0 {
                    knots.push((x, g(x)));
                }
            }
        }
        if hi > knots.last().unwrap().0 {
            knots.push((hi, vs[n]));
        }
        Ok(UpsilonProfile { a, sign, lo, hi, knots })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Stationary points and endpoints, with values of `σΥ_A`.
    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    fn eval(&self, x: f64) -> f64 {
        self.sign * upsilon(self.a, x)
    }

    pub fn min_value(&self) -> f64 {
        self.knots.iter().map(|k| k.1).fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.knots.iter().map(|k| k.1).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `{σΥ_A ≤ c} ∩ [lo, hi]`.
    pub fn sublevel(&self, c: f64) -> IntervalSet {
        let mut set = IntervalSet::empty();
        for w in self.knots.windows(2) {
            let ((x0, v0), (x1, v1)) = (w[0], w[1]);
            match (v0 <= c, v1 <= c) {
                (true, true) => set.push(x0, x1),
                (false, false) => {}
                (true, false) => set.push(x0, self.crossing(x0, x1, c)),
                (false, true) => set.push(self.crossing(x0, x1, c), x1),
            }
        }
        set
    }

    /// Level crossing on a monotone piece with a sign change of `σΥ_A − c`.
    fn crossing(&self, mut x0: f64, mut x1: f64, c: f64) -> f64 {
        let below_at_left = self.eval(x0) <= c;
        for _ in 0..200 {
            let m = 0.5 * (x0 + x1);
            if m <= x0 || m >= x1 {
                break;
            }
            if (self.eval(m) <= c) == below_at_left {
                x0 = m;
            } else {
                x1 = m;
            }
        }
        0.5 * (x0 + x1)
    }

    /// Level `c` and set `{σΥ_A ≤ c}` of the given measure, by bisection on `c`.
    pub fn level_for_measure(&self, target: f64) -> Result<(IntervalSet, f64)> {
        let full = self.hi - self.lo;
        if !(target >= 0.0 && target <= full * (1.0 + 1e-15)) {
            return domain(format!("target measure {target} outside [0, {full}]"));
        }
        let (mut lo, mut hi) = (self.min_value(), self.max_value());
        if target == 0.0 {
            return Ok((IntervalSet::empty(), lo));
        }
        if target >= full {
            return Ok((self.sublevel(hi), hi));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sublevel(mid).total_measure() < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // the upper end always carries at least the target measure
        let set = self.sublevel(hi);
        let got = set.total_measure();
        if (got - target).abs() > 1e-9 {
            return Err(Error::Internal(format!(
                "level set measure {got} missed target {target} at level {hi}"
            )));
        }
        Ok((set, hi))
    }

    /// `∫ σΥ_A` over a set.
    pub fn integrate_over(&self, set: &IntervalSet) -> Result<f64> {
        let (a, s) = (self.a, self.sign);
        set.integrate(|x| s * upsilon(a, x), INTEGRAL_TOL)
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if (b - a).abs() < 1e-15 * (1.0 + a.abs()) {
            break;
        }
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

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.25 && a <= 0.5) {
        return domain(format!("A must lie in (1/4, 1/2], got {a}"));
    }
    Ok(())
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=0.25).contains(&tau) {
        return domain(format!("tau must lie in [0, 1/4], got {tau}"));
    }
    Ok(())
}

/// Half-line level set of `σΥ_A` on the outer region, grown until the set is enclosed.
fn outer_level(a: f64, sign: f64, half_target: f64) -> Result<(IntervalSet, f64)> {
    let mut x_max = 4.0;
    loop {
        let profile = UpsilonProfile::new(a, sign, a, x_max)?;
        let (set, c) = profile.level_for_measure(half_target)?;
        if c < 0.0 && upsilon_envelope(x_max) < -c {
            return Ok((set, c));
        }
        x_max *= 2.0;
        if x_max > OUTER_CAP {
            return domain(format!("outer level set of measure {half_target} is not enclosed within |x| <= {OUTER_CAP}"));
        }
    }
}

/// `{Υ_A ≤ c}` within the region, of total measure `target`, and its level `c`.
pub fn optimal_sublevel(a: f64, region: Region, target: f64) -> Result<(IntervalSet, f64)> {
    if !(a > 0.0 && a <= 0.5) {
        return domain(format!("kernel parameter must satisfy 0 < A <= 1/2, got {a}"));
    }
    if !(target >= 0.0 && target.is_finite()) {
        return domain(format!("target measure must be finite and nonnegative, got {target}"));
    }
    let (half, c) = match region {
        Region::Inner => UpsilonProfile::new(a, 1.0, 0.0, a)?.level_for_measure(target / 2.0)?,
        Region::Outer => outer_level(a, 1.0, target / 2.0)?,
    };
    Ok((half.mirror(), c))
}

/// `{Υ_A ≥ c} ∩ [−A, A]` of total measure `target`, and its level `c`.
pub fn optimal_superlevel(a: f64, target: f64) -> Result<(IntervalSet, f64)> {
    if !(a > 0.0 && a <= 0.5) {
        return domain(format!("kernel parameter must satisfy 0 < A <= 1/2, got {a}"));
    }
    let (half, c) = UpsilonProfile::new(a, -1.0, 0.0, a)?.level_for_measure(target / 2.0)?;
    Ok((half.mirror(), -c))
}

/// `h1`, `h2` and the supremum term for one `A`, with the inner tabulations cached.
#[derive(Clone, Debug)]
pub struct LowerBoundMachine {
    a: f64,
    inner_low: UpsilonProfile,
    inner_high: UpsilonProfile,
}

impl LowerBoundMachine {
    pub fn new(a: f64) -> Result<Self> {
        check_a(a)?;
        Ok(LowerBoundMachine {
            a,
            inner_low: UpsilonProfile::new(a, 1.0, 0.0, a)?,
            inner_high: UpsilonProfile::new(a, -1.0, 0.0, a)?,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Minimum of `∫_I Υ_A` over `I ⊂ [−A, A]` with `|I| = 2τ`.
    pub fn h1(&self, tau: f64) -> Result<f64> {
        check_tau(tau)?;
        let (set, _) = self.inner_low.level_for_measure(tau)?;
        Ok(2.0 * self.inner_low.integrate_over(&set)?)
    }

    /// Level `c1` of the optimal inner set.
    pub fn c1(&self, tau: f64) -> Result<f64> {
        check_tau(tau)?;
        Ok(self.inner_low.level_for_measure(tau)?.1)
    }

    /// Minimum of `∫_I Υ_A` over `I ⊂ ℝ ∖ [−A, A]` with `|I| = 1/2 − 2τ`.
    pub fn h2(&self, tau: f64) -> Result<f64> {
        Ok(self.h2_with_level(tau)?.0)
    }

    /// `h2` and the level `c2` of its optimal set.
    pub fn h2_with_level(&self, tau: f64) -> Result<(f64, f64)> {
        check_tau(tau)?;
        let (set, c) = outer_level(self.a, 1.0, 0.25 - tau)?;
        let a = self.a;
        Ok((2.0 * set.integrate(|x| upsilon(a, x), INTEGRAL_TOL)?, c))
    }

    /// Maximum of `∫_I Υ_A` over `I ⊂ [−A, A]` with `|I| = 1/2`.
    pub fn sup_term(&self) -> Result<f64> {
        let (set, _) = self.inner_high.level_for_measure(0.25)?;
        Ok(-2.0 * self.inner_high.integrate_over(&set)?)
    }

    pub fn check(&self, tau: f64) -> Result<InequalityCheck> {
        let h1 = self.h1(tau)?;
        let h2 = self.h2(tau)?;
        let sup_term = self.sup_term()?;
        let margin = (-0.25 + tau) - (h1 + h2 - sup_term);
        Ok(InequalityCheck { a: self.a, tau, h1, h2, sup_term, margin, holds: margin >= 0.0 })
    }

    /// Finite-difference `dh1/dτ` and `dh2/dτ`; one-sided at the ends of `[0, 1/4]`.
    pub fn derivatives(&self, tau: f64) -> Result<DerivativeEstimate> {
        check_tau(tau)?;
        let lo = (tau - FD_STEP).max(0.0);
        let hi = (tau + FD_STEP).min(0.25);
        let w = hi - lo;
        let dh1 = (self.h1(hi)? - self.h1(lo)?) / w;
        let dh2 = (self.h2(hi)? - self.h2(lo)?) / w;
        Ok(DerivativeEstimate { a: self.a, tau, dh1, dh2 })
    }
}

pub fn h1(a: f64, tau: f64) -> Result<f64> {
    LowerBoundMachine::new(a)?.h1(tau)
}

pub fn h2(a: f64, tau: f64) -> Result<f64> {
    LowerBoundMachine::new(a)?.h2(tau)
}

pub fn sup_term(a: f64) -> Result<f64> {
    LowerBoundMachine::new(a)?.sup_term()
}

/// `−1/4 + τ ≥ h1 + h2 − sup_term`, with `margin` = left minus right.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub a: f64,
    pub tau: f64,
    pub h1: f64,
    pub h2: f64,
    pub sup_term: f64,
    pub margin: f64,
    pub holds: bool,
}

pub fn check_inequality(a: f64, tau: f64) -> Result<InequalityCheck> {
    LowerBoundMachine::new(a)?.check(tau)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivativeEstimate {
    pub a: f64,
    pub tau: f64,
    pub dh1: f64,
    pub dh2: f64,
}

/// Grid check of the two rough pointwise bounds on `Υ_A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelBoundCheck {
    pub a: f64,
    pub grid_points: usize,
    /// Largest value on `[0, 1/10]`; must not exceed `0.39`.
    pub max_near_origin: f64,
    /// Smallest value on `[0, 10] ∖ [7/5, 9/5]`; must not drop below `−0.09`.
    pub min_off_window: f64,
    pub holds: bool,
}

/// Samples `[0, 10]` at `points` nodes. Beyond 10, `|Υ_A| < 0.02` outright.
pub fn kernel_bound_check(a: f64, points: usize) -> Result<KernelBoundCheck> {
    if !(a > 0.0 && a <= 0.5) || points < 2 {
        return domain("kernel bound check needs 0 < A <= 1/2 and at least two points");
    }
    let mut max_near = f64::NEG_INFINITY;
    let mut min_off = f64::INFINITY;
    for i in 0..points {
        let x = 10.0 * i as f64 / (points - 1) as f64;
        let v = upsilon(a, x);
        if x <= 0.1 {
            max_near = max_near.max(v);
        }
        if !(1.4..=1.8).contains(&x) {
            min_off = min_off.min(v);
        }
    }
    Ok(KernelBoundCheck {
        a,
        grid_points: points,
        max_near_origin: max_near,
        min_off_window: min_off,
        holds: max_near <= 0.39 && min_off >= -0.09,
    })
}

/// Inputs of the full verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBoundConfig {
    pub a_grid: Vec<f64>,
    pub tau: f64,
    pub derivative_a: Vec<f64>,
    pub derivative_taus: Vec<f64>,
    pub bound_points: usize,
}

impl Default for LowerBoundConfig {
    fn default() -> Self {
        LowerBoundConfig {
            a_grid: linspace(0.26, 0.4499, 200),
            tau: TAU_STAR,
            derivative_a: vec![0.30, 0.40, 0.449],
            derivative_taus: linspace(0.0, 0.05, 21),
            bound_points: 10_000,
        }
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    pub tau_ub_at_045: f64,
    pub tau_ub_below_tau_star: bool,
    pub kernel_bounds: Vec<KernelBoundCheck>,
    pub derivatives: Vec<DerivativeEstimate>,
    pub max_dh1: f64,
    pub max_dh2: f64,
    /// Largest `dh1 + dh2` seen for `τ < 13/500`.
    pub lipschitz_estimate: f64,
    pub margins: Vec<InequalityCheck>,
    pub fails_everywhere: bool,
    /// Largest jump in margin between neighbouring `A`.
    pub max_adjacent_margin_jump: f64,
}

/// Runs every check; the grids are processed in parallel.
pub fn verify(cfg: &LowerBoundConfig) -> Result<LowerBoundReport> {
    let tau_ub_at_045 = tau_ub(0.45)?;
    let kernel_bounds = cfg
        .derivative_a
        .par_iter()
        .map(|&a| kernel_bound_check(a, cfg.bound_points))
        .collect::<Result<Vec<_>>>()?;
    let derivatives: Vec<DerivativeEstimate> = cfg
        .derivative_a
        .par_iter()
        .map(|&a| {
            let m = LowerBoundMachine::new(a)?;
            cfg.derivative_taus.iter().map(|&t| m.derivatives(t)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let margins = cfg
        .a_grid
        .par_iter()
        .map(|&a| check_inequality(a, cfg.tau))
        .collect::<Result<Vec<_>>>()?;
    let max_dh1 = derivatives.iter().map(|d| d.dh1).fold(f64::NEG_INFINITY, f64::max);
    let max_dh2 = derivatives.iter().map(|d| d.dh2).fold(f64::NEG_INFINITY, f64::max);
    let lipschitz_estimate = derivatives
        .iter()
        .filter(|d| d.tau < TAU_STAR)
        .map(|d| d.dh1 + d.dh2)
        .fold(f64::NEG_INFINITY, f64::max);
    let max_adjacent_margin_jump = margins
        .windows(2)
        .map(|w| (w[1].margin - w[0].margin).abs())
        .fold(0.0, f64::max);
    Ok(LowerBoundReport {
        tau_ub_at_045,
        tau_ub_below_tau_star: tau_ub_at_045 < TAU_STAR,
        kernel_bounds,
        derivatives,
        max_dh1,
        max_dh2,
        lipschitz_estimate,
        fails_everywhere: margins.iter().all(|m| !m.holds),
        margins,
        max_adjacent_margin_jump,
    })
}
