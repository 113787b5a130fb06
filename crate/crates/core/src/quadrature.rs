//! Globally adaptive Gauss–Kronrod (7/15) quadrature, plus the real-line,
//! cosine-transform and radial-transform drivers built on top of it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::specfun::bessel::bessel_j_raw;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Maximum number of bisections applied to any initial panel.
pub const MAX_DEPTH: u32 = 40;
const MAX_INTERVALS: usize = 200_000;
/// Smallest truncation radius used for Gaussian tails.
pub const MIN_TRUNCATION: f64 = 6.0;

/// How an integrand behaves away from the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// Only ever integrated over finite intervals.
    Compact,
    /// `|f(x)| ≤ C e^{−πx²/2}`.
    GaussianTail { c: f64 },
    /// `|f(x)| ≤ C e^{−πx²/2}`, with oscillations of the given frequency
    /// (cycles per unit length) that dictate panel widths.
    OscillatoryGaussian { c: f64, frequency: f64 },
}

/// A real function of one variable with a declared decay class.
#[derive(Clone, Copy)]
pub struct Integrand<F> {
    f: F,
    decay: Decay,
}

impl<F: Fn(f64) -> f64> Integrand<F> {
    pub fn new(f: F, decay: Decay) -> Self {
        Integrand { f, decay }
    }

    pub fn compact(f: F) -> Self {
        Self::new(f, Decay::Compact)
    }

    pub fn gaussian(f: F, c: f64) -> Self {
        Self::new(f, Decay::GaussianTail { c })
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}

/// One G7K15 panel: Kronrod estimate and its error estimate.
fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv = [0.0f64; 14];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    let (res_k, res_abs, res_asc) = (res_k * h, res_abs * h.abs(), res_asc * h.abs());
    let mut err = (res_k - res_g * h).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (res_k, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integration over the union of consecutive `breaks` intervals,
/// always bisecting the panel with the largest error estimate.
fn adaptive(f: &impl Fn(f64) -> f64, breaks: &[f64], tol: f64) -> Result<f64> {
    let mut heap = BinaryHeap::new();
    let mut done_value = 0.0;
    let mut done_err = 0.0;
    let mut open_err = 0.0;
    for w in breaks.windows(2) {
        let (value, err) = kronrod(f, w[0], w[1]);
        open_err += err;
        heap.push(Panel { a: w[0], b: w[1], value, err, depth: 0 });
    }
    // done_err only grows, so once it alone exceeds tol there is no point refining
    while open_err + done_err > tol && done_err <= tol {
        let Some(worst) = heap.pop() else { break };
        open_err -= worst.err;
        if worst.depth >= MAX_DEPTH || heap.len() >= MAX_INTERVALS {
            done_value += worst.value;
            done_err += worst.err;
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, err) = kronrod(f, a, b);
            open_err += err;
            heap.push(Panel { a, b, value, err, depth: worst.depth + 1 });
        }
        if heap.len() % 1024 == 0 {
            // resynchronize the running sum against drift
            open_err = heap.iter().map(|p| p.err).sum();
        }
    }
    // sum left to right so the result does not depend on heap layout
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let estimate = done_value + panels.iter().map(|p| p.value).sum::<f64>();
    let error_bound = done_err + panels.iter().map(|p| p.err).sum::<f64>();
    if !estimate.is_finite() {
        return Err(Error::Accuracy { estimate, error_bound, tolerance: tol });
    }
    if error_bound > tol {
        return Err(Error::Accuracy { estimate, error_bound, tolerance: tol });
    }
    Ok(estimate)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    Ok(())
}

/// Splits `[a, b]` into equal panels no wider than `max_width`.
fn panel_breaks(a: f64, b: f64, max_width: f64) -> Vec<f64> {
    let n = ((b - a) / max_width).ceil().max(1.0) as usize;
    (0..=n).map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 }).collect()
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &Integrand<F>, a: f64, b: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return domain(format!("integration bounds must satisfy a <= b, got [{a}, {b}]"));
    }
    if a == b {
        return Ok(0.0);
    }
    let width = match f.decay {
        Decay::OscillatoryGaussian { frequency, .. } if frequency > 0.0 => 1.0 / (4.0 * frequency),
        _ => b - a,
    };
    adaptive(&f.f, &panel_breaks(a, b, width), tol)
}

/// `∫_a^b f` with mandatory interior break points (e.g. known roots or kinks).
pub fn integrate_with_breaks(f: impl Fn(f64) -> f64, breaks: &[f64], tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[0] <= w[1])) {
        return domain("break points must be nondecreasing with at least two entries");
    }
    let pts: Vec<f64> = breaks
        .iter()
        .copied()
        .fold(Vec::new(), |mut v, x| {
            if v.last() != Some(&x) {
                v.push(x);
            }
            v
        });
    if pts.len() < 2 {
        return Ok(0.0);
    }
    adaptive(&f, &pts, tol)
}

/// Smallest `R ≥ 6` with `C R^p e^{−πR²/2} < tol/10`.
pub fn truncation_radius(c: f64, power: f64, tol: f64) -> f64 {
    let envelope = |r: f64| c * r.powf(power) * (-PI * r * r / 2.0).exp();
    let mut r = MIN_TRUNCATION;
    if envelope(r) < tol / 10.0 {
        return r;
    }
    // envelope is decreasing past √(2p/π), so a bracket plus bisection finds the crossing
    let mut hi = r;
    while envelope(hi) >= tol / 10.0 {
        hi *= 1.5;
    }
    let mut lo = r.max((2.0 * power / PI).sqrt());
    for _ in 0..100 {
        r = 0.5 * (lo + hi);
        if envelope(r) < tol / 10.0 {
            hi = r;
        } else {
            lo = r;
        }
    }
    hi
}

fn gaussian_constant(decay: Decay) -> Result<(f64, f64)> {
    match decay {
        Decay::GaussianTail { c } => Ok((c, 0.0)),
        Decay::OscillatoryGaussian { c, frequency } => Ok((c, frequency)),
        Decay::Compact => domain("integration over an unbounded range needs a Gaussian-tail integrand"),
    }
}

/// `∫_0^∞ f` for a Gaussian-tail integrand, truncated at [`truncation_radius`].
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: &Integrand<F>, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let (c, _) = gaussian_constant(f.decay)?;
    let r = truncation_radius(c, 0.0, tol);
    integrate(f, 0.0, r, tol)
}

/// `∫_ℝ f` for a Gaussian-tail integrand.
pub fn integrate_line<F: Fn(f64) -> f64>(f: &Integrand<F>, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let (c, _) = gaussian_constant(f.decay)?;
    let r = truncation_radius(c, 0.0, tol);
    integrate(f, -r, r, tol)
}

/// `∫_ℝ f(x) cos(2πxy) dx = 2∫_0^∞ f(x) cos(2πxy) dx` for even Gaussian-tail `f`.
pub fn fourier_even<F: Fn(f64) -> f64>(f: &Integrand<F>, y: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let (c, _) = gaussian_constant(f.decay)?;
    let g = Integrand::new(
        |x: f64| 2.0 * f.eval(x) * (2.0 * PI * x * y).cos(),
        Decay::OscillatoryGaussian { c: 2.0 * c, frequency: y.abs() },
    );
    let r = truncation_radius(2.0 * c, 0.0, tol);
    integrate(&g, 0.0, r, tol)
}

/// Fourier transform at radius `s` of the radial function on `ℝ^d` with
/// Gaussian-tail profile `f`, from `s^ν f̂(s) = 2π ∫_0^∞ r^{ν+1} f(r) J_ν(2πrs) dr`, `ν = d/2 − 1`.
pub fn radial_fourier<F: Fn(f64) -> f64>(f: &Integrand<F>, s: f64, d: u32, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if d < 2 {
        return domain(format!("radial transform needs dimension d >= 2, got {d}"));
    }
    if !(s > 0.0 && s.is_finite()) {
        return domain(format!("radial transform needs s > 0, got {s}"));
    }
    let (c, _) = gaussian_constant(f.decay)?;
    let nu = d as f64 / 2.0 - 1.0;
    let scale = 2.0 * PI / s.powf(nu);
    // the integral is scaled by 2π s^{−ν}, so tighten its tolerance accordingly
    let inner_tol = tol / scale;
    let g = Integrand::new(
        |r: f64| r.powf(nu + 1.0) * f.eval(r) * bessel_j_raw(nu, 2.0 * PI * r * s),
        Decay::OscillatoryGaussian { c, frequency: s },
    );
    let r = truncation_radius(c, nu + 1.0, inner_tol);
    Ok(scale * integrate(&g, 0.0, r, inner_tol)?)
}
