//! Greedy coordinate search over eigenfunction coefficients, minimizing the
//! certified largest root.
//!
//! Coordinates are `β_n = α_n H_{4n}(0)`, the contributions to `f(0)`, so one
//! step size suits every index. The highest nonzero coefficient of the start
//! is the pivot that keeps `Σ β_n = 0`; every other index, including the
//! inactive ones up to `N`, is a search coordinate.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::eigenfunction::{basis_at_zero, root_certificate, EigenPlusFunction, DEFAULT_GRID_STEP};
use crate::error::{domain, Error, Result};

/// The proven lower bound on `A(f)` in one dimension.
pub const PROVEN_LOWER_BOUND: f64 = 0.45;

/// Search parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchConfig {
    /// Highest basis index `N`; the start is padded with zeros up to it.
    pub max_index: usize,
    pub initial_step: f64,
    pub shrink: f64,
    pub min_step: f64,
    /// Repeated moves allowed along one coordinate within a pass.
    pub moves_per_coordinate: usize,
    pub seed: u64,
    /// A trial is accepted only if it lowers the objective by more than this.
    pub accept_tol: f64,
    pub grid_step: f64,
    pub root_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_index: 3,
            initial_step: 1e-2,
            shrink: 0.5,
            min_step: 1e-7,
            moves_per_coordinate: 8,
            seed: 0,
            accept_tol: 0.0,
            grid_step: DEFAULT_GRID_STEP,
            root_tol: 1e-12,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.initial_step > self.min_step && self.min_step > 0.0) {
            return domain("step schedule requires initial_step > min_step > 0");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return domain("shrink factor must lie in (0, 1)");
        }
        if self.max_index == 0 {
            return domain("max_index must be at least 1 so a pivot exists");
        }
        if self.moves_per_coordinate == 0 {
            return domain("moves_per_coordinate must be at least 1");
        }
        if !(self.grid_step > 0.0 && self.root_tol > 0.0 && self.accept_tol >= 0.0) {
            return domain("grid_step and root_tol must be positive, accept_tol nonnegative");
        }
        Ok(())
    }
}

/// Value of the search objective.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "detail")]
pub enum Objective {
    /// Certified largest root `A(f)`.
    Feasible(f64),
    /// `A(f)` is infinite, or `f` never changes sign.
    Infeasible(String),
}

impl Objective {
    pub fn value(&self) -> Option<f64> {
        match self {
            Objective::Feasible(v) => Some(*v),
            Objective::Infeasible(_) => None,
        }
    }
}

fn objective_with(f: &EigenPlusFunction, grid_step: f64, tol: f64) -> Result<Objective> {
    match root_certificate(f, grid_step, tol) {
        Ok(cert) if cert.roots.is_empty() => Ok(Objective::Infeasible(
            "f never changes sign, so it cannot satisfy f(0) = 0 with zero mean".into(),
        )),
        Ok(cert) => Ok(Objective::Feasible(cert.largest_root)),
        Err(Error::NegativeAtInfinity { leading }) => {
            Ok(Objective::Infeasible(format!("negative leading coefficient {leading:e}")))
        }
        Err(e) => Err(e),
    }
}

/// Certified largest root; infeasible when `f` is eventually negative or never changes sign.
pub fn objective(f: &EigenPlusFunction) -> Result<Objective> {
    objective_with(f, DEFAULT_GRID_STEP, 1e-12)
}

/// One accepted move (or the starting point, with `coordinate = None`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogEntry {
    pub pass: usize,
    pub coordinate: Option<usize>,
    pub step: f64,
    pub objective: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub function: EigenPlusFunction,
    pub pivot: usize,
    pub start_objective: f64,
    pub objective: f64,
    /// `objective − 0.45`; no finite expansion is an extremizer, so this stays positive.
    pub gap_to_lower_bound: f64,
    pub passes: usize,
    pub evaluations: usize,
    pub log: Vec<LogEntry>,
}

fn to_alpha(beta: &[f64]) -> Vec<f64> {
    beta.iter()
        .enumerate()
        .map(|(n, b)| b / basis_at_zero(n).to_f64())
        .collect()
}

/// Greedy coordinate descent with a shrinking step.
pub fn greedy_search(start: &EigenPlusFunction, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let n_top = cfg.max_index.max(start.coeffs().len() - 1);
    let mut alpha = start.coeffs().to_vec();
    alpha.resize(n_top + 1, 0.0);
    let start_f = EigenPlusFunction::new(alpha.clone())?;
    let start_obj = match objective_with(&start_f, cfg.grid_step, cfg.root_tol)? {
        Objective::Feasible(v) => v,
        Objective::Infeasible(why) => return domain(format!("infeasible start: {why}")),
    };
    let mut beta: Vec<f64> = alpha
        .iter()
        .enumerate()
        .map(|(n, a)| a * basis_at_zero(n).to_f64())
        .collect();

    let eval_beta = |beta: &[f64]| -> Result<Option<f64>> {
        let f = EigenPlusFunction::new(to_alpha(beta))?;
        Ok(objective_with(&f, cfg.grid_step, cfg.root_tol)?.value())
    };

    let pivot = start.top_index().ok_or_else(|| Error::Domain("zero start".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..=n_top).filter(|&k| k != pivot).collect();
    let mut best = start_obj;
    let mut step = cfg.initial_step;
    let mut pass = 0;
    let mut evaluations = 1;
    let mut log = vec![LogEntry { pass: 0, coordinate: None, step, objective: best }];
    while step >= cfg.min_step {
        pass += 1;
        order.shuffle(&mut rng);
        let mut improved = false;
        for &k in &order {
            for _ in 0..cfg.moves_per_coordinate {
                let trial = |sign: f64| {
                    let mut b = beta.clone();
                    b[k] += sign * step;
                    b[pivot] = 0.0;
                    b[pivot] = -b.iter().sum::<f64>();
                    b
                };
                let (plus, minus) = (trial(1.0), trial(-1.0));
                let (vp, vm) = rayon::join(|| eval_beta(&plus), || eval_beta(&minus));
                evaluations += 2;
                let candidates = [(vp?, plus), (vm?, minus)];
                // prefer the larger decrease, the + direction on ties
                let mut chosen: Option<(f64, Vec<f64>)> = None;
                for (v, b) in candidates {
                    if let Some(v) = v {
                        if v < best - cfg.accept_tol && chosen.as_ref().is_none_or(|(c, _)| v < *c) {
                            chosen = Some((v, b));
                        }
                    }
                }
                match chosen {
                    Some((v, b)) => {
                        best = v;
                        beta = b;
                        improved = true;
                        log.push(LogEntry { pass, coordinate: Some(k), step, objective: v });
                    }
                    None => break,
                }
            }
        }
        if !improved {
            step *= cfg.shrink;
        }
    }
    let function = EigenPlusFunction::normalized(to_alpha(&beta))?;
    Ok(SearchOutcome {
        function,
        pivot,
        start_objective: start_obj,
        objective: best,
        gap_to_lower_bound: best - PROVEN_LOWER_BOUND,
        passes: pass,
        evaluations,
        log,
    })
}

/// Writes the log as JSON lines.
pub fn write_log(log: &[LogEntry], mut out: impl Write) -> std::io::Result<()> {
    for entry in log {
        serde_json::to_writer(&mut out, entry)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
