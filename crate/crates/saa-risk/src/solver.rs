//! Sample-average and population solvers for the joint program
//! inf_theta inf_x (1/n) sum Phi*(G(theta, Z_i) + x) - x over a compact box.
//!
//! The outer search is derivative-free: an exhaustive tensor grid over the
//! box followed by coordinate pattern-search refinement of the best grid
//! seeds. Goals may be discontinuous in theta, which rules out gradient
//! methods; the parameter dimension is small, so grids are affordable.

use crate::divergence::{oce_value_fast, DivergencePair, EmpiricalSample};
use crate::error::{Error, Result};
use crate::models::GoalModel;

/// Tuning for the two-stage outer search.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SolveConfig {
    pub grid_points_per_dim: usize,
    pub multistart_k: usize,
    pub pattern_iters: usize,
    pub pattern_tol: f64,
    pub inner_tol: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            grid_points_per_dim: 33,
            multistart_k: 5,
            pattern_iters: 200,
            pattern_tol: 1e-8,
            inner_tol: 1e-10,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_dim < 3 {
            return Err(Error::InvalidConfig(
                "grid_points_per_dim must be at least 3".into(),
            ));
        }
        if self.multistart_k == 0 || self.pattern_iters == 0 {
            return Err(Error::InvalidConfig(
                "multistart_k and pattern_iters must be positive".into(),
            ));
        }
        if !(self.pattern_tol > 0.0 && self.inner_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Solution of the sample-average problem.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SaaSolution {
    pub theta_hat: Vec<f64>,
    pub x_hat: f64,
    pub value: f64,
    /// Width of the inner minimizer interval at the optimum; positive width
    /// means the certainty-equivalent shift is not unique there.
    pub x_interval_width: f64,
    pub evals: usize,
    pub restarts_agree: bool,
}

impl SaaSolution {
    /// True when the inner minimizer is a point up to tolerance.
    pub fn x_unique(&self) -> bool {
        self.x_interval_width <= 1e-6
    }
}

/// Solution of the population problem.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PopulationSolution {
    pub theta_star: Vec<f64>,
    pub x_star: f64,
    pub value: f64,
    /// False when two refined optima differ in theta but tie in value,
    /// i.e. the uniqueness assumption of the asymptotic theory fails.
    pub unique: bool,
    pub evals: usize,
}

/// Risk value of the transformed empirical distribution at a fixed theta,
/// together with the inner minimizer (interval midpoint) and interval width.
pub fn saa_objective(
    goal: &GoalModel,
    spec: &DivergencePair,
    sample: &[Vec<f64>],
    theta: &[f64],
) -> Result<(f64, f64, f64)> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let transformed = EmpiricalSample::new(goal.transform(theta, sample))?;
    let r = oce_value_fast(&transformed, spec, 1e-10)?;
    Ok((r.value, r.x_mid(), r.x_hi - r.x_lo))
}

/// Tensor grid over the box with `points` nodes per dimension (endpoints
/// included).
fn grid_points(lower: &[f64], upper: &[f64], points: usize) -> Vec<Vec<f64>> {
    let m = lower.len();
    let mut out = Vec::with_capacity(points.pow(m as u32));
    let mut idx = vec![0usize; m];
    loop {
        out.push(
            idx.iter()
                .enumerate()
                .map(|(k, &i)| {
                    lower[k] + (upper[k] - lower[k]) * i as f64 / (points - 1) as f64
                })
                .collect(),
        );
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < points {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == m {
                return out;
            }
        }
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Prefer smaller value; break near-ties (within 1e-12) lexicographically.
fn better(value: f64, theta: &[f64], best_value: f64, best_theta: &[f64]) -> bool {
    if value < best_value - 1e-12 {
        return true;
    }
    if (value - best_value).abs() <= 1e-12 {
        return lex_less(theta, best_theta);
    }
    false
}

struct PatternOutcome {
    theta: Vec<f64>,
    value: f64,
    evals: usize,
}

/// Coordinate pattern search with step halving, clamped to the box.
fn pattern_search(
    objective: &mut dyn FnMut(&[f64]) -> Result<f64>,
    lower: &[f64],
    upper: &[f64],
    start: Vec<f64>,
    start_value: f64,
    initial_step: f64,
    cfg: &SolveConfig,
) -> Result<PatternOutcome> {
    let m = lower.len();
    let mut theta = start;
    let mut value = start_value;
    let mut step = initial_step;
    let mut evals = 0usize;
    for _ in 0..cfg.pattern_iters {
        if step < cfg.pattern_tol {
            break;
        }
        let mut best_probe: Option<(Vec<f64>, f64)> = None;
        for k in 0..m {
            for sign in [-1.0, 1.0] {
                let mut probe = theta.clone();
                probe[k] = (probe[k] + sign * step).clamp(lower[k], upper[k]);
                if probe[k] == theta[k] {
                    continue;
                }
                let v = objective(&probe)?;
                evals += 1;
                let current_best = best_probe.as_ref().map_or(value, |(_, bv)| *bv);
                if v < current_best {
                    best_probe = Some((probe, v));
                }
            }
        }
        match best_probe {
            Some((probe, v)) if v < value => {
                theta = probe;
                value = v;
            }
            _ => step *= 0.5,
        }
    }
    Ok(PatternOutcome { theta, value, evals })
}

fn cmp_scored(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> std::cmp::Ordering {
    a.0.partial_cmp(&b.0).unwrap().then_with(|| {
        a.1.iter()
            .zip(&b.1)
            .map(|(x, y)| x.partial_cmp(y).unwrap())
            .find(|o| *o != std::cmp::Ordering::Equal)
            .unwrap_or(std::cmp::Ordering::Equal)
    })
}

struct SearchOutcome {
    theta: Vec<f64>,
    value: f64,
    evals: usize,
    /// Refined optimum per multistart seed.
    refined: Vec<(Vec<f64>, f64)>,
}

/// Two-stage minimization of an inner-evaluated objective over the box.
fn minimize_over_box(
    objective: &mut dyn FnMut(&[f64]) -> Result<f64>,
    lower: &[f64],
    upper: &[f64],
    cfg: &SolveConfig,
) -> Result<SearchOutcome> {
    cfg.validate()?;
    let grid = grid_points(lower, upper, cfg.grid_points_per_dim);
    let mut evals = 0usize;
    let mut scored: Vec<(f64, Vec<f64>)> = Vec::with_capacity(grid.len());
    for theta in grid {
        let v = objective(&theta)?;
        evals += 1;
        scored.push((v, theta));
    }
    scored.sort_by(cmp_scored);
    let cell = lower
        .iter()
        .zip(upper)
        .map(|(l, u)| (u - l) / (cfg.grid_points_per_dim - 1) as f64)
        .fold(0.0f64, f64::max);
    let k = cfg.multistart_k.min(scored.len());
    let mut refined: Vec<(Vec<f64>, f64)> = Vec::with_capacity(k);
    for (seed_value, seed) in scored.into_iter().take(k) {
        let out = pattern_search(objective, lower, upper, seed, seed_value, cell, cfg)?;
        debug_assert!(out.value <= seed_value + 1e-15);
        evals += out.evals;
        refined.push((out.theta, out.value));
    }
    let mut best = refined[0].clone();
    for (theta, v) in refined.iter().skip(1) {
        if better(*v, theta, best.1, &best.0) {
            best = (theta.clone(), *v);
        }
    }
    Ok(SearchOutcome {
        theta: best.0,
        value: best.1,
        evals,
        refined,
    })
}

/// Solve the sample-average problem on a stored noise sample.
pub fn solve_saa(
    goal: &GoalModel,
    spec: &DivergencePair,
    sample: &[Vec<f64>],
    cfg: &SolveConfig,
) -> Result<SaaSolution> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let lower = goal.theta_box.lower.clone();
    let upper = goal.theta_box.upper.clone();
    let mut objective = |theta: &[f64]| saa_objective(goal, spec, sample, theta).map(|(v, _, _)| v);
    let out = minimize_over_box(&mut objective, &lower, &upper, cfg)?;
    let restarts_agree = out.refined.iter().all(|(_, v)| (v - out.value).abs() <= 1e-6);
    let (_, x_hat, width) = saa_objective(goal, spec, sample, &out.theta)?;
    Ok(SaaSolution {
        theta_hat: out.theta,
        x_hat,
        value: out.value,
        x_interval_width: width,
        evals: out.evals + 1,
        restarts_agree,
    })
}

/// Solve the population problem with a midpoint-quadrature inner evaluator
/// on the noise quantile grid (the same nodes for every theta).
pub fn solve_population(
    goal: &GoalModel,
    spec: &DivergencePair,
    nodes: usize,
    cfg: &SolveConfig,
) -> Result<PopulationSolution> {
    if !goal.sampler.has_quantile() {
        return Err(Error::InvalidParameter(
            "population solve requires a one-dimensional sampler with a quantile".into(),
        ));
    }
    let z_nodes: Vec<Vec<f64>> = (0..nodes)
        .map(|k| vec![goal.sampler.quantile1((k as f64 + 0.5) / nodes as f64)])
        .collect();
    let lower = goal.theta_box.lower.clone();
    let upper = goal.theta_box.upper.clone();
    let mut objective = |theta: &[f64]| -> Result<f64> {
        saa_objective(goal, spec, &z_nodes, theta).map(|(v, _, _)| v)
    };
    let out = minimize_over_box(&mut objective, &lower, &upper, cfg)?;
    let norm = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let unique = !out.refined.iter().any(|(theta, v)| {
        (v - out.value).abs() < 1e-9 && norm(theta, &out.theta) > 1e-3
    });
    let (_, x_star, _) = saa_objective(goal, spec, &z_nodes, &out.theta)?;
    Ok(PopulationSolution {
        theta_star: out.theta,
        x_star,
        value: out.value,
        unique,
        evals: out.evals + 1,
    })
}
