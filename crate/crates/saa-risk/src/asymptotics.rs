//! Asymptotic predictions for the joint sample-average minimizers and the
//! Monte Carlo replication harness that tests them: the Hessian H of the
//! population objective at the optimum, the score covariance Sigma, the
//! projected sandwich covariance E H^{-1} Sigma H^{-1} E^T for the theta
//! block, rate-exponent regression, and per-coordinate normality checks.

use nalgebra::{DMatrix, DVector};
use rand::RngCore;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::divergence::DivergencePair;
use crate::error::{Error, Result};
use crate::models::GoalModel;
use crate::rng::{stream_rng, stream_seed};
use crate::solver::{solve_saa, SolveConfig};

/// Evaluation scheme for population expectations in the Hessian estimator.
/// Either a midpoint quadrature on the sampler quantile grid or a frozen
/// noise sample reused across all stencil points (common random numbers).
#[derive(Debug, Clone)]
pub enum HessianEval {
    Quadrature(usize),
    MegaSample(Vec<Vec<f64>>),
}

/// The quantitative prediction package for one model instance.
#[derive(Debug, Clone)]
pub struct AsymptoticPrediction {
    /// (m+1) x (m+1) Hessian of the population objective at (theta*, x*).
    pub h: DMatrix<f64>,
    /// (m+1) x (m+1) covariance of the score at (theta*, x*).
    pub sigma: DMatrix<f64>,
    /// m x m projected sandwich covariance of sqrt(n) (theta_hat - theta*).
    pub c_pred: DMatrix<f64>,
    pub beta: f64,
    pub rate_exponent: f64,
}

fn nodes_for(goal: &GoalModel, eval: &HessianEval) -> Result<Vec<Vec<f64>>> {
    match eval {
        HessianEval::Quadrature(n) => {
            if !goal.sampler.has_quantile() {
                return Err(Error::InvalidParameter(
                    "quadrature evaluation requires a sampler with a quantile".into(),
                ));
            }
            Ok((0..*n)
                .map(|k| vec![goal.sampler.quantile1((k as f64 + 0.5) / *n as f64)])
                .collect())
        }
        HessianEval::MegaSample(sample) => {
            if sample.is_empty() {
                return Err(Error::EmptySample);
            }
            Ok(sample.clone())
        }
    }
}

/// Population objective E[Phi*(G(theta, Z) + x)] - x averaged over the
/// frozen node set.
fn population_value(
    goal: &GoalModel,
    spec: &DivergencePair,
    nodes: &[Vec<f64>],
    theta: &[f64],
    x: f64,
) -> f64 {
    let n = nodes.len() as f64;
    let mut acc = 0.0;
    for z in nodes {
        acc += spec.phi_star(goal.evaluate(theta, z) + x);
    }
    acc / n - x
}

/// Central second differences of the population objective on a common node
/// set, symmetrized. Errors when the result is not positive definite, which
/// is the correct outcome for degenerate instances such as deterministic
/// goals.
pub fn estimate_hessian(
    goal: &GoalModel,
    spec: &DivergencePair,
    theta_star: &[f64],
    x_star: f64,
    step: f64,
    eval: &HessianEval,
) -> Result<DMatrix<f64>> {
    if !(step > 0.0) {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    let nodes = nodes_for(goal, eval)?;
    let dim = goal.m + 1;
    let mut point = theta_star.to_vec();
    point.push(x_star);
    let steps: Vec<f64> = point.iter().map(|p| step * (1.0 + p.abs())).collect();

    let value_at = |offsets: &[(usize, f64)]| -> f64 {
        let mut p = point.clone();
        for &(k, dv) in offsets {
            p[k] += dv;
        }
        population_value(goal, spec, &nodes, &p[..goal.m], p[goal.m])
    };

    let v0 = value_at(&[]);
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let hi = steps[i];
        let vp = value_at(&[(i, hi)]);
        let vm = value_at(&[(i, -hi)]);
        h[(i, i)] = (vp - 2.0 * v0 + vm) / (hi * hi);
        for j in (i + 1)..dim {
            let hj = steps[j];
            let vpp = value_at(&[(i, hi), (j, hj)]);
            let vpm = value_at(&[(i, hi), (j, -hj)]);
            let vmp = value_at(&[(i, -hi), (j, hj)]);
            let vmm = value_at(&[(i, -hi), (j, -hj)]);
            let hij = (vpp - vpm - vmp + vmm) / (4.0 * hi * hj);
            h[(i, j)] = hij;
            h[(j, i)] = hij;
        }
    }
    let h = (&h + h.transpose()) * 0.5;
    let min_eig = min_eigenvalue(&h);
    if min_eig <= 1e-8 {
        return Err(Error::HessianNotPositiveDefinite { min_eigenvalue: min_eig });
    }
    Ok(h)
}

pub fn min_eigenvalue(mat: &DMatrix<f64>) -> f64 {
    mat.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b))
}

fn covariance_of(rows: &[DVector<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    let dim = rows[0].len();
    let mut mean = DVector::zeros(dim);
    for r in rows {
        mean += r;
    }
    mean /= n as f64;
    let mut cov = DMatrix::zeros(dim, dim);
    for r in rows {
        let c = r - &mean;
        cov += &c * c.transpose();
    }
    cov / (n as f64 - 1.0)
}

/// Score covariance by central finite differences of
/// (theta, x) -> Phi*(G(theta, z) + x), per Monte Carlo draw.
pub fn estimate_sigma_fd<R: RngCore>(
    goal: &GoalModel,
    spec: &DivergencePair,
    theta_star: &[f64],
    x_star: f64,
    step: f64,
    n_mc: usize,
    rng: &mut R,
) -> Result<DMatrix<f64>> {
    if n_mc < 2 {
        return Err(Error::InsufficientData("need at least two draws".into()));
    }
    let dim = goal.m + 1;
    let mut point = theta_star.to_vec();
    point.push(x_star);
    let steps: Vec<f64> = point.iter().map(|p| step * (1.0 + p.abs())).collect();
    let h_at = |p: &[f64], z: &[f64]| spec.phi_star(goal.evaluate(&p[..goal.m], z) + p[goal.m]);

    let mut grads = Vec::with_capacity(n_mc);
    for _ in 0..n_mc {
        let z = goal.sampler.sample(rng);
        let mut g = DVector::zeros(dim);
        for k in 0..dim {
            let mut pp = point.clone();
            let mut pm = point.clone();
            pp[k] += steps[k];
            pm[k] -= steps[k];
            g[k] = (h_at(&pp, &z) - h_at(&pm, &z)) / (2.0 * steps[k]);
        }
        grads.push(g);
    }
    Ok(covariance_of(&grads))
}

/// Score covariance from the closed-form score of a piecewise-linear goal.
/// Draws that hit a nondifferentiable point of Phi* are rejected and
/// redrawn; a rejection fraction above 1e-3 fails the estimate.
pub fn sigma_pl<R: RngCore>(
    goal: &GoalModel,
    spec: &DivergencePair,
    theta_star: &[f64],
    x_star: f64,
    n_mc: usize,
    rng: &mut R,
) -> Result<(DMatrix<f64>, usize)> {
    let pl = goal.pl.as_ref().ok_or_else(|| {
        Error::InvalidParameter("goal carries no piecewise-linear structure".into())
    })?;
    if n_mc < 2 {
        return Err(Error::InsufficientData("need at least two draws".into()));
    }
    let mut rows = Vec::with_capacity(n_mc);
    let mut rejected = 0usize;
    while rows.len() < n_mc {
        let z = goal.sampler.sample(rng);
        let (md, kink) = pl.mdot(spec, theta_star, x_star, &z);
        if kink {
            rejected += 1;
            if rejected > ((n_mc as f64) * 1e-3).ceil() as usize {
                return Err(Error::KinkFractionExceeded { rejected, total: n_mc });
            }
            continue;
        }
        rows.push(DVector::from_vec(md));
    }
    Ok((covariance_of(&rows), rejected))
}

/// Projected sandwich covariance E H^{-1} Sigma H^{-1} E^T for the first m
/// coordinates, computed by linear solves and symmetrized.
pub fn predict_covariance(h: &DMatrix<f64>, sigma: &DMatrix<f64>, m: usize) -> Result<DMatrix<f64>> {
    let chol = h
        .clone()
        .cholesky()
        .ok_or(Error::HessianNotPositiveDefinite { min_eigenvalue: min_eigenvalue(h) })?;
    // H^{-1} Sigma H^{-1} = solve(H, solve(H, Sigma)^T)^T by symmetry
    let inner = chol.solve(sigma);
    let full = chol.solve(&inner.transpose()).transpose();
    let block = full.view((0, 0), (m, m)).into_owned();
    Ok((&block + block.transpose()) * 0.5)
}

/// Assemble the full prediction for a model at its population optimum.
pub fn predict(
    h: DMatrix<f64>,
    sigma: DMatrix<f64>,
    m: usize,
    beta: f64,
) -> Result<AsymptoticPrediction> {
    let c_pred = predict_covariance(&h, &sigma, m)?;
    Ok(AsymptoticPrediction {
        h,
        sigma,
        c_pred,
        beta,
        rate_exponent: 1.0 / (4.0 - 2.0 * beta),
    })
}

/// One replication outcome.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ReplicationRow {
    pub n: usize,
    pub rep: usize,
    pub seed: u64,
    pub theta_hat: Vec<f64>,
    pub x_hat: f64,
    pub value: f64,
    pub solve_ok: bool,
}

/// Replication outcomes for a full design, ordered by (n, rep).
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ReplicationTable {
    pub rows: Vec<ReplicationRow>,
}

impl ReplicationTable {
    /// CSV serialization: header `n,rep,seed,theta_1..theta_m,x_hat,value,solve_ok`.
    pub fn to_csv(&self, m: usize) -> String {
        let mut out = String::from("n,rep,seed");
        for k in 1..=m {
            out.push_str(&format!(",theta_{k}"));
        }
        out.push_str(",x_hat,value,solve_ok\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{}", row.n, row.rep, row.seed));
            for t in &row.theta_hat {
                out.push_str(&format!(",{t}"));
            }
            out.push_str(&format!(",{},{},{}\n", row.x_hat, row.value, row.solve_ok));
        }
        out
    }

    pub fn largest_n(&self) -> Option<usize> {
        self.rows.iter().map(|r| r.n).max()
    }
}

/// Run the replication design: for each (n, rep) derive an independent
/// stream from (base_seed, n index, rep), draw an i.i.d. sample of size n,
/// and solve the sample-average problem. The output is independent of
/// execution order and of the parallelism degree.
pub fn run_replications(
    goal: &GoalModel,
    spec: &DivergencePair,
    n_list: &[usize],
    reps: usize,
    base_seed: u64,
    cfg: &SolveConfig,
) -> Result<ReplicationTable> {
    if reps < 2 {
        return Err(Error::InsufficientData(
            "a replication design needs at least two replications per sample size".into(),
        ));
    }
    if n_list.is_empty() {
        return Err(Error::InsufficientData("empty sample-size list".into()));
    }
    let design: Vec<(usize, usize, usize)> = n_list
        .iter()
        .enumerate()
        .flat_map(|(n_idx, &n)| (0..reps).map(move |rep| (n_idx, n, rep)))
        .collect();
    let rows: Vec<ReplicationRow> = design
        .par_iter()
        .map(|&(n_idx, n, rep)| {
            let seed = stream_seed(base_seed, n_idx, rep);
            let mut rng = stream_rng(seed);
            let sample = goal.sampler.draw_sample(n, &mut rng);
            match solve_saa(goal, spec, &sample, cfg) {
                Ok(sol) => ReplicationRow {
                    n,
                    rep,
                    seed,
                    theta_hat: sol.theta_hat,
                    x_hat: sol.x_hat,
                    value: sol.value,
                    solve_ok: true,
                },
                Err(_) => ReplicationRow {
                    n,
                    rep,
                    seed,
                    theta_hat: vec![f64::NAN; goal.m],
                    x_hat: f64::NAN,
                    value: f64::NAN,
                    solve_ok: false,
                },
            }
        })
        .collect();
    Ok(ReplicationTable { rows })
}

/// Per-n medians of the estimation error and the log-log regression slope.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RateDiagnostic {
    pub ns: Vec<usize>,
    pub medians: Vec<f64>,
    pub slope: f64,
    pub slope_se: f64,
    pub expected_slope: f64,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Median error per sample size and the ordinary least-squares slope of
/// log(median) on log(n). The theory predicts slope -1/(4 - 2 beta).
pub fn rate_diagnostic(
    table: &ReplicationTable,
    theta_star: &[f64],
    beta: f64,
) -> Result<RateDiagnostic> {
    let mut by_n: std::collections::BTreeMap<usize, Vec<f64>> = Default::default();
    for row in table.rows.iter().filter(|r| r.solve_ok) {
        let err = row
            .theta_hat
            .iter()
            .zip(theta_star)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        by_n.entry(row.n).or_default().push(err);
    }
    if by_n.len() < 3 {
        return Err(Error::InsufficientData(
            "rate regression needs at least three distinct sample sizes".into(),
        ));
    }
    let mut ns = Vec::new();
    let mut medians = Vec::new();
    for (n, mut errs) in by_n {
        if errs.len() < 20 {
            return Err(Error::InsufficientData(format!(
                "sample size {n} has only {} successful replications (need 20)",
                errs.len()
            )));
        }
        errs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ns.push(n);
        medians.push(median(&errs));
    }
    // OLS of log(median) on log(n)
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = medians.iter().map(|m| m.ln()).collect();
    let k = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / k;
    let ybar = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let slope_se = if xs.len() > 2 {
        (ss_res / (k - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(RateDiagnostic {
        ns,
        medians,
        slope,
        slope_se,
        expected_slope: -1.0 / (4.0 - 2.0 * beta),
    })
}

/// Covariance and per-coordinate normality of the rescaled errors at the
/// largest sample size of the table.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CoverageReport {
    pub n: usize,
    pub reps: usize,
    /// Sample covariance of sqrt(n) (theta_hat - theta*), row-major.
    pub emp_cov: Vec<Vec<f64>>,
    pub frob_rel_err: f64,
    /// Kolmogorov-Smirnov distance to the standard normal per coordinate.
    pub ks_per_coord: Vec<f64>,
    /// Asymptotic 1%-level critical value 1.63 / sqrt(reps).
    pub ks_critical: f64,
}

fn ks_distance_to_std_normal(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let normal = Normal::new(0.0, 1.0).unwrap();
    let n = values.len() as f64;
    let mut d: f64 = 0.0;
    for (i, v) in values.iter().enumerate() {
        let f = normal.cdf(*v);
        d = d.max((f - i as f64 / n).abs());
        d = d.max((f - (i as f64 + 1.0) / n).abs());
    }
    d
}

pub fn coverage_normality(
    table: &ReplicationTable,
    theta_star: &[f64],
    c_pred: &DMatrix<f64>,
) -> Result<CoverageReport> {
    let n = table
        .largest_n()
        .ok_or_else(|| Error::InsufficientData("empty replication table".into()))?;
    let m = theta_star.len();
    let rows: Vec<&ReplicationRow> = table
        .rows
        .iter()
        .filter(|r| r.n == n && r.solve_ok)
        .collect();
    if rows.len() < 100 {
        return Err(Error::InsufficientData(format!(
            "normality check needs at least 100 replications, got {}",
            rows.len()
        )));
    }
    for j in 0..m {
        if c_pred[(j, j)] <= 0.0 {
            return Err(Error::NonPositiveVariance(j));
        }
    }
    let sqrt_n = (n as f64).sqrt();
    let scaled: Vec<DVector<f64>> = rows
        .iter()
        .map(|r| {
            DVector::from_iterator(
                m,
                r.theta_hat
                    .iter()
                    .zip(theta_star)
                    .map(|(a, b)| sqrt_n * (a - b)),
            )
        })
        .collect();
    let emp = covariance_of(&scaled);
    let diff = &emp - c_pred;
    let frob = |mtx: &DMatrix<f64>| mtx.iter().map(|v| v * v).sum::<f64>().sqrt();
    let frob_rel_err = frob(&diff) / frob(c_pred);
    let mut ks_per_coord = Vec::with_capacity(m);
    for j in 0..m {
        let sd = c_pred[(j, j)].sqrt();
        let mut std_vals: Vec<f64> = scaled.iter().map(|v| v[j] / sd).collect();
        ks_per_coord.push(ks_distance_to_std_normal(&mut std_vals));
    }
    Ok(CoverageReport {
        n,
        reps: rows.len(),
        emp_cov: (0..m)
            .map(|i| (0..m).map(|j| emp[(i, j)]).collect())
            .collect(),
        frob_rel_err,
        ks_per_coord,
        ks_critical: 1.63 / (rows.len() as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{model_a, GoalModel, ParamBox, Smoothness, ZDist};
    use crate::pl;
    use approx::assert_abs_diff_eq;

    fn affine_goal() -> GoalModel {
        GoalModel::new(
            "affine",
            ParamBox::new(vec![-1.0], vec![1.0]).unwrap(),
            ZDist::UniformBox { lo: vec![-1.0], hi: vec![1.0] },
            Smoothness::Holder(1.0),
            |theta, z| theta[0] + z[0],
        )
    }

    #[test]
    fn hessian_deterministic_goal_is_singular() {
        let goal = GoalModel::new(
            "det",
            ParamBox::new(vec![-1.0], vec![1.0]).unwrap(),
            ZDist::UniformBox { lo: vec![0.0], hi: vec![1.0] },
            Smoothness::Holder(1.0),
            |theta, _| theta[0],
        );
        let spec = DivergencePair::entropic(1.0).unwrap();
        let err = estimate_hessian(&goal, &spec, &[0.0], 0.0, 1e-3, &HessianEval::Quadrature(10_000))
            .unwrap_err();
        assert!(matches!(err, Error::HessianNotPositiveDefinite { .. }));
    }

    #[test]
    fn hessian_xx_entry_nonnegative() {
        let b = model_a();
        let spec = b.risk();
        let h = estimate_hessian(
            &b.model,
            &spec,
            &[0.0],
            -crate::models::MODEL_A_VALUE,
            1e-3,
            &HessianEval::Quadrature(100_000),
        )
        .unwrap();
        assert!(h[(1, 1)] >= 0.0);
        assert_abs_diff_eq!(h[(0, 1)], h[(1, 0)], epsilon = 1e-15);
    }

    #[test]
    fn sigma_fd_affine_entropic_matches_hand_form() {
        // score = e^{z + theta* + x*} (1, 1); Sigma = Var(e^{Z + c}) * ones
        let goal = affine_goal();
        let spec = DivergencePair::entropic(1.0).unwrap();
        let (theta, x) = (0.0, 0.2);
        let mut rng = stream_rng(3);
        let sigma =
            estimate_sigma_fd(&goal, &spec, &[theta], x, 1e-5, 200_000, &mut rng).unwrap();
        // Var(e^{Z}) e^{2x} with Z ~ U(-1,1): E e^Z = sinh 1, E e^{2Z} = sinh(2)/2
        let var = (2.0f64.sinh() / 2.0 - 1.0f64.sinh().powi(2)) * (2.0 * x).exp();
        for i in 0..2 {
            for j in 0..2 {
                assert!((sigma[(i, j)] - var).abs() / var < 0.02, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn sigma_fd_constant_goal_theta_block_zero() {
        let goal = GoalModel::new(
            "const",
            ParamBox::new(vec![-1.0], vec![1.0]).unwrap(),
            ZDist::UniformBox { lo: vec![-1.0], hi: vec![1.0] },
            Smoothness::Holder(1.0),
            |_, _| 1.5,
        );
        let spec = DivergencePair::entropic(1.0).unwrap();
        let mut rng = stream_rng(4);
        let sigma = estimate_sigma_fd(&goal, &spec, &[0.0], 0.0, 1e-5, 1000, &mut rng).unwrap();
        assert_abs_diff_eq!(sigma[(0, 0)], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sigma_pl_zero_when_all_arguments_negative() {
        // avar score vanishes on the negative axis
        let plg = pl::affine(1, 1, vec![1.0], vec![1.0], 0.0).unwrap();
        let goal = GoalModel::from_pl(
            "neg",
            ParamBox::new(vec![-1.0], vec![1.0]).unwrap(),
            ZDist::UniformBox { lo: vec![-1.0], hi: vec![1.0] },
            plg,
        );
        let spec = DivergencePair::avar(0.5).unwrap();
        let mut rng = stream_rng(5);
        let (sigma, rejected) = sigma_pl(&goal, &spec, &[0.0], -5.0, 1000, &mut rng).unwrap();
        assert_eq!(rejected, 0);
        assert_abs_diff_eq!(sigma[(0, 0)], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn predict_covariance_hand_cases() {
        let id = DMatrix::identity(2, 2);
        let c = predict_covariance(&id, &id, 1).unwrap();
        assert_abs_diff_eq!(c[(0, 0)], 1.0, epsilon = 1e-12);

        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 1.0]));
        let s = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 9.0]));
        let c = predict_covariance(&h, &s, 1).unwrap();
        assert_abs_diff_eq!(c[(0, 0)], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn predict_covariance_scale_consistent() {
        let h = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.5]);
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 0.2, 0.2, 2.0]);
        let c1 = predict_covariance(&h, &s, 1).unwrap();
        let c2 = predict_covariance(&(h.clone() * 3.0), &(s * 9.0), 1).unwrap();
        assert_abs_diff_eq!(c1[(0, 0)], c2[(0, 0)], epsilon = 1e-10);
    }

    #[test]
    fn predict_covariance_rejects_singular() {
        let h = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let s = DMatrix::identity(2, 2);
        assert!(predict_covariance(&h, &s, 1).is_err());
    }

    #[test]
    fn replications_deterministic_and_complete() {
        let b = model_a();
        let spec = b.risk();
        let cfg = SolveConfig::default();
        let t1 = run_replications(&b.model, &spec, &[100], 3, 7, &cfg).unwrap();
        let t2 = run_replications(&b.model, &spec, &[100], 3, 7, &cfg).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1.rows.len(), 3);
        let seeds: std::collections::HashSet<u64> = t1.rows.iter().map(|r| r.seed).collect();
        assert_eq!(seeds.len(), 3);
    }

    #[test]
    fn rate_diagnostic_recovers_exact_power_laws() {
        for (p, expect) in [(0.5, -0.5), (1.0 / 3.0, -1.0 / 3.0)] {
            let rows: Vec<ReplicationRow> = [100usize, 400, 1600, 6400]
                .iter()
                .flat_map(|&n| {
                    (0..25).map(move |rep| ReplicationRow {
                        n,
                        rep,
                        seed: 0,
                        theta_hat: vec![(n as f64).powf(-p)],
                        x_hat: 0.0,
                        value: 0.0,
                        solve_ok: true,
                    })
                })
                .collect();
            let table = ReplicationTable { rows };
            let d = rate_diagnostic(&table, &[0.0], 1.0).unwrap();
            assert_abs_diff_eq!(d.slope, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(d.slope_se, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn rate_diagnostic_requires_three_sizes() {
        let rows: Vec<ReplicationRow> = (0..40)
            .map(|rep| ReplicationRow {
                n: 100,
                rep,
                seed: 0,
                theta_hat: vec![0.1],
                x_hat: 0.0,
                value: 0.0,
                solve_ok: true,
            })
            .collect();
        assert!(rate_diagnostic(&ReplicationTable { rows }, &[0.0], 1.0).is_err());
    }

    #[test]
    fn coverage_synthetic_gaussian_rows() {
        // exact draws theta* + N(0, C)/sqrt(n) must reproduce C and pass KS
        let c = 2.25f64;
        let n = 400usize;
        let reps = 4000usize;
        let normal = Normal::new(0.0, 1.0).unwrap();
        let mut rng = stream_rng(21);
        let rows: Vec<ReplicationRow> = (0..reps)
            .map(|rep| {
                let u = crate::rng::unit_open(&mut rng);
                let g = normal.inverse_cdf(u);
                ReplicationRow {
                    n,
                    rep,
                    seed: 0,
                    theta_hat: vec![g * c.sqrt() / (n as f64).sqrt()],
                    x_hat: 0.0,
                    value: 0.0,
                    solve_ok: true,
                }
            })
            .collect();
        let table = ReplicationTable { rows };
        let c_pred = DMatrix::from_element(1, 1, c);
        let rep = coverage_normality(&table, &[0.0], &c_pred).unwrap();
        assert!(rep.frob_rel_err < 0.08, "frob err {}", rep.frob_rel_err);
        assert!(rep.ks_per_coord[0] < rep.ks_critical);
    }

    #[test]
    fn coverage_degenerate_rows_give_unit_error() {
        let rows: Vec<ReplicationRow> = (0..200)
            .map(|rep| ReplicationRow {
                n: 100,
                rep,
                seed: 0,
                theta_hat: vec![0.0],
                x_hat: 0.0,
                value: 0.0,
                solve_ok: true,
            })
            .collect();
        let table = ReplicationTable { rows };
        let c_pred = DMatrix::from_element(1, 1, 1.0);
        let rep = coverage_normality(&table, &[0.0], &c_pred).unwrap();
        assert_abs_diff_eq!(rep.frob_rel_err, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn csv_schema() {
        let table = ReplicationTable {
            rows: vec![ReplicationRow {
                n: 10,
                rep: 0,
                seed: 5,
                theta_hat: vec![0.25],
                x_hat: -0.5,
                value: 1.5,
                solve_ok: true,
            }],
        };
        let csv = table.to_csv(1);
        assert_eq!(
            csv,
            "n,rep,seed,theta_1,x_hat,value,solve_ok\n10,0,5,0.25,-0.5,1.5,true\n"
        );
    }

    use crate::divergence::DivergencePair;
}
