//! Command-line front end: evaluate risk on a sample file, solve one
//! sample-average instance, compute asymptotic predictions, run a full
//! replication experiment, or validate a piecewise-linear goal definition.
//!
//! Exit codes: 0 success, 2 config or I/O error, 3 Hessian not positive
//! definite, 4 partition violations in validate-pl.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nalgebra::DMatrix;
use sha2::{Digest, Sha256};

use saa_risk::asymptotics::{
    coverage_normality, estimate_hessian, estimate_sigma_fd, predict, rate_diagnostic,
    run_replications, sigma_pl, AsymptoticPrediction, HessianEval,
};
use saa_risk::divergence::{
    avar_closed_form, entropic_closed_form, oce_minimize, DivergencePair, EmpiricalSample,
};
use saa_risk::models::{builtin, GoalModel, ParamBox, ZDist};
use saa_risk::pl::{IntervalKind, PLGoal, Piece, Selector};
use saa_risk::rng::{stream_rng, stream_seed};
use saa_risk::solver::{solve_population, solve_saa, SolveConfig};
use saa_risk::Error as LibError;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "saa-risk", version, about = "Risk-averse sample average approximation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the risk of a sample file (one real per line).
    Rho {
        #[arg(long)]
        sample: PathBuf,
        /// avar | entropic | polynomial
        #[arg(long)]
        risk: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Solve one sample-average instance at the largest design n.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the asymptotic prediction (Hessian, score covariance, sandwich).
    Predict {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the replication experiment and the diagnostic summary.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check the piecewise-linear partition and boundary diagnostics.
    ValidatePl {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        n_z: usize,
    },
}

struct CliError {
    code: i32,
    msg: String,
}

impl CliError {
    fn config(msg: impl Into<String>) -> Self {
        Self { code: 2, msg: msg.into() }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        let code = match e {
            LibError::HessianNotPositiveDefinite { .. } => 3,
            _ => 2,
        };
        Self { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::config(format!("i/o error: {e}"))
    }
}

// ---------------------------------------------------------------------------
// Config schema

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    model: ModelConfig,
    risk: RiskConfig,
    design: DesignConfig,
    #[serde(default)]
    solver: Option<SolveConfig>,
    #[serde(default)]
    prediction: PredictionConfig,
    output: OutputConfig,
    #[serde(default)]
    thresholds: Thresholds,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelConfig {
    /// Name of a built-in model; absent for inline piecewise-linear models.
    name: Option<String>,
    theta_lo: Option<Vec<f64>>,
    theta_hi: Option<Vec<f64>>,
    z_lo: Option<Vec<f64>>,
    z_hi: Option<Vec<f64>>,
    /// Row-major d x m matrix mapping theta into the noise space.
    t: Option<Vec<f64>>,
    #[serde(default)]
    pieces: Vec<PieceConfig>,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceConfig {
    lambda: Vec<f64>,
    b: f64,
    selectors: Vec<SelectorConfig>,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct SelectorConfig {
    l: Vec<f64>,
    a: f64,
    /// "closed" for [0, inf), "open" for (0, inf).
    kind: String,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RiskConfig {
    kind: String,
    alpha: Option<f64>,
    gamma: Option<f64>,
    p: Option<f64>,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignConfig {
    n_list: Vec<usize>,
    reps: usize,
    base_seed: u64,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct PredictionConfig {
    #[serde(default = "default_hessian_step")]
    hessian_step: f64,
    #[serde(default = "default_gradient_step")]
    gradient_step: f64,
    #[serde(default = "default_sigma_n_mc")]
    sigma_n_mc: usize,
    #[serde(default = "default_quadrature_nodes")]
    quadrature_nodes: usize,
}

fn default_hessian_step() -> f64 {
    1e-3
}
fn default_gradient_step() -> f64 {
    1e-5
}
fn default_sigma_n_mc() -> usize {
    200_000
}
fn default_quadrature_nodes() -> usize {
    200_000
}

impl Default for PredictionConfig {
    fn default() -> Self {
        Self {
            hessian_step: default_hessian_step(),
            gradient_step: default_gradient_step(),
            sigma_n_mc: default_sigma_n_mc(),
            quadrature_nodes: default_quadrature_nodes(),
        }
    }
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputConfig {
    dir: PathBuf,
}

#[derive(Debug, serde::Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
struct Thresholds {
    #[serde(default = "default_slope_lo")]
    slope_lo: f64,
    #[serde(default = "default_slope_hi")]
    slope_hi: f64,
    #[serde(default = "default_frob_max")]
    frob_max: f64,
}

fn default_slope_lo() -> f64 {
    -0.62
}
fn default_slope_hi() -> f64 {
    -0.38
}
fn default_frob_max() -> f64 {
    0.25
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            slope_lo: default_slope_lo(),
            slope_hi: default_slope_hi(),
            frob_max: default_frob_max(),
        }
    }
}

struct LoadedConfig {
    cfg: ConfigFile,
    hash: String,
    goal: GoalModel,
    spec: DivergencePair,
    solver: SolveConfig,
}

fn parse_risk(risk: &RiskConfig) -> Result<DivergencePair, CliError> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::config(format!("risk kind '{}' needs `{flag}`", risk.kind)))
    };
    let spec = match risk.kind.as_str() {
        "avar" => DivergencePair::avar(need(risk.alpha, "alpha")?)?,
        "entropic" => DivergencePair::entropic(need(risk.gamma, "gamma")?)?,
        "polynomial" => DivergencePair::polynomial(need(risk.p, "p")?)?,
        other => return Err(CliError::config(format!("unknown risk kind '{other}'"))),
    };
    Ok(spec)
}

fn parse_inline_model(mc: &ModelConfig) -> Result<GoalModel, CliError> {
    let field = |name: &str, v: &Option<Vec<f64>>| {
        v.clone()
            .ok_or_else(|| CliError::config(format!("inline model needs `{name}`")))
    };
    let theta_lo = field("theta_lo", &mc.theta_lo)?;
    let theta_hi = field("theta_hi", &mc.theta_hi)?;
    let z_lo = field("z_lo", &mc.z_lo)?;
    let z_hi = field("z_hi", &mc.z_hi)?;
    let t = field("t", &mc.t)?;
    if mc.pieces.is_empty() {
        return Err(CliError::config("inline model needs at least one piece"));
    }
    let m = theta_lo.len();
    let d = z_lo.len();
    let mut pieces = Vec::with_capacity(mc.pieces.len());
    for pc in &mc.pieces {
        let mut selectors = Vec::with_capacity(pc.selectors.len());
        for sc in &pc.selectors {
            let kind = match sc.kind.as_str() {
                "closed" => IntervalKind::Closed,
                "open" => IntervalKind::Open,
                other => {
                    return Err(CliError::config(format!(
                        "selector kind must be 'closed' or 'open', got '{other}'"
                    )))
                }
            };
            selectors.push(Selector { l: sc.l.clone(), a: sc.a, kind });
        }
        pieces.push(Piece { lambda: pc.lambda.clone(), b: pc.b, selectors });
    }
    let pl = PLGoal::new(m, d, t, pieces)?;
    let theta_box = ParamBox::new(theta_lo, theta_hi)?;
    Ok(GoalModel::from_pl("inline", theta_box, ZDist::UniformBox { lo: z_lo, hi: z_hi }, pl))
}

fn load_config(path: &Path) -> Result<LoadedConfig, CliError> {
    let raw = std::fs::read(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let hash = hex(&Sha256::digest(&raw));
    let text = std::str::from_utf8(&raw)
        .map_err(|e| CliError::config(format!("config is not UTF-8: {e}")))?;
    let cfg: ConfigFile = toml::from_str(text)
        .map_err(|e| CliError::config(format!("config parse error: {e}")))?;
    let goal = match &cfg.model.name {
        Some(name) => builtin(name)
            .ok_or_else(|| CliError::config(format!("unknown model '{name}'")))?
            .model,
        None => parse_inline_model(&cfg.model)?,
    };
    let spec = parse_risk(&cfg.risk)?;
    if cfg.design.n_list.is_empty() {
        return Err(CliError::config("design.n_list must be nonempty"));
    }
    if !cfg.design.n_list.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::config("design.n_list must be strictly increasing"));
    }
    if cfg.design.reps < 2 {
        return Err(CliError::config("design.reps must be at least 2"));
    }
    let solver = cfg.solver.clone().unwrap_or_default();
    solver.validate()?;
    Ok(LoadedConfig { cfg, hash, goal, spec, solver })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, doc: &T) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::config(format!("serialization error: {e}")))?;
    std::fs::write(&path, text + "\n")?;
    Ok(path)
}

// ---------------------------------------------------------------------------
// Subcommands

fn cmd_rho(
    sample: &Path,
    risk: &str,
    alpha: Option<f64>,
    gamma: Option<f64>,
    p: Option<f64>,
) -> Result<(), CliError> {
    let text = std::fs::read_to_string(sample)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", sample.display())))?;
    let mut values = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        values.push(
            line.parse::<f64>()
                .map_err(|e| CliError::config(format!("line {}: {e}", k + 1)))?,
        );
    }
    let spec = parse_risk(&RiskConfig { kind: risk.into(), alpha, gamma, p })?;
    let s = EmpiricalSample::new(values)?;
    let (result, method) = match risk {
        "avar" => (avar_closed_form(&s, alpha.unwrap())?, "closed-form"),
        "entropic" => (entropic_closed_form(&s, gamma.unwrap())?, "closed-form"),
        _ => (oce_minimize(&s, &spec, 1e-10)?, "generic"),
    };
    println!("value={}", result.value);
    println!("x_lo={}", result.x_lo);
    println!("x_hi={}", result.x_hi);
    println!("method={method}");
    Ok(())
}

#[derive(serde::Serialize)]
struct SolveDoc {
    version: String,
    config_hash: String,
    model: String,
    n: usize,
    seed: u64,
    theta_hat: Vec<f64>,
    x_hat: f64,
    value: f64,
    x_interval_width: f64,
    x_unique: bool,
    restarts_agree: bool,
    evals: usize,
}

fn cmd_solve(config: &Path, seed: Option<u64>, out: Option<PathBuf>) -> Result<(), CliError> {
    let lc = load_config(config)?;
    let base_seed = seed.unwrap_or(lc.cfg.design.base_seed);
    let n = *lc.cfg.design.n_list.last().unwrap();
    let n_idx = lc.cfg.design.n_list.len() - 1;
    let stream = stream_seed(base_seed, n_idx, 0);
    let mut rng = stream_rng(stream);
    let sample = lc.goal.sampler.draw_sample(n, &mut rng);
    let sol = solve_saa(&lc.goal, &lc.spec, &sample, &lc.solver)?;
    let doc = SolveDoc {
        version: VERSION.into(),
        config_hash: lc.hash,
        model: lc.goal.name.clone(),
        n,
        seed: stream,
        theta_hat: sol.theta_hat.clone(),
        x_hat: sol.x_hat,
        value: sol.value,
        x_interval_width: sol.x_interval_width,
        x_unique: sol.x_unique(),
        restarts_agree: sol.restarts_agree,
        evals: sol.evals,
    };
    let dir = out.unwrap_or_else(|| lc.cfg.output.dir.clone());
    let path = write_json(&dir, "solution.json", &doc)?;
    println!("wrote {}", path.display());
    Ok(())
}

#[derive(serde::Serialize)]
struct PredictDoc {
    version: String,
    config_hash: String,
    model: String,
    theta_star: Vec<f64>,
    x_star: f64,
    beta: f64,
    rate_exponent: f64,
    hessian: Vec<Vec<f64>>,
    sigma: Vec<Vec<f64>>,
    c_pred: Vec<Vec<f64>>,
    hessian_step: f64,
    gradient_step: f64,
    sigma_n_mc: usize,
    quadrature_nodes: usize,
    sigma_method: String,
}

fn build_prediction(lc: &LoadedConfig) -> Result<(AsymptoticPrediction, PredictDoc), CliError> {
    let truth = match &lc.goal.truth {
        Some(t) => t.clone(),
        // fall back to a numerical population solve on the quantile grid
        None => {
            let pop = solve_population(&lc.goal, &lc.spec, 20_001, &lc.solver)?;
            saa_risk::models::Truth { theta: pop.theta_star, x: pop.x_star, value: pop.value }
        }
    };
    let truth = &truth;
    let pc = &lc.cfg.prediction;
    let eval = if lc.goal.sampler.has_quantile() {
        HessianEval::Quadrature(pc.quadrature_nodes)
    } else {
        let mut rng = stream_rng(stream_seed(lc.cfg.design.base_seed, usize::MAX, 0));
        HessianEval::MegaSample(lc.goal.sampler.draw_sample(pc.quadrature_nodes, &mut rng))
    };
    let h = estimate_hessian(&lc.goal, &lc.spec, &truth.theta, truth.x, pc.hessian_step, &eval)?;
    let mut rng = stream_rng(stream_seed(lc.cfg.design.base_seed, usize::MAX, 1));
    let (sigma, method) = if lc.goal.pl.is_some() {
        let (s, _) = sigma_pl(&lc.goal, &lc.spec, &truth.theta, truth.x, pc.sigma_n_mc, &mut rng)?;
        (s, "pl-score")
    } else {
        let s = estimate_sigma_fd(
            &lc.goal,
            &lc.spec,
            &truth.theta,
            truth.x,
            pc.gradient_step,
            pc.sigma_n_mc,
            &mut rng,
        )?;
        (s, "finite-difference")
    };
    let pred = predict(h, sigma, lc.goal.m, lc.goal.smoothness.beta())?;
    let doc = PredictDoc {
        version: VERSION.into(),
        config_hash: lc.hash.clone(),
        model: lc.goal.name.clone(),
        theta_star: truth.theta.clone(),
        x_star: truth.x,
        beta: pred.beta,
        rate_exponent: pred.rate_exponent,
        hessian: matrix_rows(&pred.h),
        sigma: matrix_rows(&pred.sigma),
        c_pred: matrix_rows(&pred.c_pred),
        hessian_step: pc.hessian_step,
        gradient_step: pc.gradient_step,
        sigma_n_mc: pc.sigma_n_mc,
        quadrature_nodes: pc.quadrature_nodes,
        sigma_method: method.into(),
    };
    Ok((pred, doc))
}

fn cmd_predict(config: &Path, out: Option<PathBuf>) -> Result<(), CliError> {
    let lc = load_config(config)?;
    let (_, doc) = build_prediction(&lc)?;
    let dir = out.unwrap_or_else(|| lc.cfg.output.dir.clone());
    let path = write_json(&dir, "prediction.json", &doc)?;
    println!("wrote {}", path.display());
    Ok(())
}

#[derive(serde::Serialize)]
struct SummaryDoc {
    version: String,
    config_hash: String,
    model: String,
    slope: f64,
    slope_se: f64,
    expected_slope: f64,
    medians: Vec<f64>,
    ns: Vec<usize>,
    frob_rel_err: f64,
    ks: Vec<f64>,
    ks_critical: f64,
    pass_slope: bool,
    pass_cov: bool,
    pass_ks: bool,
    thresholds: Thresholds,
}

fn cmd_experiment(
    config: &Path,
    seed: Option<u64>,
    out: Option<PathBuf>,
    threads: Option<usize>,
) -> Result<(), CliError> {
    let mut lc = load_config(config)?;
    if let Some(s) = seed {
        lc.cfg.design.base_seed = s;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    let table = pool.install(|| {
        run_replications(
            &lc.goal,
            &lc.spec,
            &lc.cfg.design.n_list,
            lc.cfg.design.reps,
            lc.cfg.design.base_seed,
            &lc.solver,
        )
    })?;
    let dir = out.unwrap_or_else(|| lc.cfg.output.dir.clone());
    std::fs::create_dir_all(&dir)?;
    let csv_path = dir.join("table.csv");
    std::fs::write(&csv_path, table.to_csv(lc.goal.m))?;

    let truth = lc
        .goal
        .truth
        .as_ref()
        .ok_or_else(|| CliError::config("model carries no ground truth; diagnostics need one"))?
        .clone();
    let rate = rate_diagnostic(&table, &truth.theta, lc.goal.smoothness.beta())?;
    let (pred, _) = build_prediction(&lc)?;
    let cov = coverage_normality(&table, &truth.theta, &pred.c_pred)?;
    let th = &lc.cfg.thresholds;
    let summary = SummaryDoc {
        version: VERSION.into(),
        config_hash: lc.hash.clone(),
        model: lc.goal.name.clone(),
        slope: rate.slope,
        slope_se: rate.slope_se,
        expected_slope: rate.expected_slope,
        medians: rate.medians.clone(),
        ns: rate.ns.clone(),
        frob_rel_err: cov.frob_rel_err,
        ks: cov.ks_per_coord.clone(),
        ks_critical: cov.ks_critical,
        pass_slope: rate.slope >= th.slope_lo && rate.slope <= th.slope_hi,
        pass_cov: cov.frob_rel_err <= th.frob_max,
        pass_ks: cov.ks_per_coord.iter().all(|&k| k < cov.ks_critical),
        thresholds: Thresholds {
            slope_lo: th.slope_lo,
            slope_hi: th.slope_hi,
            frob_max: th.frob_max,
        },
    };
    let summary_path = write_json(&dir, "summary.json", &summary)?;
    println!("wrote {}", csv_path.display());
    println!("wrote {}", summary_path.display());
    println!(
        "slope={} (expected {}) frob_rel_err={} pass_slope={} pass_cov={} pass_ks={}",
        summary.slope,
        summary.expected_slope,
        summary.frob_rel_err,
        summary.pass_slope,
        summary.pass_cov,
        summary.pass_ks
    );
    Ok(())
}

fn cmd_validate_pl(config: &Path, n_z: usize) -> Result<(), CliError> {
    let lc = load_config(config)?;
    let pl = lc
        .goal
        .pl
        .as_ref()
        .ok_or_else(|| CliError::config("model carries no piecewise-linear definition"))?;
    let theta_grid: Vec<Vec<f64>> = {
        let lo = &lc.goal.theta_box.lower;
        let hi = &lc.goal.theta_box.upper;
        let pts = 11usize;
        // axis-aligned sweep per coordinate around the box midpoint
        let mid: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).collect();
        let mut grid = vec![mid.clone()];
        for j in 0..lc.goal.m {
            for k in 0..pts {
                let mut t = mid.clone();
                t[j] = lo[j] + (hi[j] - lo[j]) * k as f64 / (pts - 1) as f64;
                grid.push(t);
            }
        }
        grid
    };
    let mut rng = stream_rng(stream_seed(lc.cfg.design.base_seed, 0, 0));
    let mut z_sample = lc.goal.sampler.draw_sample(n_z, &mut rng);
    // deterministic boundary probes: for every selector and theta, a point z
    // with the selector argument exactly zero, where overlapping closed
    // half-lines reveal themselves
    let (z_lo, z_hi) = lc.goal.sampler.support();
    for theta in &theta_grid {
        let tt = pl.map_theta(theta);
        for piece in &pl.pieces {
            for sel in &piece.selectors {
                let offset: f64 = sel.l.iter().zip(&tt).map(|(a, b)| a * b).sum::<f64>() + sel.a;
                let (k, lk) = sel
                    .l
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                    .map(|(k, v)| (k, *v))
                    .unwrap_or((0, 0.0));
                if lk == 0.0 {
                    continue;
                }
                let mut z = vec![0.0; lc.goal.d];
                z[k] = -offset / lk;
                if z.iter().zip(&z_lo).all(|(v, lo)| v >= lo)
                    && z.iter().zip(&z_hi).all(|(v, hi)| v <= hi)
                {
                    z_sample.push(z);
                }
            }
        }
    }
    let report = pl.validate_partition(&theta_grid, &z_sample);
    println!(
        "partition: checked={} sum_violations={} disjoint_violations={}",
        report.checked, report.sum_violations, report.disjoint_violations
    );
    let theta_ref = lc
        .goal
        .truth
        .as_ref()
        .map(|t| t.theta.clone())
        .unwrap_or_else(|| {
            lc.goal
                .theta_box
                .lower
                .iter()
                .zip(&lc.goal.theta_box.upper)
                .map(|(a, b)| 0.5 * (a + b))
                .collect()
        });
    let deltas = [0.2, 0.1, 0.05, 0.02];
    let ratios = pl.boundary_ratios(&theta_ref, &z_sample, &deltas);
    println!("boundary ratios P(|W| <= delta) / delta^2 per cross pair:");
    for r in &ratios {
        println!(
            "pieces ({}:{}, {}:{}) delta={} ratio={}",
            r.piece_a, r.selector_a, r.piece_b, r.selector_b, r.delta, r.ratio
        );
    }
    if report.total_violations() > 0 {
        if let Some((theta, z)) = &report.first_violation {
            eprintln!("first violation at theta={theta:?} z={z:?}");
        }
        return Err(CliError { code: 4, msg: "partition violations found".into() });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Rho { sample, risk, alpha, gamma, p } => cmd_rho(&sample, &risk, alpha, gamma, p),
        Cmd::Solve { config, seed, out } => cmd_solve(&config, seed, out),
        Cmd::Predict { config, out } => cmd_predict(&config, out),
        Cmd::Experiment { config, seed, out, threads } => {
            cmd_experiment(&config, seed, out, threads)
        }
        Cmd::ValidatePl { config, n_z } => cmd_validate_pl(&config, n_z),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.msg);
        std::process::exit(e.code);
    }
}
