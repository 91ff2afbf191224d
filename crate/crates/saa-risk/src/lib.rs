//! Risk-averse stochastic programming by sample average approximation under
//! divergence risk measures, with the machinery needed to verify the
//! estimator asymptotics empirically: exact inner minimization of the
//! optimized certainty equivalent, a derivative-free outer solver over a
//! compact parameter box, sandwich-covariance predictions, and a
//! deterministic Monte Carlo replication harness.

pub mod asymptotics;
pub mod divergence;
pub mod error;
pub mod models;
pub mod pl;
pub mod rng;
pub mod solver;

pub use divergence::{
    avar_closed_form, entropic_closed_form, oce_minimize, oce_objective, oce_subgradient,
    oce_value_fast, population_oce, DivergenceKind, DivergencePair, EmpiricalSample, OceResult,
};
pub use error::{Error, Result};
pub use models::{builtin, builtin_models, Builtin, GoalModel, ParamBox, Smoothness, Truth, ZDist};
pub use pl::{IntervalKind, PLGoal, PartitionReport, Piece, Selector};
pub use solver::{
    saa_objective, solve_population, solve_saa, PopulationSolution, SaaSolution, SolveConfig,
};
pub use asymptotics::{
    coverage_normality, estimate_hessian, estimate_sigma_fd, predict_covariance, rate_diagnostic,
    run_replications, sigma_pl, AsymptoticPrediction, CoverageReport, HessianEval, RateDiagnostic,
    ReplicationRow, ReplicationTable,
};
