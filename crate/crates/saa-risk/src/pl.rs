//! Piecewise-linear goal functions: affine pieces gated by products of
//! half-line indicator selectors that form an exact partition of unity,
//!
//!   G(theta, z) = sum_i [ min_l 1_{I_il}( L^i_l(T theta + z) + a^i_l ) ]
//!                       * ( Lambda_i(T theta + z) + b_i ),
//!
//! together with the closed-form score of the family at the optimum and the
//! empirical boundary-mass diagnostics used to vet test instances.

use crate::divergence::DivergencePair;
use crate::error::{Error, Result};

/// Admissible selector intervals: exactly [0, inf) or (0, inf).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    Closed,
    Open,
}

impl IntervalKind {
    #[inline]
    pub fn contains(&self, w: f64) -> bool {
        match self {
            IntervalKind::Closed => w >= 0.0,
            IntervalKind::Open => w > 0.0,
        }
    }
}

/// One gating condition: the indicator of `kind` at L(T theta + z) + a.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Selector {
    /// Linear form on R^d.
    pub l: Vec<f64>,
    pub a: f64,
    pub kind: IntervalKind,
}

/// One affine piece with its selectors.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Piece {
    /// Linear form on R^d.
    pub lambda: Vec<f64>,
    pub b: f64,
    pub selectors: Vec<Selector>,
}

/// A piecewise-linear goal instance.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PLGoal {
    pub m: usize,
    pub d: usize,
    /// Linear map R^m -> R^d, row-major (d rows of length m).
    pub t: Vec<f64>,
    pub pieces: Vec<Piece>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl PLGoal {
    pub fn new(m: usize, d: usize, t: Vec<f64>, pieces: Vec<Piece>) -> Result<Self> {
        if t.len() != m * d {
            return Err(Error::InvalidParameter(format!(
                "linear map has {} entries, expected {}",
                t.len(),
                m * d
            )));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidParameter("at least one piece required".into()));
        }
        for p in &pieces {
            if p.lambda.len() != d || p.selectors.is_empty() {
                return Err(Error::InvalidParameter(
                    "piece forms must have length d and at least one selector".into(),
                ));
            }
            if p.selectors.iter().any(|s| s.l.len() != d) {
                return Err(Error::InvalidParameter("selector forms must have length d".into()));
            }
        }
        Ok(Self { m, d, t, pieces })
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// T theta in R^d.
    pub fn map_theta(&self, theta: &[f64]) -> Vec<f64> {
        (0..self.d)
            .map(|row| dot(&self.t[row * self.m..(row + 1) * self.m], theta))
            .collect()
    }

    /// T applied to the k-th standard basis vector (the k-th column of T).
    fn map_basis(&self, k: usize) -> Vec<f64> {
        (0..self.d).map(|row| self.t[row * self.m + k]).collect()
    }

    /// Selector vector (f^1, ..., f^r) at (theta, z); exact comparisons, no
    /// tolerance, because the partition identities are exact set statements.
    pub fn selectors(&self, theta: &[f64], z: &[f64]) -> Vec<bool> {
        let tt = self.map_theta(theta);
        let w: Vec<f64> = tt.iter().zip(z).map(|(a, b)| a + b).collect();
        self.pieces
            .iter()
            .map(|p| {
                p.selectors
                    .iter()
                    .all(|s| s.kind.contains(dot(&s.l, &w) + s.a))
            })
            .collect()
    }

    /// Value of the single active piece; errors if the partition identities
    /// fail at (theta, z).
    pub fn evaluate(&self, theta: &[f64], z: &[f64]) -> Result<f64> {
        let active = self.selectors(theta, z);
        let count = active.iter().filter(|a| **a).count();
        if count != 1 {
            return Err(Error::InvalidPlInstance {
                theta: theta.to_vec(),
                z: z.to_vec(),
                active: count,
            });
        }
        let tt = self.map_theta(theta);
        let w: Vec<f64> = tt.iter().zip(z).map(|(a, b)| a + b).collect();
        let i = active.iter().position(|a| *a).unwrap();
        Ok(dot(&self.pieces[i].lambda, &w) + self.pieces[i].b)
    }

    /// Score vector of (theta, x) -> Phi*(G(theta, z) + x) at the population
    /// optimum: the active piece i contributes
    ///   Phi*'(Lambda_i(z) + Lambda_i(T theta*) + x* + b_i)
    ///     * (Lambda_i(T e_1), ..., Lambda_i(T e_m), 1).
    /// The kink flag is set when Phi* has distinct one-sided derivatives at
    /// the evaluated argument.
    pub fn mdot(
        &self,
        spec: &DivergencePair,
        theta_star: &[f64],
        x_star: f64,
        z: &[f64],
    ) -> (Vec<f64>, bool) {
        let active = self.selectors(theta_star, z);
        let tt = self.map_theta(theta_star);
        let mut out = vec![0.0; self.m + 1];
        let mut kink = false;
        for (i, piece) in self.pieces.iter().enumerate() {
            if !active[i] {
                continue;
            }
            let arg = dot(&piece.lambda, z) + dot(&piece.lambda, &tt) + x_star + piece.b;
            let dp = spec.phi_star_dplus(arg);
            if dp != spec.phi_star_dminus(arg) {
                kink = true;
            }
            for k in 0..self.m {
                out[k] += dp * dot(&piece.lambda, &self.map_basis(k));
            }
            out[self.m] += dp;
        }
        (out, kink)
    }

    /// Count violations of the sum-to-one and disjointness identities over
    /// the product of a theta grid and a z sample.
    pub fn validate_partition(&self, theta_grid: &[Vec<f64>], z_sample: &[Vec<f64>]) -> PartitionReport {
        let mut report = PartitionReport::default();
        for theta in theta_grid {
            for z in z_sample {
                report.checked += 1;
                let active = self.selectors(theta, z);
                let count = active.iter().filter(|a| **a).count();
                if count != 1 {
                    if count == 0 {
                        report.sum_violations += 1;
                    } else {
                        report.disjoint_violations += 1;
                    }
                    if report.first_violation.is_none() {
                        report.first_violation = Some((theta.clone(), z.clone()));
                    }
                }
            }
        }
        report
    }

    /// Empirical boundary-mass ratios for every cross pair of selector forms
    /// W_il = L^i_l + L^i_l(T theta*) + a^i_l from different pieces:
    /// #{z : |W_il| <= delta and |W_i'l'| <= delta} / (N delta^2).
    /// Bounded ratios support a square-integrable boundary (rate-level
    /// regularity); ratios vanishing as delta -> 0 support the stronger
    /// normality-level regularity.
    pub fn boundary_ratios(
        &self,
        theta_star: &[f64],
        z_sample: &[Vec<f64>],
        delta_grid: &[f64],
    ) -> Vec<BoundaryRatio> {
        let tt = self.map_theta(theta_star);
        // precompute W values per (piece, selector)
        let w_vals: Vec<Vec<Vec<f64>>> = self
            .pieces
            .iter()
            .map(|p| {
                p.selectors
                    .iter()
                    .map(|s| {
                        let off = dot(&s.l, &tt) + s.a;
                        z_sample.iter().map(|z| dot(&s.l, z) + off).collect()
                    })
                    .collect()
            })
            .collect();
        let n = z_sample.len() as f64;
        let mut out = Vec::new();
        for i in 0..self.pieces.len() {
            for i2 in (i + 1)..self.pieces.len() {
                for l in 0..self.pieces[i].selectors.len() {
                    for l2 in 0..self.pieces[i2].selectors.len() {
                        for &delta in delta_grid {
                            let count = w_vals[i][l]
                                .iter()
                                .zip(&w_vals[i2][l2])
                                .filter(|(a, b)| a.abs() <= delta && b.abs() <= delta)
                                .count();
                            out.push(BoundaryRatio {
                                piece_a: i,
                                selector_a: l,
                                piece_b: i2,
                                selector_b: l2,
                                delta,
                                ratio: count as f64 / (n * delta * delta),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, serde::Serialize)]
pub struct PartitionReport {
    pub checked: usize,
    pub sum_violations: usize,
    pub disjoint_violations: usize,
    pub first_violation: Option<(Vec<f64>, Vec<f64>)>,
}

impl PartitionReport {
    pub fn total_violations(&self) -> usize {
        self.sum_violations + self.disjoint_violations
    }

    pub fn accepted(&self) -> bool {
        self.total_violations() == 0
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundaryRatio {
    pub piece_a: usize,
    pub selector_a: usize,
    pub piece_b: usize,
    pub selector_b: usize,
    pub delta: f64,
    pub ratio: f64,
}

/// Two-piece instance on the sign of w = L(T theta + z) + a: piece 1 active
/// on w >= 0, piece 2 on w < 0.
pub fn two_piece(
    m: usize,
    d: usize,
    t: Vec<f64>,
    l: Vec<f64>,
    a: f64,
    lambda1: Vec<f64>,
    b1: f64,
    lambda2: Vec<f64>,
    b2: f64,
) -> Result<PLGoal> {
    let neg_l: Vec<f64> = l.iter().map(|v| -v).collect();
    PLGoal::new(
        m,
        d,
        t,
        vec![
            Piece {
                lambda: lambda1,
                b: b1,
                selectors: vec![Selector { l, a, kind: IntervalKind::Closed }],
            },
            Piece {
                lambda: lambda2,
                b: b2,
                selectors: vec![Selector { l: neg_l, a: -a, kind: IntervalKind::Open }],
            },
        ],
    )
}

/// Degenerate single-piece instance: a plain affine goal with the selector
/// identically one.
pub fn affine(m: usize, d: usize, t: Vec<f64>, lambda: Vec<f64>, b: f64) -> Result<PLGoal> {
    PLGoal::new(
        m,
        d,
        t,
        vec![Piece {
            lambda,
            b,
            selectors: vec![Selector { l: vec![0.0; d], a: 0.0, kind: IntervalKind::Closed }],
        }],
    )
}

/// Deliberately broken two-piece instance with both selector intervals
/// closed, double-active at w = 0.
pub fn both_closed_counterexample() -> PLGoal {
    PLGoal::new(
        1,
        1,
        vec![1.0],
        vec![
            Piece {
                lambda: vec![1.0],
                b: 1.0,
                selectors: vec![Selector { l: vec![1.0], a: 0.0, kind: IntervalKind::Closed }],
            },
            Piece {
                lambda: vec![1.0],
                b: 2.0,
                selectors: vec![Selector { l: vec![-1.0], a: 0.0, kind: IntervalKind::Closed }],
            },
        ],
    )
    .unwrap()
}
