//! Divergence risk measures evaluated through their optimized certainty
//! equivalent: rho(Y) = inf_x E[Phi*(Y + x)] - x, where Phi* is the
//! Fenchel-Legendre transform of a convex generator Phi.
//!
//! The inner minimization is one-dimensional and convex with computable
//! one-sided derivatives, so everything here reduces to bracketing plus
//! bisection on the subgradient sign, with exact closed forms for the
//! average-value-at-risk and entropic families.

use crate::error::{Error, Result};

/// Overflow guard for the entropic generic path, in natural-log units.
const EXP_OVERFLOW: f64 = 700.0;

/// Built-in generator families plus an escape hatch for user-supplied pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DivergenceKind {
    /// Average value at risk at level `alpha` in (0, 1).
    Avar { alpha: f64 },
    /// Entropic risk with aversion `gamma` > 0.
    Entropic { gamma: f64 },
    /// Polynomial generator x^p / p with exponent `p` > 1.
    Polynomial { p: f64 },
    Custom,
}

type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A generator Phi bundled with its transform Phi*, the one-sided derivatives
/// of Phi*, and the anchor constants used by the explicit minimizer bracket.
pub struct DivergencePair {
    kind: DivergenceKind,
    phi: ScalarFn,
    phi_star: ScalarFn,
    phi_star_dplus: ScalarFn,
    phi_star_dminus: ScalarFn,
    phi_at_zero: f64,
    /// (x0, Phi(x0)) with x0 > 1 in the effective domain of Phi.
    anchor: Option<(f64, f64)>,
    /// True iff Phi(0) = 0 and Phi* is strictly convex on (0, inf), which
    /// guarantees a unique inner minimizer for every distribution.
    unique_minimizer: bool,
}

impl DivergencePair {
    /// Average value at risk: Phi(x) = 0 for x <= 1/(1-alpha), +inf beyond;
    /// Phi*(y) = y+ / (1-alpha).
    pub fn avar(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "avar level must lie in (0,1), got {alpha}"
            )));
        }
        let cap = 1.0 / (1.0 - alpha);
        let slope = cap;
        Ok(Self {
            kind: DivergenceKind::Avar { alpha },
            phi: Box::new(move |x| if x <= cap { 0.0 } else { f64::INFINITY }),
            phi_star: Box::new(move |y| y.max(0.0) * slope),
            phi_star_dplus: Box::new(move |y| if y >= 0.0 { slope } else { 0.0 }),
            phi_star_dminus: Box::new(move |y| if y > 0.0 { slope } else { 0.0 }),
            phi_at_zero: 0.0,
            anchor: Some((cap, 0.0)),
            unique_minimizer: false,
        })
    }

    /// Entropic risk: Phi(x) = (x ln x - x + 1)/gamma, Phi(0) = 1/gamma;
    /// Phi*(y) = (exp(gamma y) - 1)/gamma.
    pub fn entropic(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "entropic aversion must be positive, got {gamma}"
            )));
        }
        let x0 = 2.0;
        let phi_x0 = (2.0 * std::f64::consts::LN_2 - 1.0) / gamma;
        Ok(Self {
            kind: DivergenceKind::Entropic { gamma },
            phi: Box::new(move |x| {
                if x < 0.0 {
                    f64::INFINITY
                } else if x == 0.0 {
                    1.0 / gamma
                } else {
                    (x * x.ln() - x + 1.0) / gamma
                }
            }),
            phi_star: Box::new(move |y| ((gamma * y).exp() - 1.0) / gamma),
            phi_star_dplus: Box::new(move |y| (gamma * y).exp()),
            phi_star_dminus: Box::new(move |y| (gamma * y).exp()),
            phi_at_zero: 1.0 / gamma,
            anchor: Some((x0, phi_x0)),
            unique_minimizer: false,
        })
    }

    /// Polynomial generator: Phi(x) = x^p/p; Phi*(y) = (y+)^q / q with
    /// q = p/(p-1) the conjugate exponent.
    pub fn polynomial(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "polynomial exponent must exceed 1, got {p}"
            )));
        }
        let q = p / (p - 1.0);
        let x0 = 2.0;
        Ok(Self {
            kind: DivergenceKind::Polynomial { p },
            phi: Box::new(move |x| {
                if x < 0.0 {
                    f64::INFINITY
                } else {
                    x.powf(p) / p
                }
            }),
            phi_star: Box::new(move |y| y.max(0.0).powf(q) / q),
            phi_star_dplus: Box::new(move |y| y.max(0.0).powf(q - 1.0)),
            phi_star_dminus: Box::new(move |y| y.max(0.0).powf(q - 1.0)),
            phi_at_zero: 0.0,
            anchor: Some((x0, x0.powf(p) / p)),
            unique_minimizer: true,
        })
    }

    /// User-supplied pair. The anchor is optional; without it the minimizer
    /// bracket falls back to geometric expansion.
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        phi: ScalarFn,
        phi_star: ScalarFn,
        phi_star_dplus: ScalarFn,
        phi_star_dminus: ScalarFn,
        phi_at_zero: f64,
        anchor: Option<(f64, f64)>,
        unique_minimizer: bool,
    ) -> Self {
        Self {
            kind: DivergenceKind::Custom,
            phi,
            phi_star,
            phi_star_dplus,
            phi_star_dminus,
            phi_at_zero,
            anchor,
            unique_minimizer,
        }
    }

    /// Rebuild a built-in pair from its tag.
    pub fn from_kind(kind: DivergenceKind) -> Result<Self> {
        match kind {
            DivergenceKind::Avar { alpha } => Self::avar(alpha),
            DivergenceKind::Entropic { gamma } => Self::entropic(gamma),
            DivergenceKind::Polynomial { p } => Self::polynomial(p),
            DivergenceKind::Custom => Err(Error::InvalidParameter(
                "custom pairs cannot be rebuilt from a tag".into(),
            )),
        }
    }

    pub fn kind(&self) -> DivergenceKind {
        self.kind
    }

    pub fn phi(&self, x: f64) -> f64 {
        (self.phi)(x)
    }

    pub fn phi_star(&self, y: f64) -> f64 {
        (self.phi_star)(y)
    }

    pub fn phi_star_dplus(&self, y: f64) -> f64 {
        (self.phi_star_dplus)(y)
    }

    pub fn phi_star_dminus(&self, y: f64) -> f64 {
        (self.phi_star_dminus)(y)
    }

    pub fn phi_at_zero(&self) -> f64 {
        self.phi_at_zero
    }

    pub fn anchor(&self) -> Option<(f64, f64)> {
        self.anchor
    }

    pub fn has_unique_minimizer(&self) -> bool {
        self.unique_minimizer
    }

    /// True when Phi* is differentiable at `y`.
    pub fn differentiable_at(&self, y: f64) -> bool {
        self.phi_star_dplus(y) == self.phi_star_dminus(y)
    }
}

impl std::fmt::Debug for DivergencePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DivergencePair")
            .field("kind", &self.kind)
            .field("phi_at_zero", &self.phi_at_zero)
            .field("anchor", &self.anchor)
            .field("unique_minimizer", &self.unique_minimizer)
            .finish()
    }
}

/// A finite sample of transformed observations, stored sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    values: Vec<f64>,
}

impl EmpiricalSample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Values in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Sample shifted by a constant; order is preserved.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v + c).collect())
    }
}

/// Outcome of the inner minimization: the value, the minimizer interval
/// [x_lo, x_hi], the bracket that enclosed it, and the evaluation count.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct OceResult {
    pub value: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub bracket: (f64, f64),
    pub evals: usize,
}

impl OceResult {
    pub fn x_mid(&self) -> f64 {
        0.5 * (self.x_lo + self.x_hi)
    }
}

/// Empirical certainty-equivalent objective (1/n) sum Phi*(y_j + x) - x.
pub fn oce_objective(sample: &EmpiricalSample, spec: &DivergencePair, x: f64) -> Result<f64> {
    if let DivergenceKind::Entropic { gamma } = spec.kind() {
        let arg = gamma * (sample.max() + x);
        if arg > EXP_OVERFLOW {
            return Err(Error::ObjectiveOverflow(arg));
        }
    }
    let n = sample.len() as f64;
    let mut acc = 0.0;
    for &y in sample.values() {
        let v = spec.phi_star(y + x);
        if !v.is_finite() {
            return Err(Error::ObjectiveOverflow(y + x));
        }
        acc += v;
    }
    Ok(acc / n - x)
}

/// One-sided derivatives of the objective at `x`: left <= right, both
/// nondecreasing in x.
pub fn oce_subgradient(sample: &EmpiricalSample, spec: &DivergencePair, x: f64) -> (f64, f64) {
    let n = sample.len() as f64;
    let mut left = 0.0;
    let mut right = 0.0;
    for &y in sample.values() {
        left += spec.phi_star_dminus(y + x);
        right += spec.phi_star_dplus(y + x);
    }
    (left / n - 1.0, right / n - 1.0)
}

/// Explicit bracket containing every minimizer of the objective, from the
/// growth bounds Phi*(y + x) - x >= max(-Phi(0) - x, x0 y - Phi(x0) + x (x0 - 1)).
pub fn minimizer_bracket(sample: &EmpiricalSample, spec: &DivergencePair) -> Result<(f64, f64)> {
    let (x0, phi_x0) = spec.anchor().ok_or(Error::BracketUnavailable)?;
    let n = sample.len() as f64;
    let mut mean_star = 0.0;
    let mut mean_star_anchor = 0.0;
    for &y in sample.values() {
        let s = spec.phi_star(y);
        mean_star += s;
        mean_star_anchor += s - x0 * y;
    }
    mean_star /= n;
    mean_star_anchor /= n;
    let lb = (-spec.phi_at_zero() - mean_star).min(0.0);
    let ub = ((mean_star_anchor + phi_x0) / (x0 - 1.0)).max(0.0);
    Ok((lb, ub))
}

/// Fallback bracket for pairs without an anchor: expand [-1, 1] geometrically
/// until the subgradient changes sign across the interval. Capped at 60
/// doublings.
pub fn geometric_bracket(sample: &EmpiricalSample, spec: &DivergencePair) -> Result<(f64, f64)> {
    // The minimizer set is {x : left(x) <= 0 <= right(x)} and is a compact
    // interval, so for half large enough right(-half) < 0 < left(half).
    let mut half = 1.0;
    for _ in 0..60 {
        let right_at_lo = oce_subgradient(sample, spec, -half).1;
        let left_at_hi = oce_subgradient(sample, spec, half).0;
        if right_at_lo < 0.0 && left_at_hi > 0.0 {
            return Ok((-half, half));
        }
        half *= 2.0;
    }
    Err(Error::BracketUnavailable)
}

fn bracket_or_fallback(sample: &EmpiricalSample, spec: &DivergencePair) -> Result<(f64, f64)> {
    match minimizer_bracket(sample, spec) {
        Ok(b) => Ok(b),
        Err(Error::BracketUnavailable) => geometric_bracket(sample, spec),
        Err(e) => Err(e),
    }
}

/// Minimize the certainty-equivalent objective by bisection on the
/// subgradient sign, returning the value at the midpoint of the maximal
/// minimizer interval {x : left(x) <= 0 <= right(x)}.
pub fn oce_minimize(
    sample: &EmpiricalSample,
    spec: &DivergencePair,
    tol: f64,
) -> Result<OceResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (lb, ub) = bracket_or_fallback(sample, spec)?;
    let mut evals = 0usize;
    let right_at = |x: f64, evals: &mut usize| {
        *evals += 1;
        oce_subgradient(sample, spec, x).1
    };
    let left_at = |x: f64, evals: &mut usize| {
        *evals += 1;
        oce_subgradient(sample, spec, x).0
    };

    // x_lo = inf { x : right(x) >= 0 }; right is nondecreasing and >= 0 at ub.
    let x_lo = if right_at(lb, &mut evals) >= 0.0 {
        lb
    } else {
        let (mut a, mut b) = (lb, ub);
        for _ in 0..200 {
            if b - a <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            if right_at(mid, &mut evals) >= 0.0 {
                b = mid;
            } else {
                a = mid;
            }
        }
        b
    };
    // x_hi = sup { x : left(x) <= 0 }; left is nondecreasing and <= 0 at lb.
    let x_hi = if left_at(ub, &mut evals) <= 0.0 {
        ub
    } else {
        let (mut a, mut b) = (lb, ub);
        for _ in 0..200 {
            if b - a <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            if left_at(mid, &mut evals) <= 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        a
    };
    let (x_lo, x_hi) = if x_lo <= x_hi { (x_lo, x_hi) } else { (x_hi, x_lo) };
    evals += 1;
    let value = oce_objective(sample, spec, 0.5 * (x_lo + x_hi)).map_err(|e| match e {
        Error::ObjectiveOverflow(_) => Error::NumericOverflow,
        other => other,
    })?;
    if !value.is_finite() {
        return Err(Error::NumericOverflow);
    }
    Ok(OceResult {
        value,
        x_lo,
        x_hi,
        bracket: (lb, ub),
        evals,
    })
}

/// Exact average value at risk on the sorted sample: the tail integral
/// (1/(1-alpha)) int_alpha^1 Fhat^{-}(u) du with fractional weight on the
/// quantile atom. The minimizer interval is the negated quantile interval
/// [-Fhat^{->}(alpha), -Fhat^{<-}(alpha)].
pub fn avar_closed_form(sample: &EmpiricalSample, alpha: f64) -> Result<OceResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "avar level must lie in (0,1), got {alpha}"
        )));
    }
    let n = sample.len();
    let nf = n as f64;
    let vals = sample.values();
    let mut acc = 0.0;
    // atom j occupies ((j-1)/n, j/n]; weight = overlap with (alpha, 1]
    let start = (alpha * nf).floor() as usize;
    for (j, &y) in vals.iter().enumerate().skip(start.saturating_sub(1)) {
        let lo = (j as f64 / nf).max(alpha);
        let hi = (j + 1) as f64 / nf;
        if hi > lo {
            acc += (hi - lo) * y;
        }
    }
    let value = acc / (1.0 - alpha);

    // left-continuous quantile: index ceil(alpha n); right-continuous:
    // floor(alpha n) + 1 (both 1-based, clamped to the sample range)
    let an = alpha * nf;
    let k_left = (an.ceil() as usize).clamp(1, n);
    let k_right = ((an.floor() as usize) + 1).clamp(1, n);
    let q_left = vals[k_left - 1];
    let q_right = vals[k_right - 1];
    Ok(OceResult {
        value,
        x_lo: -q_right,
        x_hi: -q_left,
        bracket: (-q_right, -q_left),
        evals: n,
    })
}

/// Exact entropic risk via shifted log-sum-exp; the inner minimizer is the
/// unique point x = -value.
pub fn entropic_closed_form(sample: &EmpiricalSample, gamma: f64) -> Result<OceResult> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "entropic aversion must be positive, got {gamma}"
        )));
    }
    let m = sample.max();
    let n = sample.len() as f64;
    let mut acc = 0.0;
    for &y in sample.values() {
        acc += (gamma * (y - m)).exp();
    }
    let value = m + (acc / n).ln() / gamma;
    Ok(OceResult {
        value,
        x_lo: -value,
        x_hi: -value,
        bracket: (-value, -value),
        evals: sample.len(),
    })
}

/// Population risk for a distribution given by its quantile function, by
/// midpoint quadrature on a uniform u-grid followed by the empirical inner
/// minimization on the induced discrete sample.
pub fn population_oce(
    quantile_fn: impl Fn(f64) -> f64,
    spec: &DivergencePair,
    nodes: usize,
) -> Result<f64> {
    if nodes == 0 {
        return Err(Error::InvalidParameter("quadrature needs nodes".into()));
    }
    let mut values = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let u = (k as f64 + 0.5) / nodes as f64;
        let y = quantile_fn(u);
        if !y.is_finite() {
            return Err(Error::UnboundedSupport);
        }
        values.push(y);
    }
    let sample = EmpiricalSample::new(values)?;
    Ok(oce_value_fast(&sample, spec, 1e-10)?.value)
}

/// Inner minimization dispatch: exact closed forms for the built-in families,
/// generic bisection otherwise.
pub fn oce_value_fast(
    sample: &EmpiricalSample,
    spec: &DivergencePair,
    tol: f64,
) -> Result<OceResult> {
    match spec.kind() {
        DivergenceKind::Avar { alpha } => avar_closed_form(sample, alpha),
        DivergenceKind::Entropic { gamma } => entropic_closed_form(sample, gamma),
        _ => oce_minimize(sample, spec, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample(vals: &[f64]) -> EmpiricalSample {
        EmpiricalSample::new(vals.to_vec()).unwrap()
    }

    #[test]
    fn objective_entropic_zero_at_origin() {
        let spec = DivergencePair::entropic(1.0).unwrap();
        let v = oce_objective(&sample(&[0.0]), &spec, 0.0).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn objective_avar_hand_value() {
        let spec = DivergencePair::avar(0.5).unwrap();
        let v = oce_objective(&sample(&[1.0, 2.0, 3.0, 4.0]), &spec, -2.0).unwrap();
        // mean((y-2)+)/0.5 + 2 = 1.5 + 2
        assert_abs_diff_eq!(v, 3.5, epsilon = 1e-12);
    }

    #[test]
    fn objective_constant_sample_recenters() {
        let c = 3.7;
        for spec in [
            DivergencePair::avar(0.3).unwrap(),
            DivergencePair::entropic(2.0).unwrap(),
            DivergencePair::polynomial(2.5).unwrap(),
        ] {
            let v = oce_objective(&sample(&[c, c, c]), &spec, -c).unwrap();
            assert_abs_diff_eq!(v, c, epsilon = 1e-12);
        }
    }

    #[test]
    fn objective_overflow_signalled() {
        let spec = DivergencePair::entropic(1.0).unwrap();
        let err = oce_objective(&sample(&[800.0]), &spec, 0.0).unwrap_err();
        assert!(matches!(err, Error::ObjectiveOverflow(_)));
    }

    #[test]
    fn subgradient_avar_hand_value() {
        let spec = DivergencePair::avar(0.5).unwrap();
        let (l, r) = oce_subgradient(&sample(&[1.0, 2.0, 3.0, 4.0]), &spec, -2.5);
        assert_abs_diff_eq!(l, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn subgradient_entropic_at_zero() {
        let spec = DivergencePair::entropic(2.0).unwrap();
        let (l, r) = oce_subgradient(&sample(&[0.0]), &spec, 0.0);
        assert_abs_diff_eq!(l, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn subgradient_monotone_in_x() {
        let spec = DivergencePair::polynomial(3.0).unwrap();
        let s = sample(&[-1.0, 0.5, 2.0]);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..40 {
            let x = -5.0 + 0.25 * k as f64;
            let (l, r) = oce_subgradient(&s, &spec, x);
            assert!(l <= r + 1e-15);
            assert!(l >= prev - 1e-12);
            prev = l;
        }
    }

    #[test]
    fn bracket_avar_hand_value() {
        let spec = DivergencePair::avar(0.5).unwrap();
        let (lb, ub) = minimizer_bracket(&sample(&[1.0, 2.0, 3.0, 4.0]), &spec).unwrap();
        assert_abs_diff_eq!(lb, -5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ub, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bracket_contains_entropic_minimizer_at_zero() {
        let spec = DivergencePair::entropic(1.0).unwrap();
        let (lb, ub) = minimizer_bracket(&sample(&[0.0]), &spec).unwrap();
        assert!(lb <= 0.0 && 0.0 <= ub);
    }

    #[test]
    fn bracket_contains_constant_minimizer() {
        let spec = DivergencePair::avar(0.25).unwrap();
        for c in [-4.0, -0.5, 0.0, 2.5] {
            let (lb, ub) = minimizer_bracket(&sample(&[c]), &spec).unwrap();
            assert!(lb <= -c && -c <= ub, "c={c} bracket=({lb},{ub})");
        }
    }

    #[test]
    fn minimize_avar_hand_case() {
        let spec = DivergencePair::avar(0.5).unwrap();
        let r = oce_minimize(&sample(&[1.0, 2.0, 3.0, 4.0]), &spec, 1e-10).unwrap();
        assert_abs_diff_eq!(r.value, 3.5, epsilon = 1e-9);
        assert_abs_diff_eq!(r.x_lo, -3.0, epsilon = 1e-6);
        assert_abs_diff_eq!(r.x_hi, -2.0, epsilon = 1e-6);
    }

    #[test]
    fn minimize_entropic_constant() {
        let spec = DivergencePair::entropic(1.7).unwrap();
        let c = -2.3;
        let r = oce_minimize(&sample(&[c, c]), &spec, 1e-10).unwrap();
        assert_abs_diff_eq!(r.value, c, epsilon = 1e-9);
        assert_abs_diff_eq!(r.x_mid(), -c, epsilon = 1e-7);
    }

    #[test]
    fn minimize_entropic_two_point() {
        let spec = DivergencePair::entropic(1.0).unwrap();
        let r = oce_minimize(&sample(&[0.0, 1.0]), &spec, 1e-10).unwrap();
        let expect = ((1.0 + std::f64::consts::E) / 2.0).ln();
        assert_abs_diff_eq!(r.value, expect, epsilon = 1e-9);
        assert_abs_diff_eq!(r.x_mid(), -expect, epsilon = 1e-7);
        assert_abs_diff_eq!(expect, 0.620115, epsilon = 1e-6);
    }

    #[test]
    fn avar_closed_form_hand_cases() {
        let s = sample(&[1.0, 2.0, 3.0, 4.0]);
        let r = avar_closed_form(&s, 0.5).unwrap();
        assert_abs_diff_eq!(r.value, 3.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.x_lo, -3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.x_hi, -2.0, epsilon = 1e-12);
        let r = avar_closed_form(&s, 0.75).unwrap();
        assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-12);
        let r = avar_closed_form(&sample(&[5.5]), 0.3).unwrap();
        assert_abs_diff_eq!(r.value, 5.5, epsilon = 1e-12);
    }

    #[test]
    fn entropic_closed_form_hand_cases() {
        let r = entropic_closed_form(&sample(&[4.2, 4.2, 4.2]), 0.8).unwrap();
        assert_abs_diff_eq!(r.value, 4.2, epsilon = 1e-12);
        let r = entropic_closed_form(&sample(&[0.0, 1.0]), 1.0).unwrap();
        assert_abs_diff_eq!(r.value, ((1.0 + std::f64::consts::E) / 2.0).ln(), epsilon = 1e-14);
        // small-gamma limit approaches the mean
        let t = 3.0;
        let r = entropic_closed_form(&sample(&[-t, t]), 1e-6).unwrap();
        assert!(r.value.abs() < 1e-4);
    }

    #[test]
    fn entropic_closed_form_is_shift_stable() {
        // values large enough that a naive exp would overflow
        let r = entropic_closed_form(&sample(&[1000.0, 1001.0]), 1.0).unwrap();
        assert!(r.value.is_finite());
        assert!(r.value > 1000.0 && r.value < 1001.0);
    }

    #[test]
    fn population_uniform_avar() {
        let spec = DivergencePair::avar(0.5).unwrap();
        let v = population_oce(|u| u, &spec, 100_000).unwrap();
        assert_abs_diff_eq!(v, 0.75, epsilon = 1e-4);
    }

    #[test]
    fn population_degenerate() {
        let spec = DivergencePair::entropic(2.0).unwrap();
        let v = population_oce(|_| -1.25, &spec, 1000).unwrap();
        assert_abs_diff_eq!(v, -1.25, epsilon = 1e-9);
    }

    #[test]
    fn population_uniform_entropic() {
        let spec = DivergencePair::entropic(1.0).unwrap();
        let v = population_oce(|u| 2.0 * u - 1.0, &spec, 100_000).unwrap();
        assert_abs_diff_eq!(v, 1.0f64.sinh().ln(), epsilon = 1e-4);
    }

    #[test]
    fn population_unbounded_support_rejected() {
        let spec = DivergencePair::avar(0.5).unwrap();
        let err = population_oce(|u| (u / (1.0 - u)).ln() * f64::INFINITY, &spec, 100).unwrap_err();
        assert!(matches!(err, Error::UnboundedSupport));
    }

    #[test]
    fn unique_minimizer_flags() {
        assert!(DivergencePair::polynomial(2.0).unwrap().has_unique_minimizer());
        assert!(!DivergencePair::avar(0.5).unwrap().has_unique_minimizer());
    }

    #[test]
    fn empty_sample_rejected() {
        assert!(matches!(
            EmpiricalSample::new(vec![]).unwrap_err(),
            Error::EmptySample
        ));
    }
}
