//! Property tests for the risk-evaluation invariants: translation
//! covariance, monotonicity, the mean lower bound, closed-form/generic
//! agreement, and bracket soundness on random samples.

use proptest::prelude::*;
use saa_risk::divergence::{
    avar_closed_form, entropic_closed_form, minimizer_bracket, oce_minimize, oce_objective,
    oce_subgradient, DivergencePair, EmpiricalSample,
};

fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-20.0f64..20.0, 1..60)
}

fn spec_strategy() -> impl Strategy<Value = DivergencePair> {
    prop_oneof![
        (0.05f64..0.95).prop_map(|a| DivergencePair::avar(a).unwrap()),
        (0.1f64..2.0).prop_map(|g| DivergencePair::entropic(g).unwrap()),
        (1.5f64..4.0).prop_map(|p| DivergencePair::polynomial(p).unwrap()),
    ]
}

fn value_of(values: &[f64], spec: &DivergencePair) -> f64 {
    let s = EmpiricalSample::new(values.to_vec()).unwrap();
    oce_minimize(&s, spec, 1e-12).unwrap().value
}

proptest! {
    #[test]
    fn translation_covariance(values in sample_strategy(), spec in spec_strategy(), c in -5.0f64..5.0) {
        let base = value_of(&values, &spec);
        let shifted: Vec<f64> = values.iter().map(|v| v + c).collect();
        let moved = value_of(&shifted, &spec);
        prop_assert!((moved - (base + c)).abs() < 1e-7, "{moved} vs {}", base + c);
    }

    #[test]
    fn monotone_in_sample(values in sample_strategy(), spec in spec_strategy(), bump in 0.0f64..3.0, idx in any::<prop::sample::Index>()) {
        let base = value_of(&values, &spec);
        let mut larger = values.clone();
        let k = idx.index(larger.len());
        larger[k] += bump;
        let bigger = value_of(&larger, &spec);
        prop_assert!(bigger >= base - 1e-8);
    }

    #[test]
    fn value_dominates_mean(values in sample_strategy(), pick in 0usize..2, a in 0.05f64..0.95, g in 0.1f64..2.0) {
        // holds for generators with Phi*(y) >= y (avar, entropic), not for
        // the polynomial family, whose conjugate dips below y near zero
        let spec = if pick == 0 {
            DivergencePair::avar(a).unwrap()
        } else {
            DivergencePair::entropic(g).unwrap()
        };
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        prop_assert!(value_of(&values, &spec) >= mean - 1e-9);
    }

    #[test]
    fn subgradient_consistent(values in sample_strategy(), spec in spec_strategy(), x in -10.0f64..10.0, dx in 0.01f64..2.0) {
        let s = EmpiricalSample::new(values).unwrap();
        let (left, right) = oce_subgradient(&s, &spec, x);
        prop_assert!(left <= right + 1e-12);
        let (left2, _) = oce_subgradient(&s, &spec, x + dx);
        prop_assert!(left2 >= right - 1e-12, "subgradient must be nondecreasing");
        // finite-difference check of the convexity inequality
        if let (Ok(f0), Ok(f1)) = (oce_objective(&s, &spec, x), oce_objective(&s, &spec, x + dx)) {
            prop_assert!(f1 - f0 >= right * dx - 1e-7 * (1.0 + f0.abs()));
            prop_assert!(f1 - f0 <= left2 * dx + 1e-7 * (1.0 + f0.abs()));
        }
    }

    #[test]
    fn bracket_contains_closed_form_minimizers(values in sample_strategy(), alpha in 0.05f64..0.95, gamma in 0.1f64..2.0) {
        let s = EmpiricalSample::new(values).unwrap();
        for (spec, r) in [
            (DivergencePair::avar(alpha).unwrap(), avar_closed_form(&s, alpha).unwrap()),
            (DivergencePair::entropic(gamma).unwrap(), entropic_closed_form(&s, gamma).unwrap()),
        ] {
            let (lb, ub) = minimizer_bracket(&s, &spec).unwrap();
            prop_assert!(lb <= r.x_lo + 1e-9 && r.x_hi <= ub + 1e-9,
                "bracket [{lb},{ub}] vs interval [{},{}]", r.x_lo, r.x_hi);
        }
    }

    #[test]
    fn closed_forms_match_generic(values in sample_strategy(), alpha in 0.05f64..0.95, gamma in 0.1f64..2.0) {
        let s = EmpiricalSample::new(values).unwrap();
        let spec_a = DivergencePair::avar(alpha).unwrap();
        let gen_a = oce_minimize(&s, &spec_a, 1e-12).unwrap();
        let cf_a = avar_closed_form(&s, alpha).unwrap();
        prop_assert!((gen_a.value - cf_a.value).abs() < 1e-8);

        let spec_e = DivergencePair::entropic(gamma).unwrap();
        let gen_e = oce_minimize(&s, &spec_e, 1e-12).unwrap();
        let cf_e = entropic_closed_form(&s, gamma).unwrap();
        prop_assert!((gen_e.value - cf_e.value).abs() < 1e-8);
        prop_assert!((gen_e.x_mid() - cf_e.x_mid()).abs() < 1e-6);
    }
}
