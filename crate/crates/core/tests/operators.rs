use proptest::prelude::*;
use vfrac_core::v_operator::{coefficient, deriv_closed, deriv_limit, ml_deriv, OperatorConfig, Order};
use vfrac_core::verifier::param_sets;
use vfrac_core::{Catalog, FnSpec, MLParams};

fn catalog_functions(alpha: f64) -> Vec<FnSpec> {
    let entries = [
        Catalog::ExpAt { a: 0.5 },
        Catalog::SinAt { a: 1.3 },
        Catalog::CosAt { a: 0.7 },
        Catalog::Power { a: 2.5 },
        Catalog::TAlphaOverAlpha { alpha },
        Catalog::SinTAlphaOverAlpha { alpha },
        Catalog::CosTAlphaOverAlpha { alpha },
        Catalog::ExpTAlphaOverAlpha { alpha },
        Catalog::Mlf { mu: 0.8, kappa: 1.2 },
    ];
    entries.into_iter().map(|c| FnSpec::catalog(c).unwrap()).collect()
}

#[test]
fn closed_and_limit_forms_agree() {
    for params in param_sets() {
        for alpha in [0.1, 0.5, 0.9] {
            let cfg = OperatorConfig::new(params, Order::base(alpha).unwrap());
            for f in catalog_functions(alpha) {
                for t in [0.5, 1.0, 2.0, 5.0] {
                    let closed = deriv_closed(&f, t, &cfg).unwrap();
                    let limit = deriv_limit(&f, t, &cfg).unwrap();
                    assert!(
                        (limit - closed).abs() <= 1e-6 * (1.0 + closed.abs()),
                        "{} at t = {t}, alpha = {alpha}, {params:?}: {limit} vs {closed}",
                        f.label()
                    );
                }
            }
        }
    }
}

#[test]
fn limit_is_independent_of_truncation_index() {
    let f = FnSpec::parse("sin(t) + t^2").unwrap();
    for params in param_sets() {
        let base = OperatorConfig::new(params, Order::base(0.5).unwrap());
        let reference = deriv_closed(&f, 1.7, &base).unwrap();
        for i in [1, 2, 5] {
            let v = deriv_limit(&f, 1.7, &base.with_trunc(i)).unwrap();
            assert!((v - reference).abs() <= 1e-6 * (1.0 + reference.abs()), "i = {i}: {v}");
        }
    }
}

#[test]
fn all_ones_reduces_to_conformable() {
    let cfg = OperatorConfig::new(MLParams::ones(), Order::base(0.3).unwrap());
    assert_eq!(coefficient(&cfg.params).unwrap(), 1.0);
    let f = FnSpec::parse("exp(t)").unwrap();
    for t in [0.25, 1.0, 3.0] {
        let d = deriv_closed(&f, t, &cfg).unwrap();
        assert_eq!(d, t.powf(0.7) * t.exp());
    }
}

#[test]
fn power_rule_uses_exponent_minus_order() {
    // D t^a = C a t^(a − α)
    let params = param_sets()[1];
    let cfg = OperatorConfig::new(params, Order::base(0.4).unwrap());
    let c = coefficient(&params).unwrap();
    let f = FnSpec::parse("t^3").unwrap();
    let t: f64 = 1.9;
    let d = deriv_closed(&f, t, &cfg).unwrap();
    assert!((d - c * 3.0 * t.powf(2.6)).abs() < 1e-12 * d.abs());
}

#[test]
fn zero_truncation_index_is_rejected() {
    let cfg = OperatorConfig::default().with_trunc(0);
    assert!(deriv_limit(&FnSpec::parse("t").unwrap(), 1.0, &cfg).is_err());
}

#[test]
fn nonpositive_time_is_rejected() {
    let cfg = OperatorConfig::default();
    let f = FnSpec::parse("t^2").unwrap();
    assert!(deriv_closed(&f, 0.0, &cfg).is_err());
    assert!(deriv_closed(&f, -1.0, &cfg).is_err());
}

#[test]
fn mittag_leffler_derivative_matches_catalog() {
    // the n = 0 formula against the hand-coded catalog derivative
    let cfg = OperatorConfig::new(param_sets()[2], Order::base(0.6).unwrap());
    let f = FnSpec::catalog(Catalog::Mlf { mu: 0.6, kappa: 1.0 }).unwrap();
    for t in [0.5, 1.5] {
        let a = ml_deriv(0.6, 1.0, t, &cfg, 0).unwrap();
        let b = deriv_closed(&f, t, &cfg).unwrap();
        assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()), "t = {t}: {a} vs {b}");
    }
}

proptest! {
    #[test]
    fn linearity(a in -3.0f64..3.0, b in -3.0f64..3.0, t in 0.2f64..4.0, alpha in 0.05f64..1.0) {
        let params = param_sets()[1];
        let cfg = OperatorConfig::new(params, Order::base(alpha).unwrap());
        let f = FnSpec::parse("sin(t)").unwrap();
        let g = FnSpec::parse("t^2 + exp(t)").unwrap();
        let comb = FnSpec::parse(&format!("({a}) * sin(t) + ({b}) * (t^2 + exp(t))")).unwrap();
        let lhs = deriv_closed(&comb, t, &cfg).unwrap();
        let rhs = a * deriv_closed(&f, t, &cfg).unwrap() + b * deriv_closed(&g, t, &cfg).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
    }

    #[test]
    fn product_rule(t in 0.2f64..4.0, alpha in 0.05f64..1.0) {
        let cfg = OperatorConfig::new(param_sets()[2], Order::base(alpha).unwrap());
        let f = FnSpec::parse("cos(t)").unwrap();
        let g = FnSpec::parse("t^3 - t").unwrap();
        let fg = FnSpec::parse("cos(t) * (t^3 - t)").unwrap();
        let lhs = deriv_closed(&fg, t, &cfg).unwrap();
        let rhs = f.eval(t).unwrap() * deriv_closed(&g, t, &cfg).unwrap()
            + g.eval(t).unwrap() * deriv_closed(&f, t, &cfg).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
    }

    #[test]
    fn closed_limit_agreement_random(t in 0.3f64..5.0, alpha in 0.05f64..1.0, k in 0usize..3) {
        let params = param_sets()[k];
        let cfg = OperatorConfig::new(params, Order::base(alpha).unwrap());
        let f = FnSpec::parse("exp(t) * sin(t)").unwrap();
        let closed = deriv_closed(&f, t, &cfg).unwrap();
        let limit = deriv_limit(&f, t, &cfg).unwrap();
        prop_assert!((limit - closed).abs() <= 1e-6 * (1.0 + closed.abs()), "{} vs {}", limit, closed);
    }
}
