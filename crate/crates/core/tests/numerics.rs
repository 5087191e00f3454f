use proptest::prelude::*;
use vfrac_core::numerics::{
    adaptive_quad, central_derivative, extrapolated_limit, find_root_bracketed, find_root_scan, weighted_quad,
    EpsilonSchedule,
};
use vfrac_core::Error;

#[test]
fn quadrature_of_known_integrals() {
    let r = adaptive_quad(|x| Ok(x.sin()), 0.0, std::f64::consts::PI, 1e-12).unwrap();
    assert!((r.value - 2.0).abs() < 1e-11);
    // ∫₀¹ x^(-1/2) dx = 2 with a singular left endpoint
    let r = adaptive_quad(|x| Ok(x.powf(-0.5)), 0.0, 1.0, 1e-10).unwrap();
    assert!((r.value - 2.0).abs() < 1e-8, "{}", r.value);
}

#[test]
fn weighted_quadrature_removes_the_weight_singularity() {
    // ∫₀¹ x^(α−1) dx = 1/α
    for alpha in [0.1, 0.3, 0.5, 0.9] {
        let r = weighted_quad(|_| Ok(1.0), 0.0, 1.0, alpha, 1e-12).unwrap();
        assert!(
            (r.value - 1.0 / alpha).abs() < 1e-10 / alpha,
            "alpha = {alpha}: {}",
            r.value
        );
    }
}

#[test]
fn quadrature_rejects_bad_input() {
    assert!(adaptive_quad(Ok, 1.0, 0.0, 1e-8).is_err());
    assert!(adaptive_quad(Ok, 0.0, 1.0, 0.0).is_err());
    assert_eq!(adaptive_quad(Ok, 2.0, 2.0, 1e-8).unwrap().value, 0.0);
}

#[test]
fn roots() {
    let r = find_root_bracketed(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
    assert!((r - 2f64.sqrt()).abs() < 1e-13);
    assert!(matches!(
        find_root_bracketed(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-14),
        Err(Error::NoBracket { .. })
    ));
    // no sign change at the ends, but one inside the scan grid
    let r = find_root_scan(|x| Ok((x - 0.3) * (x - 0.7)), 0.0, 0.5, 1e-14).unwrap();
    assert!((r - 0.3).abs() < 1e-12);
}

proptest! {
    #[test]
    fn quadrature_is_additive(a in -3.0f64..0.0, w1 in 0.1f64..3.0, w2 in 0.1f64..3.0, k in 0.5f64..3.0) {
        let f = |x: f64| Ok((k * x).sin() * (-0.1 * x * x).exp() + x);
        let (c, b) = (a + w1, a + w1 + w2);
        let tol = 1e-10;
        let left = adaptive_quad(f, a, c, tol).unwrap();
        let right = adaptive_quad(f, c, b, tol).unwrap();
        let whole = adaptive_quad(f, a, b, tol).unwrap();
        let slack = left.err_estimate + right.err_estimate + whole.err_estimate + 1e-14;
        prop_assert!((left.value + right.value - whole.value).abs() <= slack,
            "{} + {} vs {}", left.value, right.value, whole.value);
    }

    #[test]
    fn extrapolation_is_exact_for_polynomials(
        coeffs in prop::collection::vec(-5.0f64..5.0, 1..6),
        eps0 in 0.01f64..0.5,
        ratio in 0.3f64..0.7,
    ) {
        let levels = coeffs.len() + 1;
        let sched = EpsilonSchedule::new(eps0, ratio, levels).unwrap();
        let poly = |e: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * e + c);
        let samples: Vec<_> = sched.steps().into_iter().map(|e| (e, poly(e))).collect();
        let r = extrapolated_limit(&samples).unwrap();
        prop_assert!((r.value - coeffs[0]).abs() < 1e-8 * (1.0 + coeffs[0].abs()),
            "{} vs {}", r.value, coeffs[0]);
    }

    #[test]
    fn central_difference_of_exponential(x in -2.0f64..2.0) {
        let r = central_derivative(|u| Ok(u.exp()), x, 0.1, 6).unwrap();
        prop_assert!((r.value - x.exp()).abs() < 1e-10 * x.exp());
    }
}
