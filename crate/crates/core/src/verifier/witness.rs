use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FnSpec;
use crate::numerics::{find_root_bracketed, sign_change_brackets, weighted_quad, SCAN_CELLS};
use crate::special_functions::MLParams;
use crate::v_integral::IntervalSpec;
use crate::v_operator::{coefficient, deriv_closed, OperatorConfig, Order};

pub(crate) const ROOT_TOL: f64 = 1e-14;
pub(crate) const QUAD_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanValueMode {
    Rolle,
    Mvt,
    ExtendedMvt,
    IntegralMvt,
    AverageValue,
}

/// Locates the point whose existence a mean-value-type statement asserts.
///
/// - `Rolle`: Df(c) = 0, requires f(a) = f(b).
/// - `Mvt`: Df(c) = C·(f(b) − f(a)) / ((b^α − a^α)/α).
/// - `ExtendedMvt`: Df(c)·(g(b) − g(a)) = Dg(c)·(f(b) − f(a)), requires
///   Dg ≠ 0 on (a, b).
/// - `IntegralMvt`: f(x₀) = ∫f g dω / ∫g dω with dω = (1/C) x^(α−1) dx,
///   requires g of one sign.
/// - `AverageValue`: f(x₀) = α/(b^α − a^α) · ∫ f(x) x^(α−1) dx.
///
/// The derivative-based modes need a > 0. The search scans
/// [`SCAN_CELLS`] cells for a sign change and bisects the first one; a
/// constant residual function yields the midpoint.
pub fn find_mean_value_point(
    mode: MeanValueMode,
    f: &FnSpec,
    g: Option<&FnSpec>,
    iv: IntervalSpec,
    alpha: Order,
    params: &MLParams,
) -> Result<f64> {
    iv.validate()?;
    let (a, b) = (iv.a, iv.t);
    if !(a < b) {
        return Err(Error::Precondition(format!("need a < b, got [{a}, {b}]")));
    }
    let cfg = OperatorConfig::new(*params, alpha);
    let d = |h: &FnSpec, x: f64| deriv_closed(h, x, &cfg);
    let need_g = || g.ok_or_else(|| Error::Precondition(format!("{mode:?} needs a second function g")));
    let derivative_based = matches!(
        mode,
        MeanValueMode::Rolle | MeanValueMode::Mvt | MeanValueMode::ExtendedMvt
    );
    if derivative_based && !(a > 0.0) {
        return Err(Error::Precondition(format!("{mode:?} needs a > 0, got a = {a}")));
    }

    match mode {
        MeanValueMode::Rolle => {
            let (fa, fb) = (f.eval(a)?, f.eval(b)?);
            if (fa - fb).abs() > 1e-12 * fa.abs().max(fb.abs()).max(1.0) {
                return Err(Error::Precondition(format!("f(a) = {fa} differs from f(b) = {fb}")));
            }
            solve_interior(|c| d(f, c), a, b)
        }
        MeanValueMode::Mvt => {
            let target = mvt_target(f, iv, alpha.alpha, params)?;
            solve_interior(|c| Ok(d(f, c)? - target), a, b)
        }
        MeanValueMode::ExtendedMvt => {
            let g = need_g()?;
            check_one_sign(|x| d(g, x), a, b, "Dg")?;
            let df = f.eval(b)? - f.eval(a)?;
            let dg = g.eval(b)? - g.eval(a)?;
            solve_interior(|c| Ok(d(f, c)? * dg - d(g, c)? * df), a, b)
        }
        MeanValueMode::IntegralMvt => {
            let g = need_g()?;
            let xi = weighted_ratio(f, g, iv, alpha.alpha, params)?;
            level_point(f, xi, a, b)
        }
        MeanValueMode::AverageValue => {
            let xi = average_value(f, iv, alpha.alpha)?;
            level_point(f, xi, a, b)
        }
    }
}

/// C·(f(b) − f(a)) / ((b^α − a^α)/α).
pub(crate) fn mvt_target(f: &FnSpec, iv: IntervalSpec, alpha: f64, params: &MLParams) -> Result<f64> {
    let span = (iv.t.powf(alpha) - iv.a.powf(alpha)) / alpha;
    Ok(coefficient(params)? * (f.eval(iv.t)? - f.eval(iv.a)?) / span)
}

/// ∫f g dω / ∫g dω, after checking that g keeps one sign.
pub(crate) fn weighted_ratio(f: &FnSpec, g: &FnSpec, iv: IntervalSpec, alpha: f64, params: &MLParams) -> Result<f64> {
    let interior_a = if iv.a == 0.0 { iv.t * 1e-9 } else { iv.a };
    check_one_sign(|x| g.eval(x), interior_a, iv.t, "g")?;
    let c = coefficient(params)?;
    let num = weighted_quad(|x| Ok(f.eval(x)? * g.eval(x)?), iv.a, iv.t, alpha, QUAD_TOL)?.value / c;
    let den = weighted_quad(|x| g.eval(x), iv.a, iv.t, alpha, QUAD_TOL)?.value / c;
    if den == 0.0 {
        return Err(Error::Precondition("g integrates to zero".into()));
    }
    Ok(num / den)
}

/// α/(b^α − a^α) · ∫ f(x) x^(α−1) dx.
pub(crate) fn average_value(f: &FnSpec, iv: IntervalSpec, alpha: f64) -> Result<f64> {
    let span = (iv.t.powf(alpha) - iv.a.powf(alpha)) / alpha;
    Ok(weighted_quad(|x| f.eval(x), iv.a, iv.t, alpha, QUAD_TOL)?.value / span)
}

/// A point x₀ ∈ [a, b] with f(x₀) = level, or the midpoint when f is
/// constant (the strict bounds m < ξ < M cannot hold then).
fn level_point(f: &FnSpec, level: f64, a: f64, b: f64) -> Result<f64> {
    let h = (b - a) / SCAN_CELLS as f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..=SCAN_CELLS {
        let x = if j == SCAN_CELLS { b } else { a + h * j as f64 };
        if let Ok(v) = f.eval(x) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if hi - lo <= 1e-15 * hi.abs().max(lo.abs()).max(1.0) {
        return Ok(0.5 * (a + b));
    }
    solve_interior(|x| Ok(f.eval(x)? - level), a, b)
}

fn check_one_sign<H>(mut h: H, a: f64, b: f64, what: &str) -> Result<()>
where
    H: FnMut(f64) -> Result<f64>,
{
    let step = (b - a) / SCAN_CELLS as f64;
    let mut sign = 0.0;
    for j in 0..=SCAN_CELLS {
        let x = if j == SCAN_CELLS { b } else { a + step * j as f64 };
        let v = h(x)?;
        if v == 0.0 && j > 0 && j < SCAN_CELLS {
            return Err(Error::Precondition(format!("{what} vanishes at {x}")));
        }
        if v != 0.0 {
            if sign != 0.0 && v.signum() != sign {
                return Err(Error::Precondition(format!("{what} changes sign on [{a}, {b}]")));
            }
            sign = v.signum();
        }
    }
    Ok(())
}

/// Root of h strictly inside (a, b): the first sign change on the scan grid,
/// refined by bisection. If h vanishes on the whole grid, the midpoint.
fn solve_interior<H>(mut h: H, a: f64, b: f64) -> Result<f64>
where
    H: FnMut(f64) -> Result<f64>,
{
    let brackets = sign_change_brackets(&mut h, a, b, SCAN_CELLS)?;
    let exact: Vec<f64> = brackets.iter().filter(|(l, r)| l == r).map(|(l, _)| *l).collect();
    if exact.len() == SCAN_CELLS + 1 {
        return Ok(0.5 * (a + b));
    }
    for &(lo, hi) in &brackets {
        if lo == hi {
            if lo > a && lo < b {
                return Ok(lo);
            }
            continue;
        }
        return find_root_bracketed(&mut h, lo, hi, ROOT_TOL);
    }
    Err(Error::NoWitness(format!(
        "no sign change of the defining equation on [{a}, {b}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> IntervalSpec {
        IntervalSpec::new(a, b).unwrap()
    }

    #[test]
    fn rolle_quadratic() {
        let f = FnSpec::parse("(x-1)*(x-3)").unwrap();
        for alpha in [0.2, 0.5, 1.0] {
            let c = find_mean_value_point(
                MeanValueMode::Rolle,
                &f,
                None,
                iv(1.0, 3.0),
                Order::base(alpha).unwrap(),
                &MLParams::ones(),
            )
            .unwrap();
            assert_eq!(c, 2.0);
        }
        let g = FnSpec::parse("x^2").unwrap();
        let err = find_mean_value_point(
            MeanValueMode::Rolle,
            &g,
            None,
            iv(1.0, 3.0),
            Order::base(0.5).unwrap(),
            &MLParams::ones(),
        );
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn mvt_witnesses() {
        let f = FnSpec::parse("x^2").unwrap();
        let p = MLParams::ones();
        let c = find_mean_value_point(
            MeanValueMode::Mvt,
            &f,
            None,
            iv(1.0, 4.0),
            Order::base(0.5).unwrap(),
            &p,
        )
        .unwrap();
        assert!((c - 3.75f64.powf(2.0 / 3.0)).abs() < 1e-10);
        let c = find_mean_value_point(
            MeanValueMode::Mvt,
            &f,
            None,
            iv(1.0, 2.0),
            Order::base(1.0).unwrap(),
            &p,
        )
        .unwrap();
        assert!((c - 1.5).abs() < 1e-12);
        let err = find_mean_value_point(
            MeanValueMode::Mvt,
            &f,
            None,
            iv(0.0, 2.0),
            Order::base(0.5).unwrap(),
            &p,
        );
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn integral_mean_value() {
        let f = FnSpec::parse("x").unwrap();
        let one = FnSpec::parse("1").unwrap();
        let p = MLParams::ones();
        let a = Order::base(0.5).unwrap();
        let x0 = find_mean_value_point(MeanValueMode::IntegralMvt, &f, Some(&one), iv(0.0, 1.0), a, &p).unwrap();
        assert!((x0 - 1.0 / 3.0).abs() < 1e-12);
        let x0 = find_mean_value_point(MeanValueMode::AverageValue, &f, None, iv(0.0, 1.0), a, &p).unwrap();
        assert!((x0 - 1.0 / 3.0).abs() < 1e-12);
        let k = FnSpec::parse("3").unwrap();
        let x0 = find_mean_value_point(MeanValueMode::AverageValue, &k, None, iv(1.0, 2.0), a, &p).unwrap();
        assert_eq!(x0, 1.5);
        let s = FnSpec::parse("sin(6*x)").unwrap();
        let err = find_mean_value_point(MeanValueMode::IntegralMvt, &f, Some(&s), iv(0.5, 2.0), a, &p);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
