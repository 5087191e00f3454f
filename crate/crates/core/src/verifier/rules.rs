use crate::error::{Error, Result};
use crate::expr::{BinOp, Expr};
use crate::function::{Catalog, FnSpec};
use crate::numerics::extrapolated_limit;
use crate::special_functions::{gamma, h_eval, h_terms, ml_one, MLParams, TruncationSpec};
use crate::v_integral::{
    integrate, integrate_composed, integrate_general, ml_integrate, rl_derivative_bridge_factor,
    rl_integral_bridge_factor, rl_power, IntervalSpec, RlMode,
};
use crate::v_operator::{
    coefficient, compose_orders, deriv_closed, deriv_limit, increments, log_coefficient, ml_deriv, DerivativeSource,
    OperatorConfig, Order,
};

use super::case::Case;
use super::witness::{average_value, find_mean_value_point, mvt_target, weighted_ratio, MeanValueMode};
use super::RuleId;

/// Quadrature tolerance for identities checked at 1e-7.
const QUAD_TOL: f64 = 1e-11;
/// Quadrature tolerance for integrals that are differentiated numerically.
const FD_QUAD_TOL: f64 = 1e-13;
/// Quadrature tolerance for the inequality rules.
const BOUND_QUAD_TOL: f64 = 1e-10;
/// Nested-quadrature tolerance for the composition law.
const NESTED_TOL: f64 = 1e-9;
/// Grid resolution for sup |f|.
const SUP_GRID: usize = 1024;

pub(super) struct Outcome {
    pub residual: f64,
    pub witness: Option<f64>,
}

fn plain(residual: f64) -> Result<Outcome> {
    Ok(Outcome {
        residual,
        witness: None,
    })
}

fn rel(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(1.0)
}

fn config(case: &Case) -> Result<OperatorConfig> {
    let mut cfg = OperatorConfig::new(case.params, Order::from_alpha(case.alpha)?);
    if let Some(i) = case.trunc_i {
        cfg.trunc_i = i;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn base_order(alpha: f64) -> Result<Order> {
    Order::base(alpha)
}

fn expr_of(f: &FnSpec) -> Result<Expr> {
    f.to_expr()
        .ok_or_else(|| Error::Precondition(format!("{} has no symbolic form", f.label())))
}

fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
    Expr::Binary(op, Box::new(l), Box::new(r))
}

fn interval(case: &Case) -> Result<IntervalSpec> {
    let (a, b) = case.need_interval()?;
    IntervalSpec::new(a, b)
}

/// Interval [a, t] for point-valued integral rules: explicit a (default 0)
/// and the evaluation point t.
fn lower_to_t(case: &Case) -> Result<IntervalSpec> {
    IntervalSpec::new(case.a.unwrap_or(0.0), case.need_t()?)
}

pub(super) fn check(rule: RuleId, case: &Case) -> Result<Outcome> {
    match rule {
        RuleId::LinearityD => linearity_d(case),
        RuleId::Product => binary_rule(case, BinOp::Mul),
        RuleId::Quotient => binary_rule(case, BinOp::Div),
        RuleId::ConstantZero => constant_zero(case),
        RuleId::ChainComposition => chain(case),
        RuleId::ClosedForm => closed_form(case),
        RuleId::ElementaryCatalog => elementary(case),
        RuleId::OrderComposition => order_composition(case),
        RuleId::Continuity => continuity(case),
        RuleId::Rolle => witness_rule(case, MeanValueMode::Rolle),
        RuleId::Mvt => witness_rule(case, MeanValueMode::Mvt),
        RuleId::ExtendedMvt => witness_rule(case, MeanValueMode::ExtendedMvt),
        RuleId::IntegralMvt => witness_rule(case, MeanValueMode::IntegralMvt),
        RuleId::AverageValue => witness_rule(case, MeanValueMode::AverageValue),
        RuleId::LinearityI => linearity_i(case),
        RuleId::Inverse => inverse(case),
        RuleId::Ftc => ftc(case),
        RuleId::Parts => parts(case),
        RuleId::AbsBound => abs_bound(case),
        RuleId::SupBound => sup_bound(case),
        RuleId::IntegralComposition => integral_composition(case),
        RuleId::RlIntegralBridge => rl_integral_bridge(case),
        RuleId::RlDerivativeBridge => rl_derivative_bridge(case),
        RuleId::ReductionMFractional => reduction_m_fractional(case),
        RuleId::ReductionConformable => reduction_conformable(case),
        RuleId::MlDerivIdentity => ml_deriv_identity(case),
        RuleId::MlIntegralIdentity => ml_integral_identity(case),
    }
}

fn linearity_d(case: &Case) -> Result<Outcome> {
    let cfg = config(case)?;
    let (f, g, t) = (case.need_f()?, case.need_g()?, case.need_t()?);
    let (wf, wg) = case.weights.unwrap_or((2.0, -3.0));
    let h = bin(
        BinOp::Add,
        bin(BinOp::Mul, Expr::Const(wf), expr_of(f)?),
        bin(BinOp::Mul, Expr::Const(wg), expr_of(g)?),
    );
    let lhs = deriv_closed(&FnSpec::from_expr(h), t, &cfg)?;
    let rhs = wf * deriv_closed(f, t, &cfg)? + wg * deriv_closed(g, t, &cfg)?;
    plain(rel(lhs, rhs))
}

/// Product rule (`Mul`) or quotient rule (`Div`).
fn binary_rule(case: &Case, op: BinOp) -> Result<Outcome> {
    let cfg = config(case)?;
    let (f, g, t) = (case.need_f()?, case.need_g()?, case.need_t()?);
    let h = FnSpec::from_expr(bin(op, expr_of(f)?, expr_of(g)?));
    let (fv, gv) = (f.eval(t)?, g.eval(t)?);
    let (df, dg) = (deriv_closed(f, t, &cfg)?, deriv_closed(g, t, &cfg)?);
    let lhs = deriv_closed(&h, t, &cfg)?;
    let rhs = match op {
        BinOp::Mul => fv * dg + gv * df,
        _ => {
            if gv.abs() < 1e-8 {
                return Err(Error::Precondition(format!("g({t}) = {gv} is too close to 0")));
            }
            (gv * df - fv * dg) / (gv * gv)
        }
    };
    plain(rel(lhs, rhs))
}

fn constant_zero(case: &Case) -> Result<Outcome> {
    let cfg = config(case)?;
    let (f, t) = (case.need_f()?, case.need_t()?);
    if !expr_of(f)?.is_constant() {
        return Err(Error::Precondition(format!("{} is not constant", f.label())));
    }
    plain(deriv_closed(f, t, &cfg)?.abs() + deriv_limit(f, t, &cfg)?.abs())
}

fn chain(case: &Case) -> Result<Outcome> {
    let cfg = config(case)?;
    let (f, g, t) = (case.need_f()?, case.need_g()?, case.need_t()?);
    let composed = FnSpec::from_expr(expr_of(f)?.substitute(&expr_of(g)?));
    let lhs = deriv_closed(&composed, t, &cfg)?;
    let rhs = f.derivative(g.eval(t)?)? * deriv_closed(g, t, &cfg)?;
    plain(rel(lhs, rhs))
}

fn closed_form(case: &Case) -> Result<Outcome> {
    let cfg = config(case)?;
    let (f, t) = (case.need_f()?, case.need_t()?);
    let closed = deriv_closed(f, t, &cfg)?;
    let limit = deriv_limit(f, t, &cfg)?;
    plain((limit - closed).abs() / (1.0 + closed.abs()))
}

/// Closed forms of the derivative for the elementary families.
fn elementary_formula(c: Catalog, t: f64, alpha: f64, coef: f64) -> Result<f64> {
    let w = coef * t.powf(1.0 - alpha);
    let same_order = |beta: f64| -> Result<f64> {
        if beta != alpha {
            return Err(Error::Precondition(format!(
                "catalog order {beta} differs from alpha = {alpha}"
            )));
        }
        Ok(t.powf(alpha) / alpha)
    };
    Ok(match c {
        Catalog::Const { .. } => 0.0,
        Catalog::ExpAt { a } => w * a * (a * t).exp(),
        Catalog::SinAt { a } => w * a * (a * t).cos(),
        Catalog::CosAt { a } => -w * a * (a * t).sin(),
        Catalog::Power { a } => coef * a * t.powf(a - alpha),
        Catalog::TAlphaOverAlpha { alpha: b } => {
            same_order(b)?;
            coef
        }
        Catalog::SinTAlphaOverAlpha { alpha: b } => coef * same_order(b)?.cos(),
        Catalog::CosTAlphaOverAlpha { alpha: b } => -coef * same_order(b)?.sin(),
        Catalog::ExpTAlphaOverAlpha { alpha: b } => coef * same_order(b)?.exp(),
        Catalog::Mlf { .. } => return Err(Error::Precondition("the Mittag-Leffler entry is not elementary".into())),
    })
}

fn elementary(case: &Case) -> Result<Outcome> {
    let cfg = config(case)?;
    let (f, t) = (case.need_f()?, case.need_t()?);
    let c = f
        .as_catalog()
        .ok_or_else(|| Error::Precondition(format!("{} is not a catalog entry", f.label())))?;
    let formula = elementary_formula(c, t, case.alpha, coefficient(&case.params)?)?;
    let hand = deriv_closed(f, t, &cfg)?;
    let symbolic = deriv_closed(&FnSpec::from_expr(expr_of(f)?), t, &cfg)?;
    plain(rel(hand, formula).max(rel(symbolic, formula)))
}

fn order_composition(case: &Case) -> Result<Outcome> {
    let (f, t) = (case.need_f()?, case.need_t()?);
    let comp = compose_orders(
        f,
        t,
        base_order(case.alpha)?,
        base_order(case.need_mu()?)?,
        &case.params,
    )?;
    plain(rel(comp.lhs, comp.rhs))
}

fn continuity(case: &Case) -> Result<Outcome> {
    let cfg = config(case)?;
    let (f, t) = (case.need_f()?, case.need_t()?);
    let samples = increments(f, t, &cfg)?;
    let limit = extrapolated_limit(&samples)?.value;
    // |Δ(ε)| ≤ K ε: the ratios |Δ|/ε must not grow along the schedule.
    let k: Vec<f64> = samples.iter().map(|(e, d)| d.abs() / e).collect();
    let growth = (k[k.len() - 1] - 2.0 * k[0]).max(0.0);
    plain(limit.abs() / f.eval(t)?.abs().max(1.0) + growth)
}

fn witness_rule(case: &Case, mode: MeanValueMode) -> Result<Outcome> {
    let f = case.need_f()?;
    let iv = interval(case)?;
    let alpha = base_order(case.alpha)?;
    let p = &case.params;
    let cfg = OperatorConfig::new(*p, alpha);
    let c = find_mean_value_point(mode, f, case.g.as_ref(), iv, alpha, p)?;
    let residual = match mode {
        MeanValueMode::Rolle => deriv_closed(f, c, &cfg)?.abs(),
        MeanValueMode::Mvt => rel(deriv_closed(f, c, &cfg)?, mvt_target(f, iv, alpha.alpha, p)?),
        MeanValueMode::ExtendedMvt => {
            let g = case.need_g()?;
            let ratio = (f.eval(iv.t)? - f.eval(iv.a)?) / (g.eval(iv.t)? - g.eval(iv.a)?);
            rel(deriv_closed(f, c, &cfg)? / deriv_closed(g, c, &cfg)?, ratio)
        }
        MeanValueMode::IntegralMvt => {
            let xi = weighted_ratio(f, case.need_g()?, iv, alpha.alpha, p)?;
            rel(f.eval(c)?, xi) + range_violation(f, iv, xi)?
        }
        MeanValueMode::AverageValue => {
            let xi = average_value(f, iv, alpha.alpha)?;
            rel(f.eval(c)?, xi) + range_violation(f, iv, xi)?
        }
    };
    Ok(Outcome {
        residual,
        witness: Some(c),
    })
}

/// Amount by which ξ leaves [inf f, sup f] (non-strict bounds).
fn range_violation(f: &FnSpec, iv: IntervalSpec, xi: f64) -> Result<f64> {
    let (lo, hi) = grid_range(f, iv)?;
    let slack = 1e-12 * xi.abs().max(1.0);
    Ok((lo - xi - slack).max(0.0) + (xi - hi - slack).max(0.0))
}

fn grid_range(f: &FnSpec, iv: IntervalSpec) -> Result<(f64, f64)> {
    let h = (iv.t - iv.a) / SUP_GRID as f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..=SUP_GRID {
        let x = if j == SUP_GRID { iv.t } else { iv.a + h * j as f64 };
        match f.eval(x) {
            Ok(v) => {
                lo = lo.min(v);
                hi = hi.max(v);
            }
            // an endpoint outside the natural domain is skipped
            Err(_) if j == 0 || j == SUP_GRID => {}
            Err(e) => return Err(e),
        }
    }
    Ok((lo, hi))
}

fn linearity_i(case: &Case) -> Result<Outcome> {
    let (f, g) = (case.need_f()?.clone(), case.need_g()?.clone());
    let iv = lower_to_t(case)?;
    let alpha = base_order(case.alpha)?;
    let (wf, wg) = case.weights.unwrap_or((2.0, -3.0));
    let p = &case.params;
    let combo = FnSpec::opaque("combination", {
        let (f, g) = (f.clone(), g.clone());
        move |x| Ok(wf * f.eval(x)? + wg * g.eval(x)?)
    });
    let lhs = integrate(&combo, iv, alpha, p, QUAD_TOL)?.value;
    let rhs = wf * integrate(&f, iv, alpha, p, QUAD_TOL)?.value + wg * integrate(&g, iv, alpha, p, QUAD_TOL)?.value;
    plain(rel(lhs, rhs))
}

fn inverse(case: &Case) -> Result<Outcome> {
    let f = case.need_f()?.clone();
    let t = case.need_t()?;
    let a = case.a.unwrap_or(0.0);
    let alpha = base_order(case.alpha)?;
    let p = case.params;
    let big_f = FnSpec::opaque(format!("I[{}]", f.label()), {
        let f = f.clone();
        move |x| Ok(integrate(&f, IntervalSpec::new(a, x)?, alpha, &p, FD_QUAD_TOL)?.value)
    });
    let cfg = OperatorConfig::new(p, alpha).with_derivative_source(DerivativeSource::FiniteDifference);
    plain(rel(deriv_closed(&big_f, t, &cfg)?, f.eval(t)?))
}

fn ftc(case: &Case) -> Result<Outcome> {
    let f = case.need_f()?.clone();
    let iv = lower_to_t(case)?;
    let alpha = base_order(case.alpha)?;
    let cfg = OperatorConfig::new(case.params, alpha);
    let df = FnSpec::opaque(format!("D[{}]", f.label()), {
        let f = f.clone();
        move |x| deriv_closed(&f, x, &cfg)
    });
    let lhs = integrate(&df, iv, alpha, &case.params, QUAD_TOL)?.value;
    plain(rel(lhs, f.eval(iv.t)? - f.eval(iv.a)?))
}

fn parts(case: &Case) -> Result<Outcome> {
    let (f, g) = (case.need_f()?.clone(), case.need_g()?.clone());
    let iv = interval(case)?;
    let alpha = base_order(case.alpha)?;
    let cfg = OperatorConfig::new(case.params, alpha);
    let times_d = |u: &FnSpec, v: &FnSpec| {
        let (u, v) = (u.clone(), v.clone());
        FnSpec::opaque("u Dv", move |x| Ok(u.eval(x)? * deriv_closed(&v, x, &cfg)?))
    };
    let lhs = integrate_general(&times_d(&f, &g), iv, alpha.alpha, &case.params, QUAD_TOL)?.value;
    let boundary = f.eval(iv.t)? * g.eval(iv.t)? - f.eval(iv.a)? * g.eval(iv.a)?;
    let rhs = boundary - integrate_general(&times_d(&g, &f), iv, alpha.alpha, &case.params, QUAD_TOL)?.value;
    plain(rel(lhs, rhs))
}

fn abs_bound(case: &Case) -> Result<Outcome> {
    let f = case.need_f()?.clone();
    let iv = lower_to_t(case)?;
    let alpha = base_order(case.alpha)?;
    let abs_f = FnSpec::opaque(format!("|{}|", f.label()), {
        let f = f.clone();
        move |x| Ok(f.eval(x)?.abs())
    });
    let lhs = integrate(&f, iv, alpha, &case.params, BOUND_QUAD_TOL)?.value.abs();
    let rhs = integrate(&abs_f, iv, alpha, &case.params, BOUND_QUAD_TOL)?.value;
    plain((lhs - rhs).max(0.0))
}

fn sup_bound(case: &Case) -> Result<Outcome> {
    let f = case.need_f()?;
    let iv = lower_to_t(case)?;
    let alpha = base_order(case.alpha)?;
    let (lo, hi) = grid_range(f, iv)?;
    let n = lo.abs().max(hi.abs());
    let al = alpha.alpha;
    let bound = n * (iv.t.powf(al) - iv.a.powf(al)) / al / coefficient(&case.params)?;
    let lhs = integrate(f, iv, alpha, &case.params, BOUND_QUAD_TOL)?.value.abs();
    plain((lhs - bound).max(0.0))
}

fn integral_composition(case: &Case) -> Result<Outcome> {
    let f = case.need_f()?;
    let iv = lower_to_t(case)?;
    let comp = integrate_composed(
        f,
        iv,
        base_order(case.alpha)?,
        base_order(case.need_mu()?)?,
        &case.params,
        NESTED_TOL,
    )?;
    plain(rel(comp.lhs, comp.rhs))
}

fn kernel_power(t: f64, mu: f64) -> FnSpec {
    FnSpec::opaque(format!("({t}-x)^{mu}"), move |x: f64| Ok((t - x).max(0.0).powf(mu)))
}

fn rl_integral_bridge(case: &Case) -> Result<Outcome> {
    let (t, mu) = (case.need_t()?, case.need_mu()?);
    let alpha = base_order(case.alpha)?;
    let lhs = integrate(
        &kernel_power(t, mu),
        IntervalSpec::new(0.0, t)?,
        alpha,
        &case.params,
        QUAD_TOL,
    )?
    .value;
    let rhs = rl_integral_bridge_factor(case.alpha, &case.params)? * rl_power(RlMode::Integral, mu, case.alpha, t)?;
    plain(rel(lhs, rhs))
}

fn rl_derivative_bridge(case: &Case) -> Result<Outcome> {
    let (t, mu) = (case.need_t()?, case.need_mu()?);
    let alpha = base_order(case.alpha)?;
    let p = case.params;
    let big_f = FnSpec::opaque(format!("I[(s-x)^{mu}](s)"), move |s: f64| {
        Ok(integrate(&kernel_power(s, mu), IntervalSpec::new(0.0, s)?, alpha, &p, FD_QUAD_TOL)?.value)
    });
    let cfg = OperatorConfig::new(p, alpha).with_derivative_source(DerivativeSource::FiniteDifference);
    let lhs = deriv_closed(&big_f, t, &cfg)?;
    let rhs = rl_derivative_bridge_factor(mu, case.alpha, t)? * rl_power(RlMode::Derivative, mu, case.alpha, t)?;
    plain(rel(lhs, rhs))
}

fn reduction_m_fractional(case: &Case) -> Result<Outcome> {
    let p = case.params;
    if [p.beta, p.rho, p.delta, p.p, p.q] != [1.0; 5] {
        return Err(Error::Precondition("needs beta = rho = delta = p = q = 1".into()));
    }
    let z = case.need_t()?;
    let i = case.trunc_i.unwrap_or(3);
    let h = h_terms(p, z, i)?;
    let mut residual: f64 = 0.0;
    for (k, hk) in h.iter().enumerate() {
        let mk = z.powi(k as i32) / gamma(p.gamma * k as f64 + 1.0)?;
        residual = residual.max((hk - mk).abs() / mk.abs().max(1.0));
    }
    let sum_h = h_eval(p, z, i)?;
    let sum_m = ml_one(p.gamma, z, TruncationSpec::fixed(i))?;
    plain(residual.max(rel(sum_h, sum_m)))
}

fn reduction_conformable(case: &Case) -> Result<Outcome> {
    if case.params != MLParams::ones() {
        return Err(Error::Precondition("needs all parameters equal to 1".into()));
    }
    let cfg = config(case)?;
    let (f, t) = (case.need_f()?, case.need_t()?);
    let d = deriv_closed(f, t, &cfg)?;
    let conformable = t.powf(1.0 - case.alpha) * f.derivative(t)?;
    plain(log_coefficient(&case.params)?.abs() + (d - conformable).abs())
}

fn ml_deriv_identity(case: &Case) -> Result<Outcome> {
    let cfg = config(case)?;
    let (mu, kappa, t) = (case.need_mu()?, case.need_kappa()?, case.need_t()?);
    let closed = ml_deriv(mu, kappa, t, &cfg, cfg.order.n)?;
    let series = deriv_closed(&FnSpec::catalog(Catalog::Mlf { mu, kappa })?, t, &cfg)?;
    plain(rel(closed, series))
}

fn ml_integral_identity(case: &Case) -> Result<Outcome> {
    let (mu, kappa) = (case.need_mu()?, case.need_kappa()?);
    let iv = lower_to_t(case)?;
    let alpha = base_order(case.alpha)?;
    let series = ml_integrate(mu, kappa, iv, alpha, &case.params)?;
    let quad = integrate(
        &FnSpec::catalog(Catalog::Mlf { mu, kappa })?,
        iv,
        alpha,
        &case.params,
        QUAD_TOL,
    )?
    .value;
    plain(rel(series, quad))
}
