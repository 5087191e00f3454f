//! The V-fractional integral
//!
//! ```text
//! I f(t) = (1/C) ∫ₐᵗ f(x) x^(α−1) dx,   C = Γ(β)(ρ)_q / (Γ(γ+β)(δ)_p),
//! ```
//!
//! its composition law, the Mittag-Leffler integral and the
//! Riemann-Liouville power-function formulas it is compared against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FnSpec;
use crate::numerics::{weighted_quad, QuadratureResult};
use crate::special_functions::{gamma, log_gamma, sum_series, MLParams, TruncationSpec};
use crate::v_operator::{coefficient, Order};

const ML_TOL: f64 = 1e-17;

/// Integration limits 0 ≤ a ≤ t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalSpec {
    pub a: f64,
    pub t: f64,
}

impl IntervalSpec {
    pub fn new(a: f64, t: f64) -> Result<Self> {
        let iv = Self { a, t };
        iv.validate()?;
        Ok(iv)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a >= 0.0 && self.a <= self.t && self.t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "interval needs 0 <= a <= t, got a = {}, t = {}",
                self.a, self.t
            )));
        }
        Ok(())
    }
}

/// (1/C) ∫ₐᵗ f(x) x^(r−1) dx for any real order r > 0.
///
/// Orders above 1 appear on the right side of the composition law.
pub fn integrate_general(
    f: &FnSpec,
    iv: IntervalSpec,
    r: f64,
    params: &MLParams,
    tol: f64,
) -> Result<QuadratureResult> {
    iv.validate()?;
    let c = coefficient(params)?;
    let q = weighted_quad(|x| f.eval(x), iv.a, iv.t, r, tol * c)?;
    Ok(q.scaled(1.0 / c))
}

/// The integral of order α ∈ (0, 1], to absolute tolerance `tol`.
pub fn integrate(f: &FnSpec, iv: IntervalSpec, alpha: Order, params: &MLParams, tol: f64) -> Result<QuadratureResult> {
    if alpha.n != 0 {
        return Err(Error::InvalidParameter(format!(
            "integral order must lie in (0, 1], got {}",
            alpha.alpha
        )));
    }
    alpha.validate()?;
    integrate_general(f, iv, alpha.alpha, params, tol)
}

/// Both sides of I_α(I_μ f)(t) = (1/C)[(t^α/α)·I_μ f(t) − (1/α)·I_{α+μ} f(t)],
/// plus I_{α+μ} f(t), the value a semigroup law would predict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralComposition {
    pub lhs: f64,
    pub rhs: f64,
    pub summed_order: f64,
}

/// The left side is a nested quadrature (inner tolerance tol/10); the right
/// side combines two single integrals.
pub fn integrate_composed(
    f: &FnSpec,
    iv: IntervalSpec,
    alpha: Order,
    mu: Order,
    params: &MLParams,
    tol: f64,
) -> Result<IntegralComposition> {
    iv.validate()?;
    for o in [alpha, mu] {
        if o.n != 0 {
            return Err(Error::InvalidParameter(format!(
                "integral order must lie in (0, 1], got {}",
                o.alpha
            )));
        }
        o.validate()?;
    }
    let (a, m) = (alpha.alpha, mu.alpha);
    let c = coefficient(params)?;
    let inner_tol = tol / 10.0;

    let inner = FnSpec::opaque(format!("I_{m} {}", f.label()), {
        let f = f.clone();
        let params = *params;
        let lo = iv.a;
        move |x: f64| Ok(integrate_general(&f, IntervalSpec::new(lo, x)?, m, &params, inner_tol)?.value)
    });
    let lhs = integrate_general(&inner, iv, a, params, tol)?.value;

    let i_mu = integrate_general(f, iv, m, params, inner_tol)?.value;
    let i_sum = integrate_general(f, iv, a + m, params, inner_tol)?.value;
    let rhs = (iv.t.powf(a) / a * i_mu - i_sum / a) / c;
    Ok(IntegralComposition {
        lhs,
        rhs,
        summed_order: i_sum,
    })
}

/// Integral of the two-parameter Mittag-Leffler function E_{μ,κ} by
/// term-wise integration:
///
/// ```text
/// (1/C) Σ_k (t^(k+α) − a^(k+α)) / ((k+α) Γ(μk+κ))
/// ```
pub fn ml_integrate(mu: f64, kappa: f64, iv: IntervalSpec, alpha: Order, params: &MLParams) -> Result<f64> {
    if !(mu > 0.0 && kappa > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need mu, kappa > 0, got {mu}, {kappa}"
        )));
    }
    iv.validate()?;
    if alpha.n != 0 {
        return Err(Error::InvalidParameter(format!(
            "integral order must lie in (0, 1], got {}",
            alpha.alpha
        )));
    }
    alpha.validate()?;
    if iv.a == iv.t {
        return Ok(0.0);
    }
    let al = alpha.alpha;
    let c = coefficient(params)?;
    let term = |k: usize| -> Result<f64> {
        let e = k as f64 + al;
        let g = match gamma(mu * k as f64 + kappa) {
            Ok(g) => g,
            Err(Error::Overflow(_)) => return Ok(0.0),
            Err(err) => return Err(err),
        };
        Ok((iv.t.powf(e) - iv.a.powf(e)) / (e * g))
    };
    Ok(sum_series(term, TruncationSpec::adaptive(ML_TOL), iv.t)? / c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RlMode {
    Integral,
    Derivative,
}

/// Γ(x)/Γ(y), through log-gamma when either factor leaves f64 range.
fn gamma_ratio(x: f64, y: f64) -> Result<f64> {
    match (gamma(x), gamma(y)) {
        (Ok(gx), Ok(gy)) if gx.is_finite() && gy.is_finite() => Ok(gx / gy),
        (Err(e @ Error::Pole(_)), _) | (_, Err(e @ Error::Pole(_))) => Err(e),
        _ => {
            let (lx, sx) = log_gamma(x)?;
            let (ly, sy) = log_gamma(y)?;
            Ok(sx * sy * (lx - ly).exp())
        }
    }
}

/// Riemann-Liouville operators of order α ∈ (0, 1) on t^μ:
/// integral Γ(μ+1)/Γ(μ+1+α)·t^(μ+α), derivative Γ(μ+1)/Γ(μ+1−α)·t^(μ−α).
pub fn rl_power(mode: RlMode, mu: f64, alpha: f64, t: f64) -> Result<f64> {
    if !(mu > -1.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("power must exceed -1, got {mu}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "order must lie in (0, 1), got {alpha}"
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("t must be > 0, got {t}")));
    }
    match mode {
        RlMode::Integral => Ok(gamma_ratio(mu + 1.0, mu + 1.0 + alpha)? * t.powf(mu + alpha)),
        RlMode::Derivative => {
            let arg = mu + 1.0 - alpha;
            if arg <= 0.0 && arg == arg.floor() {
                return Err(Error::Pole(arg));
            }
            Ok(gamma_ratio(mu + 1.0, arg)? * t.powf(mu - alpha))
        }
    }
}

/// Factor linking the V integral of (t−x)^μ to the Riemann-Liouville
/// integral of t^μ: Γ(α)/C. Equals Γ(α) exactly when C = 1.
pub fn rl_integral_bridge_factor(alpha: f64, params: &MLParams) -> Result<f64> {
    Ok(gamma(alpha)? / coefficient(params)?)
}

/// Factor linking the V derivative of t ↦ I[(t−x)^μ](t) to the
/// Riemann-Liouville derivative of t^μ:
/// Γ(α)Γ(μ+1−α)/Γ(μ+1+α) · t^α · (μ+α).
pub fn rl_derivative_bridge_factor(mu: f64, alpha: f64, t: f64) -> Result<f64> {
    Ok(gamma(alpha)? * gamma_ratio(mu + 1.0 - alpha, mu + 1.0 + alpha)? * t.powf(alpha) * (mu + alpha))
}
