//! The six-parameter Mittag-Leffler function, its truncations, the `H`
//! kernel and independent evaluators for the one- to five-parameter members.
//!
//! Every coefficient is formed in log space. The lower-order evaluators use
//! their own coefficient recurrences (running products for the classical
//! Pochhammer symbol and for k!) rather than delegating to [`ml_eval`], so
//! agreement between them is a genuine cross-check.

use crate::error::{Error, Result};

use super::gamma::{gamma, ln_gamma};
use super::params::{MLParams, TruncationSpec};
use super::series::{sum_series, NeumaierSum};

/// ln f64::MAX
const LN_MAX: f64 = 709.782_712_893_384;

/// Generalized Pochhammer symbol (ρ)_{qk} = Γ(ρ + qk) / Γ(ρ).
///
/// When qk is a small integer the rising product ρ(ρ+1)…(ρ+qk-1) is used
/// directly, otherwise the log-gamma difference.
pub fn gen_pochhammer(rho: f64, q: f64, k: usize) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) || !(q > 0.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "pochhammer needs rho > 0 and q > 0, got rho = {rho}, q = {q}"
        )));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let steps = q * k as f64;
    if steps == steps.floor() && steps <= 64.0 {
        let prod: f64 = (0..steps as usize).map(|j| rho + j as f64).product();
        if prod.is_finite() {
            return Ok(prod);
        }
    }
    let ln = ln_pochhammer(rho, steps)?;
    if ln > LN_MAX {
        return Err(Error::Overflow(format!("({rho})_{{{q}*{k}}}")));
    }
    Ok(ln.exp())
}

fn ln_pochhammer(rho: f64, steps: f64) -> Result<f64> {
    Ok(ln_gamma(rho + steps)? - ln_gamma(rho)?)
}

/// Shared log-space coefficient of the six-parameter series:
/// ln[(ρ)_{qk} / ((δ)_{pk} Γ(γk + β))].
struct SixParamCoef {
    params: MLParams,
    ln_gamma_rho: f64,
    ln_gamma_delta: f64,
}

impl SixParamCoef {
    fn new(params: MLParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params,
            ln_gamma_rho: ln_gamma(params.rho)?,
            ln_gamma_delta: ln_gamma(params.delta)?,
        })
    }

    fn ln_coef(&self, k: usize) -> Result<f64> {
        let p = &self.params;
        let kf = k as f64;
        let num = ln_gamma(p.rho + p.q * kf)? - self.ln_gamma_rho;
        let den = ln_gamma(p.delta + p.p * kf)? - self.ln_gamma_delta;
        Ok(num - den - ln_gamma(p.gamma * kf + p.beta)?)
    }
}

/// sign(z)^k · exp(ln_coef + k ln|z|), for k ≥ 1.
fn power_term(ln_coef: f64, z: f64, k: usize) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
    sign * (ln_coef + k as f64 * z.abs().ln()).exp()
}

/// Six-parameter Mittag-Leffler function, full (adaptive) or truncated
/// (fixed index).
pub fn ml_eval(params: MLParams, z: f64, trunc: TruncationSpec) -> Result<f64> {
    let coef = SixParamCoef::new(params)?;
    let first = 1.0 / gamma(params.beta)?;
    sum_series(
        |k| {
            if k == 0 {
                Ok(first)
            } else {
                Ok(power_term(coef.ln_coef(k)?, z, k))
            }
        },
        trunc,
        z,
    )
}

/// The terms of ᵢH(z) = Γ(β) · ᵢE(z), k = 0..=i. The k = 0 term is exactly 1.
pub fn h_terms(params: MLParams, z: f64, i: usize) -> Result<Vec<f64>> {
    let coef = SixParamCoef::new(params)?;
    let ln_gamma_beta = ln_gamma(params.beta)?;
    let mut terms = Vec::with_capacity(i + 1);
    terms.push(1.0);
    for k in 1..=i {
        let c = (ln_gamma_beta + coef.ln_coef(k)?).exp();
        terms.push(c * z.powi(k as i32));
    }
    Ok(terms)
}

/// ᵢH(z) = Γ(β) · ᵢE(z), the kernel inside the derivative's difference
/// quotient. Requires i ≥ 1: with i = 0 the kernel is identically 1.
pub fn h_eval(params: MLParams, z: f64, i: usize) -> Result<f64> {
    if i == 0 {
        return Err(Error::InvalidParameter(
            "truncation index must be >= 1 for the H kernel".into(),
        ));
    }
    let mut acc = NeumaierSum::default();
    for t in h_terms(params, z, i)? {
        acc.add(t);
    }
    Ok(acc.value())
}

/// One-parameter E_γ(z) = Σ z^k / Γ(γk + 1).
pub fn ml_one(gamma_p: f64, z: f64, trunc: TruncationSpec) -> Result<f64> {
    MLParams::one(gamma_p)?;
    sum_series(
        |k| {
            if k == 0 {
                return Ok(1.0);
            }
            Ok(power_term(-ln_gamma(gamma_p * k as f64 + 1.0)?, z, k))
        },
        trunc,
        z,
    )
}

/// Two-parameter E_{γ,β}(z) = Σ z^k / Γ(γk + β).
pub fn ml_two(gamma_p: f64, beta: f64, z: f64, trunc: TruncationSpec) -> Result<f64> {
    MLParams::two(gamma_p, beta)?;
    let first = 1.0 / gamma(beta)?;
    sum_series(
        |k| {
            if k == 0 {
                return Ok(first);
            }
            Ok(power_term(-ln_gamma(gamma_p * k as f64 + beta)?, z, k))
        },
        trunc,
        z,
    )
}

/// Three-parameter (Prabhakar) E^ρ_{γ,β}(z) = Σ (ρ)_k / k! · z^k / Γ(γk + β).
pub fn ml_three(gamma_p: f64, beta: f64, rho: f64, z: f64, trunc: TruncationSpec) -> Result<f64> {
    MLParams::three(gamma_p, beta, rho)?;
    let first = 1.0 / gamma(beta)?;
    // ln[(ρ)_k / k!] by the recurrence c_k = c_{k-1} (ρ + k - 1) / k
    let mut ln_ratio = 0.0;
    sum_series(
        |k| {
            if k == 0 {
                return Ok(first);
            }
            let kf = k as f64;
            ln_ratio += ((rho + kf - 1.0) / kf).ln();
            Ok(power_term(ln_ratio - ln_gamma(gamma_p * kf + beta)?, z, k))
        },
        trunc,
        z,
    )
}

/// Four-parameter E^{ρ,q}_{γ,β}(z) = Σ (ρ)_{qk} / k! · z^k / Γ(γk + β).
pub fn ml_four(gamma_p: f64, beta: f64, rho: f64, q: f64, z: f64, trunc: TruncationSpec) -> Result<f64> {
    MLParams::four(gamma_p, beta, rho, q)?;
    let first = 1.0 / gamma(beta)?;
    let mut ln_fact = 0.0;
    sum_series(
        |k| {
            if k == 0 {
                return Ok(first);
            }
            let kf = k as f64;
            ln_fact += kf.ln();
            let c = ln_pochhammer(rho, q * kf)? - ln_fact - ln_gamma(gamma_p * kf + beta)?;
            Ok(power_term(c, z, k))
        },
        trunc,
        z,
    )
}

/// Five-parameter E^{ρ,q}_{γ,β,δ}(z) = Σ (ρ)_{qk} / (δ)_k · z^k / Γ(γk + β).
pub fn ml_five(gamma_p: f64, beta: f64, rho: f64, delta: f64, q: f64, z: f64, trunc: TruncationSpec) -> Result<f64> {
    MLParams::five(gamma_p, beta, rho, delta, q)?;
    let first = 1.0 / gamma(beta)?;
    // ln (δ)_k by the recurrence (δ)_k = (δ)_{k-1} (δ + k - 1)
    let mut ln_delta_k = 0.0;
    sum_series(
        |k| {
            if k == 0 {
                return Ok(first);
            }
            let kf = k as f64;
            ln_delta_k += (delta + kf - 1.0).ln();
            let c = ln_pochhammer(rho, q * kf)? - ln_delta_k - ln_gamma(gamma_p * kf + beta)?;
            Ok(power_term(c, z, k))
        },
        trunc,
        z,
    )
}
