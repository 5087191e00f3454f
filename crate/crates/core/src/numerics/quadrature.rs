use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Recursion depth cap for adaptive Simpson.
pub const MAX_DEPTH: u32 = 40;

/// Levels always subdivided before the error test may accept, so a
/// coincidentally small difference on a coarse panel cannot end the search.
const MIN_DEPTH: u32 = 4;

/// Hard cap on accepted subintervals across one integration.
const MAX_SUBDIVISIONS: usize = 2_000_000;

/// Exponent m of the endpoint map x = a + (b − a)·u^m used when the
/// integrand is not finite at an endpoint. Removes power singularities
/// |x − a|^(−s) for s ≤ 1 − 1/m.
const ENDPOINT_POWER: i32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub subdivisions: usize,
}

impl QuadratureResult {
    fn zero() -> Self {
        Self {
            value: 0.0,
            err_estimate: 0.0,
            subdivisions: 1,
        }
    }

    /// Multiplies value and error estimate by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            subdivisions: self.subdivisions,
        }
    }

    fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            subdivisions: self.subdivisions + other.subdivisions,
        }
    }
}

struct Simpson<'f, F> {
    f: &'f mut F,
    value: f64,
    comp: f64,
    err: f64,
    accepted: usize,
}

impl<F> Simpson<'_, F>
where
    F: FnMut(f64) -> Result<f64>,
{
    fn eval(&mut self, x: f64) -> Result<f64> {
        let y = (self.f)(x)?;
        if !y.is_finite() {
            return Err(Error::Domain(format!("integrand is {y} at x = {x}")));
        }
        Ok(y)
    }

    fn accept(&mut self, v: f64, e: f64) -> Result<()> {
        let t = self.value + v;
        self.comp += if self.value.abs() >= v.abs() {
            (self.value - t) + v
        } else {
            (v - t) + self.value
        };
        self.value = t;
        self.err += e;
        self.accepted += 1;
        if self.accepted > MAX_SUBDIVISIONS {
            return Err(Error::MaxSubdivisions(MAX_SUBDIVISIONS));
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        fa: f64,
        m: f64,
        fm: f64,
        b: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<()> {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        let exhausted = depth == 0 || lm <= a || rm >= b || m <= lm || m >= rm;
        let forced = depth > MAX_DEPTH - MIN_DEPTH;
        if (delta.abs() <= 15.0 * tol && !forced) || exhausted {
            return self.accept(left + right + delta / 15.0, delta.abs() / 15.0);
        }
        self.refine(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)?;
        self.refine(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1)
    }
}

fn simpson<F>(f: &mut F, a: f64, fa: f64, b: f64, fb: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut s = Simpson {
        f,
        value: 0.0,
        comp: 0.0,
        err: 0.0,
        accepted: 0,
    };
    let m = 0.5 * (a + b);
    let fm = s.eval(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    s.refine(a, fa, m, fm, b, fb, whole, tol, MAX_DEPTH)?;
    Ok(QuadratureResult {
        value: s.value + s.comp,
        err_estimate: s.err,
        subdivisions: s.accepted,
    })
}

fn finite_at<F>(f: &mut F, x: f64) -> Option<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    f(x).ok().filter(|y| y.is_finite())
}

/// Integral over [a, b] of a function with a (possibly) singular endpoint at
/// `a` only: x = a + (b − a)·u^m, u ∈ [0, 1].
fn with_left_map<F>(f: &mut F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let w = b - a;
    let m = ENDPOINT_POWER as f64;
    let mut g = |u: f64| -> Result<f64> {
        if u <= 0.0 {
            return Ok(0.0);
        }
        let um1 = u.powi(ENDPOINT_POWER - 1);
        Ok(f(a + w * um1 * u)? * m * w * um1)
    };
    let g1 = g(1.0)?;
    simpson(&mut g, 0.0, 0.0, 1.0, g1, tol)
}

fn with_right_map<F>(f: &mut F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let w = b - a;
    let m = ENDPOINT_POWER as f64;
    let mut g = |u: f64| -> Result<f64> {
        if u <= 0.0 {
            return Ok(0.0);
        }
        let um1 = u.powi(ENDPOINT_POWER - 1);
        Ok(f(b - w * um1 * u)? * m * w * um1)
    };
    let g1 = g(1.0)?;
    simpson(&mut g, 0.0, 0.0, 1.0, g1, tol)
}

/// Adaptive Simpson quadrature of `f` over [a, b] to absolute tolerance
/// `tol`.
///
/// An endpoint where `f` is not finite (or fails to evaluate) is treated as
/// an integrable power singularity and mapped away with x = a + (b − a)u^8.
/// Recursion stops at depth [`MAX_DEPTH`]; segments accepted there still
/// contribute their local estimate to `err_estimate`.
pub fn adaptive_quad<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidParameter(format!(
            "quadrature needs finite a <= b, got [{a}, {b}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be > 0, got {tol}")));
    }
    if a == b {
        return Ok(QuadratureResult::zero());
    }
    let fa = finite_at(&mut f, a);
    let fb = finite_at(&mut f, b);
    match (fa, fb) {
        (Some(fa), Some(fb)) => simpson(&mut f, a, fa, b, fb, tol),
        (None, Some(_)) => with_left_map(&mut f, a, b, tol),
        (Some(_), None) => with_right_map(&mut f, a, b, tol),
        (None, None) => {
            let m = 0.5 * (a + b);
            let left = with_left_map(&mut f, a, m, 0.5 * tol)?;
            let right = with_right_map(&mut f, m, b, 0.5 * tol)?;
            Ok(left.combine(right))
        }
    }
}

/// ∫ₐᵇ f(x)·x^(order − 1) dx for 0 ≤ a ≤ b and order > 0.
///
/// With a = 0 the substitution x = u^(1/order) turns the integral into
/// (1/order)·∫₀^(b^order) f(u^(1/order)) du, which has no weight singularity.
/// Otherwise the weight is applied as exp((order − 1)·ln x).
pub fn weighted_quad<F>(mut f: F, a: f64, b: f64, order: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(order > 0.0 && order.is_finite()) {
        return Err(Error::InvalidParameter(format!("order must be > 0, got {order}")));
    }
    if !(a >= 0.0) || a > b {
        return Err(Error::InvalidParameter(format!(
            "weighted quadrature needs 0 <= a <= b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadratureResult::zero());
    }
    if a == 0.0 {
        let inv = 1.0 / order;
        let r = adaptive_quad(|u: f64| f(u.powf(inv)), 0.0, b.powf(order), tol * order)?;
        return Ok(r.scaled(inv));
    }
    adaptive_quad(|x: f64| Ok(f(x)? * ((order - 1.0) * x.ln()).exp()), a, b, tol)
}
