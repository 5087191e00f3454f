use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometric step schedule ε_j = eps0 · ratio^j, j = 0..levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonSchedule {
    pub eps0: f64,
    pub ratio: f64,
    pub levels: usize,
}

impl EpsilonSchedule {
    pub const DEFAULT_RATIO: f64 = 0.5;
    pub const DEFAULT_LEVELS: usize = 6;

    pub fn new(eps0: f64, ratio: f64, levels: usize) -> Result<Self> {
        let s = Self { eps0, ratio, levels };
        s.validate()?;
        Ok(s)
    }

    /// Default ratio and level count starting at `eps0`.
    pub fn starting_at(eps0: f64) -> Result<Self> {
        Self::new(eps0, Self::DEFAULT_RATIO, Self::DEFAULT_LEVELS)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > 0.0 && self.eps0.is_finite()) {
            return Err(Error::InvalidParameter(format!("eps0 must be > 0, got {}", self.eps0)));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "ratio must lie in (0, 1), got {}",
                self.ratio
            )));
        }
        if self.levels < 2 {
            return Err(Error::InvalidParameter(format!(
                "levels must be >= 2, got {}",
                self.levels
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> Vec<f64> {
        (0..self.levels)
            .map(|j| self.eps0 * self.ratio.powi(j as i32))
            .collect()
    }
}

/// An extrapolated limit and the size of the last correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolated {
    pub value: f64,
    pub err_estimate: f64,
}

/// Richardson extrapolation of `(ε, q(ε))` samples to ε → 0, assuming
/// q(ε) = L + c₁ε + c₂ε² + ….
///
/// Runs Neville's scheme evaluated at ε = 0, so a sequence that is a
/// polynomial in ε of degree < `samples.len()` is reproduced exactly (up to
/// round-off). The error estimate is the magnitude of the last correction.
pub fn extrapolated_limit(samples: &[(f64, f64)]) -> Result<Extrapolated> {
    if samples.len() < 2 {
        return Err(Error::InvalidParameter(
            "extrapolation needs at least two samples".into(),
        ));
    }
    for w in samples.windows(2) {
        if !(w[1].0 < w[0].0) || !(w[1].0 > 0.0) {
            return Err(Error::InvalidParameter(
                "extrapolation steps must be positive and strictly decreasing".into(),
            ));
        }
    }
    if let Some(&(e, q)) = samples.iter().find(|(_, q)| !q.is_finite()) {
        return Err(Error::Divergence(format!("non-finite quotient {q} at step {e}")));
    }

    let n = samples.len();
    // row[j] holds T[j][k] for the current column k
    let mut row: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let mut diag = vec![row[0]];
    let mut last_correction = 0.0;
    for k in 1..n {
        let mut next = vec![0.0; n];
        for j in k..n {
            let ej = samples[j].0;
            let ejk = samples[j - k].0;
            next[j] = row[j] + (row[j] - row[j - 1]) * ej / (ejk - ej);
        }
        last_correction = (next[n - 1] - row[n - 1]).abs();
        diag.push(next[k]);
        row = next;
    }
    let value = row[n - 1];
    if !value.is_finite() {
        return Err(Error::Divergence("extrapolant is not finite".into()));
    }

    // Successive extrapolants growing at every step means the sequence has
    // no polynomial limit behavior.
    let corrections: Vec<f64> = diag.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    if corrections.len() >= 2
        && corrections.windows(2).all(|w| w[1] > w[0])
        && *corrections.last().unwrap() > 1e-8 * value.abs().max(1.0)
    {
        return Err(Error::Divergence(format!(
            "extrapolants keep growing (last correction {:.3e})",
            corrections.last().unwrap()
        )));
    }

    Ok(Extrapolated {
        value,
        err_estimate: last_correction,
    })
}

/// Extrapolated central difference f′(x): D(h) = (f(x+h) − f(x−h)) / 2h on
/// h_j = h0·2^-j, extrapolated in h².
pub fn central_derivative<F>(mut f: F, x: f64, h0: f64, levels: usize) -> Result<Extrapolated>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h0 > 0.0) || levels < 2 {
        return Err(Error::InvalidParameter(format!(
            "central difference needs h0 > 0 and levels >= 2 (h0 = {h0}, levels = {levels})"
        )));
    }
    let mut samples = Vec::with_capacity(levels);
    let mut h = h0;
    for _ in 0..levels {
        let d = (f(x + h)? - f(x - h)?) / (2.0 * h);
        samples.push((h * h, d));
        h *= 0.5;
    }
    extrapolated_limit(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let s: Vec<_> = [0.1, 0.05, 0.025].iter().map(|&e| (e, 4.25)).collect();
        let r = extrapolated_limit(&s).unwrap();
        assert_eq!(r.value, 4.25);
        assert_eq!(r.err_estimate, 0.0);
    }

    #[test]
    fn linear_error_is_annihilated() {
        let s: Vec<_> = [0.1, 0.05, 0.025].iter().map(|&e| (e, 3.0 + e)).collect();
        let r = extrapolated_limit(&s).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_on_schedule() {
        // q(ε) = 5 + 2ε + ε² on eps0 = 0.1, ratio 0.5, 4 levels. Two Neville
        // columns already reproduce a quadratic; the frozen value is 5.
        let sched = EpsilonSchedule::new(0.1, 0.5, 4).unwrap();
        let s: Vec<_> = sched.steps().into_iter().map(|e| (e, 5.0 + 2.0 * e + e * e)).collect();
        let r = extrapolated_limit(&s).unwrap();
        assert!((r.value - 5.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(extrapolated_limit(&[(0.1, 1.0)]).is_err());
        assert!(extrapolated_limit(&[(0.1, 1.0), (0.2, 1.0)]).is_err());
        assert!(extrapolated_limit(&[(0.1, 1.0), (0.05, f64::NAN)]).is_err());
    }

    #[test]
    fn growing_sequence_diverges() {
        // q(ε) = 1/ε blows up as ε → 0
        let s: Vec<_> = [0.1, 0.05, 0.025, 0.0125].iter().map(|&e| (e, 1.0 / e)).collect();
        assert!(matches!(extrapolated_limit(&s), Err(Error::Divergence(_))));
    }

    #[test]
    fn schedule_validation() {
        assert!(EpsilonSchedule::new(0.0, 0.5, 4).is_err());
        assert!(EpsilonSchedule::new(1e-3, 1.0, 4).is_err());
        assert!(EpsilonSchedule::new(1e-3, 0.5, 1).is_err());
        let s = EpsilonSchedule::starting_at(1e-3).unwrap();
        assert_eq!(s.steps().len(), 6);
    }

    #[test]
    fn central_difference_of_sine() {
        let r = central_derivative(|x| Ok(f64::sin(x)), 0.7, 0.1, 5).unwrap();
        assert!((r.value - 0.7f64.cos()).abs() < 1e-12);
    }
}
