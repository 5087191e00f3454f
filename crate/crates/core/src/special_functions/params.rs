use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters (γ, β, ρ, δ, p, q) of the six-parameter Mittag-Leffler function
///
/// ```text
/// E(z) = Σ_k (ρ)_{qk} / (δ)_{pk} · z^k / Γ(γk + β)
/// ```
///
/// All six are positive reals and γ + p ≥ q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLParams {
    pub gamma: f64,
    pub beta: f64,
    pub rho: f64,
    pub delta: f64,
    pub p: f64,
    pub q: f64,
}

impl Default for MLParams {
    fn default() -> Self {
        Self::ones()
    }
}

impl MLParams {
    pub fn new(gamma: f64, beta: f64, rho: f64, delta: f64, p: f64, q: f64) -> Result<Self> {
        let params = Self {
            gamma,
            beta,
            rho,
            delta,
            p,
            q,
        };
        params.validate()?;
        Ok(params)
    }

    /// All parameters equal to one; the series is then e^z.
    pub const fn ones() -> Self {
        Self {
            gamma: 1.0,
            beta: 1.0,
            rho: 1.0,
            delta: 1.0,
            p: 1.0,
            q: 1.0,
        }
    }

    /// E_γ: β = ρ = δ = p = q = 1.
    pub fn one(gamma: f64) -> Result<Self> {
        Self::new(gamma, 1.0, 1.0, 1.0, 1.0, 1.0)
    }

    /// E_{γ,β}: ρ = δ = p = q = 1.
    pub fn two(gamma: f64, beta: f64) -> Result<Self> {
        Self::new(gamma, beta, 1.0, 1.0, 1.0, 1.0)
    }

    /// Prabhakar E^ρ_{γ,β}: δ = p = q = 1.
    pub fn three(gamma: f64, beta: f64, rho: f64) -> Result<Self> {
        Self::new(gamma, beta, rho, 1.0, 1.0, 1.0)
    }

    /// E^{ρ,q}_{γ,β}: δ = p = 1.
    pub fn four(gamma: f64, beta: f64, rho: f64, q: f64) -> Result<Self> {
        Self::new(gamma, beta, rho, 1.0, 1.0, q)
    }

    /// E^{ρ,q}_{γ,β,δ}: p = 1.
    pub fn five(gamma: f64, beta: f64, rho: f64, delta: f64, q: f64) -> Result<Self> {
        Self::new(gamma, beta, rho, delta, 1.0, q)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("gamma", self.gamma),
            ("beta", self.beta),
            ("rho", self.rho),
            ("delta", self.delta),
            ("p", self.p),
            ("q", self.q),
        ];
        for (name, v) in named {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a positive real, got {v}"
                )));
            }
        }
        if self.gamma + self.p < self.q {
            return Err(Error::InvalidParameter(format!(
                "admissibility gamma + p >= q violated: {} + {} < {}",
                self.gamma, self.p, self.q
            )));
        }
        Ok(())
    }
}

/// How many terms of a Mittag-Leffler series to sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TruncationSpec {
    /// Exactly the terms k = 0..=i.
    Fixed(usize),
    /// Sum until `|term_k| < tol·max(1, |partial sum|)` for three consecutive
    /// k. Fails past `k_max` terms; refuses `|z| > z_max`.
    Adaptive { tol: f64, k_max: usize, z_max: f64 },
}

impl TruncationSpec {
    pub const DEFAULT_K_MAX: usize = 1000;
    pub const DEFAULT_Z_MAX: f64 = 50.0;

    pub fn fixed(i: usize) -> Self {
        TruncationSpec::Fixed(i)
    }

    pub fn adaptive(tol: f64) -> Self {
        TruncationSpec::Adaptive {
            tol,
            k_max: Self::DEFAULT_K_MAX,
            z_max: Self::DEFAULT_Z_MAX,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TruncationSpec::Fixed(_) => Ok(()),
            TruncationSpec::Adaptive { tol, k_max, z_max } => {
                if !(tol > 0.0) {
                    return Err(Error::InvalidParameter(format!("tol must be > 0, got {tol}")));
                }
                if k_max < 1 {
                    return Err(Error::InvalidParameter("k_max must be >= 1".into()));
                }
                if !(z_max > 0.0) {
                    return Err(Error::InvalidParameter(format!("z_max must be > 0, got {z_max}")));
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(MLParams::new(1.0, 1.0, 1.0, 1.0, 0.5, 1.5).is_ok());
        assert!(MLParams::new(0.5, 1.0, 1.0, 1.0, 0.5, 1.5).is_err());
        assert!(MLParams::new(1.0, 0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(MLParams::new(1.0, 1.0, f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn truncation_validation() {
        assert!(TruncationSpec::adaptive(0.0).validate().is_err());
        assert!(TruncationSpec::fixed(0).validate().is_ok());
        let bad = TruncationSpec::Adaptive {
            tol: 1e-10,
            k_max: 0,
            z_max: 50.0,
        };
        assert!(bad.validate().is_err());
    }
}
