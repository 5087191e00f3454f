use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FnSpec;
use crate::special_functions::MLParams;

/// One set of inputs for a rule. Which fields matter depends on the rule;
/// missing required fields are reported as precondition errors.
#[derive(Debug, Clone)]
pub struct Case {
    pub f: Option<FnSpec>,
    pub g: Option<FnSpec>,
    pub t: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub alpha: f64,
    pub mu: Option<f64>,
    pub kappa: Option<f64>,
    pub weights: Option<(f64, f64)>,
    pub params: MLParams,
    pub trunc_i: Option<usize>,
}

impl Default for Case {
    fn default() -> Self {
        Self {
            f: None,
            g: None,
            t: None,
            a: None,
            b: None,
            alpha: 0.5,
            mu: None,
            kappa: None,
            weights: None,
            params: MLParams::ones(),
            trunc_i: None,
        }
    }
}

impl Case {
    pub fn new(alpha: f64, params: MLParams) -> Self {
        Self {
            alpha,
            params,
            ..Self::default()
        }
    }

    pub fn f(mut self, f: FnSpec) -> Self {
        self.f = Some(f);
        self
    }

    pub fn g(mut self, g: FnSpec) -> Self {
        self.g = Some(g);
        self
    }

    pub fn at(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn on(mut self, a: f64, b: f64) -> Self {
        self.a = Some(a);
        self.b = Some(b);
        self
    }

    pub fn mu(mut self, mu: f64) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn kappa(mut self, kappa: f64) -> Self {
        self.kappa = Some(kappa);
        self
    }

    pub fn weights(mut self, wf: f64, wg: f64) -> Self {
        self.weights = Some((wf, wg));
        self
    }

    pub fn trunc(mut self, i: usize) -> Self {
        self.trunc_i = Some(i);
        self
    }

    pub(crate) fn need_f(&self) -> Result<&FnSpec> {
        self.f.as_ref().ok_or_else(|| missing("f"))
    }

    pub(crate) fn need_g(&self) -> Result<&FnSpec> {
        self.g.as_ref().ok_or_else(|| missing("g"))
    }

    pub(crate) fn need_t(&self) -> Result<f64> {
        self.t.ok_or_else(|| missing("t"))
    }

    pub(crate) fn need_interval(&self) -> Result<(f64, f64)> {
        match (self.a, self.b) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(missing("interval [a, b]")),
        }
    }

    pub(crate) fn need_mu(&self) -> Result<f64> {
        self.mu.ok_or_else(|| missing("mu"))
    }

    pub(crate) fn need_kappa(&self) -> Result<f64> {
        self.kappa.ok_or_else(|| missing("kappa"))
    }

    pub fn inputs(&self) -> CaseInputs {
        CaseInputs {
            f: self.f.as_ref().map(|f| f.label().to_string()),
            g: self.g.as_ref().map(|g| g.label().to_string()),
            t: self.t,
            a: self.a,
            b: self.b,
            alpha: self.alpha,
            mu: self.mu,
            kappa: self.kappa,
            weights: self.weights,
            params: self.params,
            trunc_i: self.trunc_i,
        }
    }
}

fn missing(what: &str) -> Error {
    Error::Precondition(format!("case is missing {what}"))
}

/// Serializable echo of a [`Case`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<(f64, f64)>,
    pub params: MLParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc_i: Option<usize>,
}

impl CaseInputs {
    /// Compact one-line description.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(f) = &self.f {
            parts.push(format!("f={f}"));
        }
        if let Some(g) = &self.g {
            parts.push(format!("g={g}"));
        }
        if let Some(t) = self.t {
            parts.push(format!("t={t}"));
        }
        if let (Some(a), Some(b)) = (self.a, self.b) {
            parts.push(format!("[{a},{b}]"));
        }
        parts.push(format!("alpha={}", self.alpha));
        if let Some(mu) = self.mu {
            parts.push(format!("mu={mu}"));
        }
        if let Some(k) = self.kappa {
            parts.push(format!("kappa={k}"));
        }
        if let Some(i) = self.trunc_i {
            parts.push(format!("i={i}"));
        }
        let p = &self.params;
        if *p != MLParams::ones() {
            parts.push(format!(
                "params=({},{},{},{},{},{})",
                p.gamma, p.beta, p.rho, p.delta, p.p, p.q
            ));
        }
        parts.join(" ")
    }
}
