//! Model inputs and the σ-dependent running factors.
//!
//! The running scale is `μ = Λ·e^{−σ}` with `σ ≥ 0`; `σ = 0` is the
//! compositeness scale itself. Masses and the scalar condensate run through
//! the factors `ξₙ(σ) = (1 − e^{−nσ})/(nσ)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `nσ` the running factor is evaluated from its Taylor series.
pub const XI_SERIES_THRESHOLD: f64 = 1e-6;

/// Relative tolerance for the derived-mode F_π relation check.
const FPI_RELATION_TOL: f64 = 1e-12;

/// How the pion decay constant is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "snake_case")]
pub enum FPi {
    /// `F_π² = N_c(Λ² − M²)/(4π²)`, the only choice for which the vacuum
    /// and mass relations agree with the potential curvature.
    Derived,
    /// Independent value in GeV.
    Override(f64),
}

/// Physical inputs of the model. Energies are in GeV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n_c: u32,
    pub lambda_cut: f64,
    pub m_asym: f64,
    pub f_pi: FPi,
}

impl ModelParams {
    pub fn derived(n_c: u32, lambda_cut: f64, m_asym: f64) -> Self {
        ModelParams {
            n_c,
            lambda_cut,
            m_asym,
            f_pi: FPi::Derived,
        }
    }

    pub fn with_fpi(n_c: u32, lambda_cut: f64, m_asym: f64, f_pi: f64) -> Self {
        ModelParams {
            n_c,
            lambda_cut,
            m_asym,
            f_pi: FPi::Override(f_pi),
        }
    }

    pub fn nc(&self) -> f64 {
        f64::from(self.n_c)
    }

    pub fn is_derived(&self) -> bool {
        matches!(self.f_pi, FPi::Derived)
    }

    /// F_π in GeV. Fails in derived mode when `M ≥ Λ`.
    pub fn f_pi(&self) -> Result<f64> {
        match self.f_pi {
            FPi::Derived => derive_fpi(self.n_c, self.lambda_cut, self.m_asym),
            FPi::Override(v) => Ok(v),
        }
    }

    /// F_π², without the positivity requirement of [`ModelParams::f_pi`].
    pub fn f_pi_squared(&self) -> f64 {
        match self.f_pi {
            FPi::Derived => fpi_squared(self.n_c, self.lambda_cut, self.m_asym),
            FPi::Override(v) => v * v,
        }
    }

    /// Hard preconditions shared by every operation.
    pub fn check_basic(&self) -> Result<()> {
        if self.n_c == 0 {
            return Err(Error::Domain("n_c must be positive".into()));
        }
        if !(self.lambda_cut.is_finite() && self.lambda_cut > 0.0) {
            return Err(Error::Domain(format!(
                "lambda_cut must be positive and finite, got {}",
                self.lambda_cut
            )));
        }
        if !(self.m_asym.is_finite() && self.m_asym >= 0.0) {
            return Err(Error::Domain(format!(
                "m_asym must be non-negative and finite, got {}",
                self.m_asym
            )));
        }
        if let FPi::Override(v) = self.f_pi {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("f_pi must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Running scale `μ = Λe^{−σ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunningPoint {
    pub sigma: f64,
    pub mu: f64,
}

/// `ξ₁, ξ₂, ξ₃` at one value of σ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiFactors {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
}

impl XiFactors {
    pub fn at(sigma: f64) -> Result<Self> {
        Ok(XiFactors {
            xi1: xi_factor(1, sigma)?,
            xi2: xi_factor(2, sigma)?,
            xi3: xi_factor(3, sigma)?,
        })
    }
}

pub(crate) fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("sigma must be finite and >= 0, got {sigma}")))
    }
}

/// Running factor `ξₙ(σ) = (1 − e^{−nσ})/(nσ)` for `n ∈ {1, 2, 3}`.
///
/// Switches to the cubic Taylor polynomial when `nσ` is below
/// [`XI_SERIES_THRESHOLD`], so `ξₙ(0) = 1` exactly.
pub fn xi_factor(n: u32, sigma: f64) -> Result<f64> {
    if !(1..=3).contains(&n) {
        return Err(Error::Domain(format!("xi index must be 1, 2 or 3, got {n}")));
    }
    check_sigma(sigma)?;
    let x = f64::from(n) * sigma;
    if x < XI_SERIES_THRESHOLD {
        Ok(1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0)
    } else {
        Ok(-(-x).exp_m1() / x)
    }
}

pub fn running_scale(params: &ModelParams, sigma: f64) -> Result<RunningPoint> {
    check_sigma(sigma)?;
    Ok(RunningPoint {
        sigma,
        mu: params.lambda_cut * (-sigma).exp(),
    })
}

fn fpi_squared(n_c: u32, lambda_cut: f64, m_asym: f64) -> f64 {
    f64::from(n_c) * (lambda_cut * lambda_cut - m_asym * m_asym) / (4.0 * PI * PI)
}

/// F_π tied to (Λ, M): `F_π² = N_c(Λ² − M²)/(4π²)`.
pub fn derive_fpi(n_c: u32, lambda_cut: f64, m_asym: f64) -> Result<f64> {
    if n_c == 0 {
        return Err(Error::Domain("n_c must be positive".into()));
    }
    if !(m_asym >= 0.0 && lambda_cut > m_asym) {
        return Err(Error::Domain(format!(
            "derived F_pi needs lambda_cut > m_asym >= 0, got lambda_cut={lambda_cut}, m_asym={m_asym}"
        )));
    }
    Ok(fpi_squared(n_c, lambda_cut, m_asym).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Violation,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamIssue {
    pub severity: Severity,
    pub message: String,
}

impl ParamIssue {
    fn violation(message: impl Into<String>) -> Self {
        ParamIssue {
            severity: Severity::Violation,
            message: message.into(),
        }
    }

    fn info(message: impl Into<String>) -> Self {
        ParamIssue {
            severity: Severity::Info,
            message: message.into(),
        }
    }
}

/// Lists every violated parameter invariant. An empty list means valid.
///
/// An override F_π that differs from the derived value is reported with
/// [`Severity::Info`]: the model is still solvable, but the scalar mass
/// formula is then no longer the exact curvature of the potential.
pub fn validate_params(params: &ModelParams) -> Vec<ParamIssue> {
    let mut issues = Vec::new();
    if params.n_c == 0 {
        issues.push(ParamIssue::violation("n_c > 0 violated"));
    }
    if !(params.lambda_cut.is_finite() && params.lambda_cut > 0.0) {
        issues.push(ParamIssue::violation("lambda_cut > 0 violated"));
    }
    if !(params.m_asym.is_finite() && params.m_asym >= 0.0) {
        issues.push(ParamIssue::violation("m_asym >= 0 violated"));
    }
    if !(params.m_asym < params.lambda_cut) {
        issues.push(ParamIssue::violation("m_asym < lambda_cut violated"));
    }
    match params.f_pi {
        FPi::Derived => {
            if let Ok(f) = params.f_pi() {
                let lhs = f * f * 4.0 * PI * PI / params.nc() + params.m_asym * params.m_asym;
                let rhs = params.lambda_cut * params.lambda_cut;
                if (lhs - rhs).abs() > FPI_RELATION_TOL * rhs {
                    issues.push(ParamIssue::violation(format!(
                        "derived F_pi relation violated: {lhs} != {rhs}"
                    )));
                }
            }
        }
        FPi::Override(v) => {
            if !(v.is_finite() && v > 0.0) {
                issues.push(ParamIssue::violation("f_pi > 0 violated"));
            } else if let Ok(derived) = derive_fpi(params.n_c, params.lambda_cut, params.m_asym) {
                if (v - derived).abs() > FPI_RELATION_TOL * derived {
                    issues.push(ParamIssue::info(format!(
                        "override F_pi {v} differs from derived value {derived}; \
                         scalar-mass curvature check is informational only"
                    )));
                }
            }
        }
    }
    issues
}
