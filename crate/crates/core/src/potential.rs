//! Induced effective potential along the flavor-singlet direction `Φ = s·1`.
//!
//! `U` is minus the non-kinetic part of the effective Lagrangian:
//!
//! ```text
//! U(s) = tr·(−μ² s² + (λ/2) s⁴ + c_lin s + c_cub s³),   tr = 2
//! ```
//!
//! with `μ² = 3F_π²σξ₂`, `λ = N_cσ/4π²`, `c_lin = 3C_qσξ₃` and
//! `c_cub = N_c M σ ξ₁/2π²`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::condensates::condensates_forward;
use crate::error::{Error, Result};
use crate::params::{check_sigma, ModelParams, XiFactors};

/// Two degenerate light flavors.
pub const FLAVOR_TRACE: u32 = 2;

const CQ_CONSISTENCY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialCoeffs {
    /// GeV²
    pub mu2: f64,
    pub lam: f64,
    /// GeV³
    pub c_lin: f64,
    /// GeV
    pub c_cub: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingletPotential {
    pub coeffs: PotentialCoeffs,
    pub flavor_trace: u32,
}

impl SingletPotential {
    pub fn new(coeffs: PotentialCoeffs) -> Self {
        SingletPotential {
            coeffs,
            flavor_trace: FLAVOR_TRACE,
        }
    }
}

/// Quartic coupling `λ = N_cσ/4π²`.
pub fn quartic_coupling(n_c: u32, sigma: f64) -> f64 {
    f64::from(n_c) * sigma / (4.0 * PI * PI)
}

/// Builds the potential coefficients, requiring `c_q` to match the
/// condensate relation for `params`.
pub fn potential_coeffs(params: &ModelParams, c_q: f64, sigma: f64) -> Result<PotentialCoeffs> {
    params.check_basic()?;
    let expected = condensates_forward(params.n_c, params.lambda_cut, params.m_asym).c_q;
    let scale = expected
        .abs()
        .max(params.nc() * params.lambda_cut.powi(3) / (2.0 * PI * PI));
    if (c_q - expected).abs() > CQ_CONSISTENCY_TOL * scale {
        return Err(Error::Consistency(format!(
            "c_q = {c_q} does not match the condensate relation value {expected}"
        )));
    }
    potential_coeffs_unchecked(params, c_q, sigma)
}

/// Same as [`potential_coeffs`] but accepts any `c_q`.
pub fn potential_coeffs_unchecked(
    params: &ModelParams,
    c_q: f64,
    sigma: f64,
) -> Result<PotentialCoeffs> {
    check_sigma(sigma)?;
    let xi = XiFactors::at(sigma)?;
    let f_pi = params.f_pi()?;
    Ok(PotentialCoeffs {
        mu2: 3.0 * f_pi * f_pi * sigma * xi.xi2,
        lam: quartic_coupling(params.n_c, sigma),
        c_lin: 3.0 * c_q * sigma * xi.xi3,
        c_cub: params.nc() * params.m_asym * sigma * xi.xi1 / (2.0 * PI * PI),
        sigma,
    })
}

fn check_scale(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "singlet field must be positive (nonlinear representation), got {s}"
        )))
    }
}

/// `U(s)` in GeV⁴.
pub fn potential_value(pot: &SingletPotential, s: f64) -> Result<f64> {
    check_scale(s)?;
    Ok(raw_value(pot, s))
}

pub(crate) fn raw_value(pot: &SingletPotential, s: f64) -> f64 {
    let c = &pot.coeffs;
    let tr = f64::from(pot.flavor_trace);
    let s2 = s * s;
    tr * (-c.mu2 * s2 + 0.5 * c.lam * s2 * s2 + c.c_lin * s + c.c_cub * s2 * s)
}

/// Analytic `(U′, U″)`.
pub fn potential_derivatives(pot: &SingletPotential, s: f64) -> Result<(f64, f64)> {
    check_scale(s)?;
    Ok(raw_derivatives(pot, s))
}

pub(crate) fn raw_derivatives(pot: &SingletPotential, s: f64) -> (f64, f64) {
    let c = &pot.coeffs;
    let tr = f64::from(pot.flavor_trace);
    let s2 = s * s;
    let d1 = tr * (-2.0 * c.mu2 * s + 2.0 * c.lam * s2 * s + c.c_lin + 3.0 * c.c_cub * s2);
    let d2 = tr * (-2.0 * c.mu2 + 6.0 * c.lam * s2 + 6.0 * c.c_cub * s);
    (d1, d2)
}

/// Kinetic constant `Z_Φ = N_cσΦ₀²/2π²`.
pub fn kinetic_constant(params: &ModelParams, sigma: f64, phi0: f64) -> Result<f64> {
    check_sigma(sigma)?;
    if !(phi0.is_finite() && phi0 > 0.0) {
        return Err(Error::Domain(format!("phi0 must be positive, got {phi0}")));
    }
    Ok(params.nc() * sigma * phi0 * phi0 / (2.0 * PI * PI))
}
