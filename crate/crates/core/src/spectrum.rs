//! Physical outputs at a vacuum: scalar and quark masses, axial and
//! vector shifts, and the scalar–pseudoscalar width-coupling suppression.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_sigma, ModelParams, XiFactors};
use crate::potential::{kinetic_constant, potential_value, quartic_coupling, SingletPotential};

/// Step of the finite-difference curvature, relative to `Φ₀`.
const HESSIAN_STEP: f64 = 1e-4;

/// Scalar mass from `m_φ² = 6[Φ₀² + 2MΦ₀ξ₁ + (M² − Λ²)ξ₂]`.
pub fn scalar_mass(params: &ModelParams, sigma: f64, phi0: f64) -> Result<f64> {
    let xi = XiFactors::at(sigma)?;
    let (l, m) = (params.lambda_cut, params.m_asym);
    let bracket = phi0 * phi0 + 2.0 * m * phi0 * xi.xi1 + (m * m - l * l) * xi.xi2;
    if bracket < 0.0 {
        return Err(Error::Instability(format!(
            "scalar mass squared is negative ({}) at phi0 = {phi0}, sigma = {sigma}",
            6.0 * bracket
        )));
    }
    Ok((6.0 * bracket).sqrt())
}

/// Scalar mass as the curvature of `U` in the log-fluctuation coordinate
/// divided by the kinetic constant, `m² = Φ₀²U″(Φ₀)/Z_Φ`, with `U″` taken
/// by central finite differences.
pub fn scalar_mass_hessian_oracle(
    params: &ModelParams,
    sigma: f64,
    phi0: f64,
    pot: &SingletPotential,
) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(
            "the curvature mass needs sigma > 0 (Z_phi vanishes at sigma = 0)".into(),
        ));
    }
    let h = HESSIAN_STEP * phi0;
    let u_plus = potential_value(pot, phi0 + h)?;
    let u_mid = potential_value(pot, phi0)?;
    let u_minus = potential_value(pot, phi0 - h)?;
    let curvature = (u_plus - 2.0 * u_mid + u_minus) / (h * h);
    if curvature < 0.0 {
        return Err(Error::Instability(format!(
            "potential curvature is negative ({curvature}) at phi0 = {phi0}"
        )));
    }
    let z = kinetic_constant(params, sigma, phi0)?;
    Ok((phi0 * phi0 * curvature / z).sqrt())
}

/// Dynamical quark mass `m_ψ = Φ₀`.
pub fn quark_mass(phi0: f64) -> f64 {
    phi0
}

/// How the axial-vector mass is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxialMode {
    /// Elementary axial field with bare mass `m_0A` (GeV).
    Elementary { m_0a: f64 },
    /// Composite axial field sharing the scalar's compositeness scale: `m_A² = m_φ²`.
    Composite,
}

impl Default for AxialMode {
    fn default() -> Self {
        AxialMode::Elementary { m_0a: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxialShift {
    pub delta_ma2: f64,
    pub m_a2: f64,
}

/// `δm_A² = (λ/3)m_φ²`; `m_A² = m_0A² + δm_A²` or `m_φ²` in composite mode.
pub fn axial_mass_shift(
    params: &ModelParams,
    sigma: f64,
    m_phi: f64,
    mode: AxialMode,
) -> Result<AxialShift> {
    check_sigma(sigma)?;
    let delta_ma2 = quartic_coupling(params.n_c, sigma) / 3.0 * m_phi * m_phi;
    let m_a2 = match mode {
        AxialMode::Elementary { m_0a } => m_0a * m_0a + delta_ma2,
        AxialMode::Composite => m_phi * m_phi,
    };
    Ok(AxialShift { delta_ma2, m_a2 })
}

/// Relative deviation of the axial quadratic-form coefficient
/// `(2/3)μ² − 2λΦ₀² − (N_cM/π²)σξ₁Φ₀` from `−(λ/3)m_φ²`.
pub fn axial_quadratic_check(params: &ModelParams, sigma: f64, phi0: f64) -> Result<f64> {
    let xi = XiFactors::at(sigma)?;
    let lam = quartic_coupling(params.n_c, sigma);
    let mu2 = 3.0 * params.f_pi_squared() * sigma * xi.xi2;
    let coeff = 2.0 / 3.0 * mu2
        - 2.0 * lam * phi0 * phi0
        - params.nc() * params.m_asym / (PI * PI) * sigma * xi.xi1 * phi0;
    let m_phi = scalar_mass(params, sigma, phi0)?;
    let expected = -lam / 3.0 * m_phi * m_phi;
    if expected == 0.0 {
        return Ok(coeff.abs());
    }
    Ok(((coeff - expected) / expected).abs())
}

/// `Δ_V = σN_c/12π²`, which equals `λ/3`.
pub fn vector_coupling_shift(params: &ModelParams, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(quartic_coupling(params.n_c, sigma) / 3.0)
}

/// `Mξ₁(3σ/2π²)^{1/2}/F_π`.
pub fn width_coupling_ratio(params: &ModelParams, sigma: f64) -> Result<f64> {
    let xi1 = XiFactors::at(sigma)?.xi1;
    let f_pi = params.f_pi()?;
    Ok(params.m_asym * xi1 * (3.0 * sigma / (2.0 * PI * PI)).sqrt() / f_pi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub m_phi: f64,
    pub m_psi: f64,
    pub z_phi: f64,
    #[serde(rename = "delta_mA2")]
    pub delta_ma2: f64,
    #[serde(rename = "m_A2")]
    pub m_a2: f64,
    #[serde(rename = "delta_V")]
    pub delta_v: f64,
    pub width_ratio: f64,
    /// Relative gap between the closed-form mass and the curvature mass;
    /// absent at σ = 0.
    pub hessian_residual: Option<f64>,
}

/// Assembles every physical output at the vacuum `phi0`.
pub fn spectrum(
    params: &ModelParams,
    sigma: f64,
    phi0: f64,
    pot: &SingletPotential,
    mode: AxialMode,
) -> Result<SpectrumReport> {
    let m_phi = scalar_mass(params, sigma, phi0)?;
    let hessian_residual = if sigma > 0.0 {
        let oracle = scalar_mass_hessian_oracle(params, sigma, phi0, pot)?;
        Some(((m_phi - oracle) / m_phi).abs())
    } else {
        None
    };
    let axial = axial_mass_shift(params, sigma, m_phi, mode)?;
    Ok(SpectrumReport {
        m_phi,
        m_psi: quark_mass(phi0),
        z_phi: kinetic_constant(params, sigma, phi0)?,
        delta_ma2: axial.delta_ma2,
        m_a2: axial.m_a2,
        delta_v: vector_coupling_shift(params, sigma)?,
        width_ratio: width_coupling_ratio(params, sigma)?,
        hessian_residual,
    })
}
