//! End-to-end evaluation at one running point and over a σ grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::condensates::{condensates_forward, Condensates};
use crate::error::{Error, Result};
use crate::params::{check_sigma, running_scale, validate_params, ModelParams, Severity};
use crate::potential::{potential_coeffs, PotentialCoeffs, SingletPotential};
use crate::spectrum::{spectrum, AxialMode, SpectrumReport};
use crate::vacuum::{cubic_coefficients, find_vacuum, CubicCoefficients, VacuumSolution};

/// Agreement expected between the closed-form and curvature masses.
pub const HESSIAN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointInputs {
    pub params: ModelParams,
    pub sigma: f64,
    pub mu: f64,
    pub axial: AxialMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub inputs: PointInputs,
    pub condensates: Condensates,
    pub cubic: CubicCoefficients,
    pub vacuum: VacuumSolution,
    pub spectrum: SpectrumReport,
    pub warnings: Vec<String>,
}

/// Condensates → potential → cubic → vacuum → spectrum at one σ.
pub fn run_point(params: &ModelParams, sigma: f64, axial: AxialMode) -> Result<PointReport> {
    params.check_basic()?;
    check_sigma(sigma)?;
    let running = running_scale(params, sigma)?;
    let condensates = condensates_forward(params.n_c, params.lambda_cut, params.m_asym);
    let cubic = cubic_coefficients(params, condensates.c_q, sigma)?;
    let vacuum = find_vacuum(params, condensates.c_q, sigma)?;

    let coeffs = if sigma > 0.0 {
        potential_coeffs(params, condensates.c_q, sigma)?
    } else {
        PotentialCoeffs {
            mu2: 0.0,
            lam: 0.0,
            c_lin: 0.0,
            c_cub: 0.0,
            sigma,
        }
    };
    let pot = SingletPotential::new(coeffs);
    let spectrum = spectrum(params, sigma, vacuum.phi0, &pot, axial)?;

    let mut warnings = vacuum.warnings.clone();
    for issue in validate_params(params) {
        if issue.severity == Severity::Info {
            warnings.push(issue.message);
        }
    }
    if let Some(r) = spectrum.hessian_residual {
        if r > HESSIAN_TOL {
            warnings.push(format!(
                "closed-form scalar mass deviates from the potential curvature by {r:e} (informational)"
            ));
        }
    }

    Ok(PointReport {
        inputs: PointInputs {
            params: *params,
            sigma,
            mu: running.mu,
            axial,
        },
        condensates,
        cubic,
        vacuum,
        spectrum,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn linear(sigma_min: f64, sigma_max: f64, n: usize) -> Self {
        GridSpec {
            sigma_min,
            sigma_max,
            n,
            spacing: Spacing::Linear,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Usage(format!("scan needs n >= 2, got {}", self.n)));
        }
        if !(self.sigma_min.is_finite() && self.sigma_max.is_finite()) {
            return Err(Error::Usage("sigma bounds must be finite".into()));
        }
        if self.sigma_min < 0.0 {
            return Err(Error::Usage(format!(
                "sigma_min must be >= 0, got {}",
                self.sigma_min
            )));
        }
        if self.sigma_max <= self.sigma_min {
            return Err(Error::Usage(format!(
                "sigma_max ({}) must exceed sigma_min ({})",
                self.sigma_max, self.sigma_min
            )));
        }
        if self.spacing == Spacing::Log && self.sigma_min == 0.0 {
            return Err(Error::Usage("log spacing needs sigma_min > 0".into()));
        }
        Ok(())
    }

    /// Grid points in ascending order; both endpoints are hit exactly.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let last = (self.n - 1) as f64;
        let mut pts: Vec<f64> = match self.spacing {
            Spacing::Linear => (0..self.n)
                .map(|i| self.sigma_min + (self.sigma_max - self.sigma_min) * i as f64 / last)
                .collect(),
            Spacing::Log => {
                let (a, b) = (self.sigma_min.ln(), self.sigma_max.ln());
                (0..self.n)
                    .map(|i| (a + (b - a) * i as f64 / last).exp())
                    .collect()
            }
        };
        pts[0] = self.sigma_min;
        pts[self.n - 1] = self.sigma_max;
        Ok(pts)
    }
}

/// One scan row. Failed points keep their coordinates and error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub sigma: f64,
    pub mu: f64,
    /// `"ok"` or the error code.
    pub status: String,
    pub error: Option<String>,
    pub report: Option<PointReport>,
}

impl ScanRow {
    pub fn from_result(params: &ModelParams, sigma: f64, result: Result<PointReport>) -> Self {
        let mu = params.lambda_cut * (-sigma).exp();
        match result {
            Ok(report) => ScanRow {
                sigma,
                mu,
                status: "ok".into(),
                error: None,
                report: Some(report),
            },
            Err(e) => ScanRow {
                sigma,
                mu,
                status: e.code().into(),
                error: Some(e.to_string()),
                report: None,
            },
        }
    }
}

/// Qualitative checks along a scan. Violations are findings, not failures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanDiagnostics {
    /// σ values where the selected vacuum is not the root nearest the previous one.
    pub branch_switches: Vec<f64>,
    /// Adjacent σ pairs where `m_φ` fails to strictly decrease.
    pub monotonic_violations: Vec<(f64, f64)>,
    pub m_phi_strictly_decreasing: bool,
    /// Relative deviation of `m_φ(0)` from `2(Φ₀ + M)` when the grid starts at σ = 0.
    pub sigma0_peak_deviation: Option<f64>,
    pub failed_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub params: ModelParams,
    pub axial: AxialMode,
    pub grid: GridSpec,
    pub rows: Vec<ScanRow>,
    pub diagnostics: ScanDiagnostics,
}

fn diagnose(params: &ModelParams, rows: &[ScanRow]) -> ScanDiagnostics {
    let ok: Vec<&PointReport> = rows.iter().filter_map(|r| r.report.as_ref()).collect();

    let mut branch_switches = Vec::new();
    let mut monotonic_violations = Vec::new();
    for pair in ok.windows(2) {
        let (prev, cur) = (pair[0], pair[1]);
        let nearest = cur
            .vacuum
            .all_real_roots
            .iter()
            .copied()
            .min_by(|a, b| (a - prev.vacuum.phi0).abs().total_cmp(&(b - prev.vacuum.phi0).abs()));
        if let Some(n) = nearest {
            if (n - cur.vacuum.phi0).abs() > 1e-9 * cur.vacuum.phi0.abs().max(1.0) {
                branch_switches.push(cur.inputs.sigma);
            }
        }
        if !(cur.spectrum.m_phi < prev.spectrum.m_phi) {
            monotonic_violations.push((prev.inputs.sigma, cur.inputs.sigma));
        }
    }

    let sigma0_peak_deviation = ok.first().filter(|r| r.inputs.sigma == 0.0).map(|r| {
        let peak = 2.0 * (r.vacuum.phi0 + params.m_asym);
        ((r.spectrum.m_phi - peak) / peak).abs()
    });

    ScanDiagnostics {
        branch_switches,
        m_phi_strictly_decreasing: monotonic_violations.is_empty(),
        monotonic_violations,
        sigma0_peak_deviation,
        failed_points: rows.len() - ok.len(),
    }
}

/// Evaluates every grid point (in parallel; order follows the grid).
pub fn run_scan(params: &ModelParams, grid: &GridSpec, axial: AxialMode) -> Result<ScanTable> {
    let points = grid.points()?;
    let rows: Vec<ScanRow> = points
        .par_iter()
        .map(|&sigma| ScanRow::from_result(params, sigma, run_point(params, sigma, axial)))
        .collect();
    let diagnostics = diagnose(params, &rows);
    Ok(ScanTable {
        params: *params,
        axial,
        grid: *grid,
        rows,
        diagnostics,
    })
}
