//! Stationarity equation for the scalar vacuum and its solution.
//!
//! Dividing `U′(s)` by `4λ` gives the monic cubic
//!
//! ```text
//! s³ + a₂ s² + a₁ s + a₀ = 0,
//! a₂ = 3Mξ₁,  a₁ = −12π²F_π²ξ₂/N_c,  a₀ = 6π²C_qξ₃/N_c,
//! ```
//!
//! whose coefficients stay finite at σ = 0. The root is picked by the
//! reduced potential `W(s) = U(s)/4λ`, which also has a finite σ → 0 limit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_sigma, ModelParams, XiFactors};
use crate::potential::{raw_derivatives, raw_value, PotentialCoeffs, SingletPotential};

/// Monic cubic `s³ + a2·s² + a1·s + a0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl CubicCoefficients {
    /// Coefficients read off a potential with `λ > 0`.
    pub fn from_potential(c: &PotentialCoeffs) -> Result<Self> {
        if !(c.lam > 0.0) {
            return Err(Error::Domain(
                "the stationarity cubic needs a positive quartic coupling".into(),
            ));
        }
        Ok(CubicCoefficients {
            a2: 1.5 * c.c_cub / c.lam,
            a1: -c.mu2 / c.lam,
            a0: 0.5 * c.c_lin / c.lam,
        })
    }

    pub fn eval(&self, s: f64) -> f64 {
        ((s + self.a2) * s + self.a1) * s + self.a0
    }

    pub fn derivative(&self, s: f64) -> f64 {
        (3.0 * s + 2.0 * self.a2) * s + self.a1
    }

    /// `W(s) = s⁴/4 + a2 s³/3 + a1 s²/2 + a0 s`, equal to `U(s)/4λ`.
    pub fn reduced_potential(&self, s: f64) -> f64 {
        (((0.25 * s + self.a2 / 3.0) * s + 0.5 * self.a1) * s + self.a0) * s
    }

    fn magnitude(&self) -> f64 {
        1f64.max(self.a2.abs()).max(self.a1.abs()).max(self.a0.abs())
    }
}

pub fn cubic_coefficients(params: &ModelParams, c_q: f64, sigma: f64) -> Result<CubicCoefficients> {
    check_sigma(sigma)?;
    let xi = XiFactors::at(sigma)?;
    let nc = params.nc();
    let (l, m) = (params.lambda_cut, params.m_asym);
    let a1 = if params.is_derived() {
        -3.0 * (l * l - m * m) * xi.xi2
    } else {
        -12.0 * PI * PI * params.f_pi_squared() * xi.xi2 / nc
    };
    Ok(CubicCoefficients {
        a2: 3.0 * m * xi.xi1,
        a1,
        a0: 6.0 * PI * PI * c_q * xi.xi3 / nc,
    })
}

fn polish(c: &CubicCoefficients, mut x: f64) -> f64 {
    let mut fx = c.eval(x);
    for _ in 0..3 {
        let d = c.derivative(x);
        if fx == 0.0 || d == 0.0 {
            break;
        }
        let nx = x - fx / d;
        let nf = c.eval(nx);
        if nf.abs() < fx.abs() {
            x = nx;
            fx = nf;
        } else {
            break;
        }
    }
    x
}

/// All real roots, ascending, each polished by Newton.
///
/// Three real roots (negative discriminant) use the trigonometric form;
/// otherwise the single real root comes from Cardano's formula.
pub fn solve_cubic(c: &CubicCoefficients) -> Vec<f64> {
    let shift = c.a2 / 3.0;
    let p = c.a1 - c.a2 * c.a2 / 3.0;
    let q = 2.0 * c.a2.powi(3) / 27.0 - c.a2 * c.a1 / 3.0 + c.a0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);

    let depressed: Vec<f64> = if disc < 0.0 {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos();
        (0..3)
            .map(|k| r * (phi / 3.0 - 2.0 * PI * k as f64 / 3.0).cos())
            .collect()
    } else if disc > 0.0 {
        // Take the cube root of the larger-magnitude term to avoid cancellation.
        let u = (-q / 2.0 - q.signum() * disc.sqrt()).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        vec![u + v]
    } else if p == 0.0 {
        vec![0.0]
    } else {
        vec![3.0 * q / p, -1.5 * q / p]
    };

    let mut roots: Vec<f64> = depressed.into_iter().map(|t| polish(c, t - shift)).collect();
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup();
    roots
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VacuumKind {
    ClosedFormM0,
    ClosedFormSigma0,
    CardanoSelected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VacuumSolution {
    /// GeV
    pub phi0: f64,
    pub all_real_roots: Vec<f64>,
    /// `U″(Φ₀)` in GeV²; zero at σ = 0 where the whole potential vanishes.
    pub curvature: f64,
    /// `W″(Φ₀) = U″(Φ₀)/4λ`, finite and positive down to σ = 0.
    pub reduced_curvature: f64,
    /// `|cubic(Φ₀)|` in GeV³.
    pub residual: f64,
    pub kind: VacuumKind,
    pub warnings: Vec<String>,
}

/// Picks the physical vacuum among the cubic's real roots: positive,
/// locally stable, then deepest. Degenerate minima go to the larger root.
pub fn select_vacuum(
    cubic: &CubicCoefficients,
    roots: &[f64],
    pot: &SingletPotential,
) -> Result<VacuumSolution> {
    let candidates: Vec<f64> = roots
        .iter()
        .copied()
        .filter(|&r| r > 0.0 && cubic.derivative(r) > 0.0)
        .collect();
    let mut warnings = Vec::new();
    let Some(&first) = candidates.first() else {
        return Err(Error::NoVacuum(format!(
            "no positive local minimum among roots {roots:?}"
        )));
    };
    if candidates.len() > 1 {
        warnings.push(format!(
            "{} positive minima {:?}; the deepest is selected",
            candidates.len(),
            candidates
        ));
    }

    let tie_tol = 1e-12 * cubic.magnitude() * first.abs().max(1.0).powi(4);
    let mut best = first;
    let mut best_w = cubic.reduced_potential(first);
    for &r in &candidates[1..] {
        let w = cubic.reduced_potential(r);
        if (w - best_w).abs() <= tie_tol {
            warnings.push(format!(
                "degenerate minima at {best} and {r}; taking the larger root"
            ));
            best = best.max(r);
            best_w = best_w.min(w);
        } else if w < best_w {
            best = r;
            best_w = w;
        }
    }

    Ok(VacuumSolution {
        phi0: best,
        all_real_roots: roots.to_vec(),
        curvature: raw_derivatives(pot, best).1,
        reduced_curvature: cubic.derivative(best),
        residual: cubic.eval(best).abs(),
        kind: VacuumKind::CardanoSelected,
        warnings,
    })
}

/// `Φ₀ = sqrt(μ²/λ) = sqrt(12π²F_π²ξ₂/N_c)` when `M = 0`.
pub fn vacuum_closed_form_m0(params: &ModelParams, sigma: f64) -> Result<f64> {
    if params.m_asym != 0.0 {
        return Err(Error::Misuse(format!(
            "the M = 0 closed form was called with m_asym = {}",
            params.m_asym
        )));
    }
    let xi2 = XiFactors::at(sigma)?.xi2;
    if params.is_derived() {
        Ok((3.0 * xi2).sqrt() * params.lambda_cut)
    } else {
        Ok((12.0 * PI * PI * params.f_pi_squared() * xi2 / params.nc()).sqrt())
    }
}

/// `Φ₀ = √3Λ − M` at the compositeness scale (derived F_π).
pub fn vacuum_closed_form_sigma0(params: &ModelParams) -> Result<f64> {
    let phi0 = 3f64.sqrt() * params.lambda_cut - params.m_asym;
    if phi0 > 0.0 {
        Ok(phi0)
    } else {
        Err(Error::NoVacuum(format!(
            "(phi0 + M)^2 = 3 Lambda^2 has no positive branch: sqrt(3)*{} - {} <= 0",
            params.lambda_cut, params.m_asym
        )))
    }
}

/// `U(a) − U(b)` without cancelling the large common part, via exact divided differences.
fn potential_difference(pot: &SingletPotential, a: f64, b: f64) -> f64 {
    let c = &pot.coeffs;
    let tr = f64::from(pot.flavor_trace);
    let sum = a + b;
    let sq = a * a + b * b;
    let bracket = -c.mu2 * sum + 0.5 * c.lam * sum * sq + c.c_lin + c.c_cub * (sq + a * b);
    tr * (a - b) * bracket
}

/// Brute-force minimiser of `U` on `(0, s_max]`: uniform scan, then
/// golden-section refinement to width `1e-10·s_max`.
pub fn vacuum_oracle_grid(pot: &SingletPotential, s_max: f64, n_points: usize) -> Result<f64> {
    if !(s_max.is_finite() && s_max > 0.0) {
        return Err(Error::Domain(format!("s_max must be positive, got {s_max}")));
    }
    if n_points < 1000 {
        return Err(Error::Domain(format!(
            "the grid oracle needs at least 1000 points, got {n_points}"
        )));
    }
    let h = s_max / n_points as f64;
    let mut best_i = 1;
    let mut best_u = raw_value(pot, h);
    for i in 2..=n_points {
        let u = raw_value(pot, h * i as f64);
        if u < best_u {
            best_u = u;
            best_i = i;
        }
    }
    if best_i == n_points {
        return Err(Error::Range(format!(
            "grid minimum sits on the boundary s_max = {s_max}"
        )));
    }

    let mut lo = h * best_i.saturating_sub(2) as f64;
    let mut hi = h * (best_i + 2).min(n_points) as f64;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let width = 1e-10 * s_max;
    while hi - lo > width {
        if potential_difference(pot, x1, x2) <= 0.0 {
            hi = x2;
            x2 = x1;
            x1 = hi - inv_phi * (hi - lo);
        } else {
            lo = x1;
            x1 = x2;
            x2 = lo + inv_phi * (hi - lo);
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Vacuum at one running point. Uses the exact closed forms where they
/// apply (σ = 0 with derived F_π, or M = 0) and the cubic otherwise; the
/// real roots of the cubic are always reported.
pub fn find_vacuum(params: &ModelParams, c_q: f64, sigma: f64) -> Result<VacuumSolution> {
    params.check_basic()?;
    let cubic = cubic_coefficients(params, c_q, sigma)?;
    let roots = solve_cubic(&cubic);

    if sigma == 0.0 {
        let pot = SingletPotential::new(PotentialCoeffs {
            mu2: 0.0,
            lam: 0.0,
            c_lin: 0.0,
            c_cub: 0.0,
            sigma,
        });
        if params.is_derived() {
            let phi0 = vacuum_closed_form_sigma0(params)?;
            return Ok(VacuumSolution {
                phi0,
                all_real_roots: roots,
                curvature: 0.0,
                reduced_curvature: cubic.derivative(phi0),
                residual: cubic.eval(phi0).abs(),
                kind: VacuumKind::ClosedFormSigma0,
                warnings: Vec::new(),
            });
        }
        let mut sol = select_vacuum(&cubic, &roots, &pot)?;
        sol.curvature = 0.0;
        return Ok(sol);
    }

    let coeffs = crate::potential::potential_coeffs_unchecked(params, c_q, sigma)?;
    let pot = SingletPotential::new(coeffs);
    let selected = select_vacuum(&cubic, &roots, &pot)?;
    if params.m_asym == 0.0 {
        let phi0 = vacuum_closed_form_m0(params, sigma)?;
        let mut warnings = selected.warnings;
        if (selected.phi0 - phi0).abs() > 1e-10 * phi0 {
            warnings.push(format!(
                "cubic root {} disagrees with the M = 0 closed form {phi0}",
                selected.phi0
            ));
        }
        return Ok(VacuumSolution {
            phi0,
            all_real_roots: roots,
            curvature: raw_derivatives(&pot, phi0).1,
            reduced_curvature: cubic.derivative(phi0),
            residual: cubic.eval(phi0).abs(),
            kind: VacuumKind::ClosedFormM0,
            warnings,
        });
    }
    Ok(selected)
}
