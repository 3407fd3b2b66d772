//! Invariant suite run by the `validate` command: every closed-form
//! result is checked against an independent numerical route.

use serde::{Deserialize, Serialize};

use crate::condensates::{condensates_forward, condensates_invert, forward_jacobian};
use crate::params::{validate_params, xi_factor, ModelParams, Severity};
use crate::pipeline::{run_point, run_scan, GridSpec, HESSIAN_TOL};
use crate::potential::{
    kinetic_constant, potential_coeffs, potential_derivatives, potential_value, quartic_coupling,
    SingletPotential,
};
use crate::spectrum::{axial_quadratic_check, vector_coupling_shift, AxialMode};
use crate::vacuum::{
    select_vacuum, solve_cubic, vacuum_closed_form_m0, vacuum_closed_form_sigma0,
    vacuum_oracle_grid, CubicCoefficients,
};

pub const STANDARD_LAMBDAS: [f64; 3] = [0.5, 1.0, 2.0];
pub const STANDARD_M_RATIOS: [f64; 4] = [0.0, 0.1, 0.3, 0.5];
pub const STANDARD_SIGMAS: [f64; 5] = [0.01, 0.1, 0.5, 1.0, 2.0];

/// Derived-F_π parameter sets of the standard grid with `N_c = 3`.
pub fn standard_params() -> Vec<ModelParams> {
    STANDARD_LAMBDAS
        .iter()
        .flat_map(|&l| {
            STANDARD_M_RATIOS
                .iter()
                .map(move |&r| ModelParams::derived(3, l, r * l))
        })
        .collect()
}

const ORACLE_POINTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but never fail the suite.
    pub informational: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            informational: false,
            detail: detail.into(),
        });
    }

    fn inform(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            informational: true,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Sum of absolute term magnitudes of `U′` and `U″`, the natural scale
/// for judging derivative errors near stationary points.
fn derivative_scales(pot: &SingletPotential, s: f64) -> (f64, f64) {
    let c = &pot.coeffs;
    let tr = f64::from(pot.flavor_trace);
    let d1 = tr * (2.0 * c.mu2.abs() * s + 2.0 * c.lam * s.powi(3) + c.c_lin.abs() + 3.0 * c.c_cub.abs() * s * s);
    let d2 = tr * (2.0 * c.mu2.abs() + 6.0 * c.lam * s * s + 6.0 * c.c_cub.abs() * s);
    (d1, d2)
}

fn fd_derivatives(pot: &SingletPotential, s: f64) -> (f64, f64) {
    let u = |x: f64| potential_value(pot, x).unwrap_or(f64::NAN);
    let h1 = 1e-5 * s;
    let d1 = (u(s + h1) - u(s - h1)) / (2.0 * h1);
    let h2 = 1e-4 * s;
    let d2 = (u(s + h2) - 2.0 * u(s) + u(s - h2)) / (h2 * h2);
    (d1, d2)
}

/// Runs the full invariant suite for one parameter set.
pub fn validate_model(params: &ModelParams, axial: AxialMode) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let tag = format!(
        "[nc={} lambda={} m={}]",
        params.n_c, params.lambda_cut, params.m_asym
    );

    for issue in validate_params(params) {
        match issue.severity {
            Severity::Violation => rep.record(format!("{tag} params"), false, issue.message),
            Severity::Info => rep.inform(format!("{tag} params"), true, issue.message),
        }
    }
    if params.check_basic().is_err() {
        return rep;
    }
    let derived = params.is_derived();

    // Running factors.
    let mut worst = 0.0f64;
    let mut ordered = true;
    for i in 0..=200 {
        let s = 1e-8 * 10f64.powf(i as f64 * (9.7 / 200.0));
        let x: Vec<f64> = (1..=3).map(|n| xi_factor(n, s).unwrap()).collect();
        ordered &= 0.0 < x[2] && x[2] < x[1] && x[1] < x[0] && x[0] <= 1.0;
        for (k, xi) in x.iter().enumerate() {
            let n = (k + 1) as f64;
            worst = worst.max(rel(n * s * xi, -(-n * s).exp_m1()));
        }
    }
    rep.record(
        "xi identity n*sigma*xi_n = 1 - exp(-n*sigma)",
        worst < 1e-14,
        format!("max relative error {worst:e}"),
    );
    rep.record("xi ordering 0 < xi3 < xi2 < xi1 <= 1", ordered, "");

    // Condensates.
    let (l, m) = (params.lambda_cut, params.m_asym);
    let target = condensates_forward(params.n_c, l, m);
    if m < l {
        match condensates_invert(params.n_c, &target, None) {
            Ok(inv) => {
                let err = rel(inv.lambda_cut, l).max((inv.m_asym - m).abs() / l);
                rep.record(
                    format!("{tag} condensate round trip"),
                    err < 1e-8,
                    format!("relative error {err:e}"),
                );
            }
            Err(e) => rep.record(format!("{tag} condensate round trip"), false, e.to_string()),
        }
    }
    let jac = forward_jacobian(params.n_c, l, m);
    let mut jac_err = 0.0f64;
    for col in 0..2 {
        let h = 1e-6 * l;
        let (dl, dm) = if col == 0 { (h, 0.0) } else { (0.0, h) };
        let p = condensates_forward(params.n_c, l + dl, m + dm);
        let q = condensates_forward(params.n_c, l - dl, m - dm);
        let fd = [(p.c_q - q.c_q) / (2.0 * h), (p.c_g - q.c_g) / (2.0 * h)];
        for row in 0..2 {
            let scale = jac[row][0].abs().max(jac[row][1].abs());
            jac_err = jac_err.max((fd[row] - jac[row][col]).abs() / scale);
        }
    }
    rep.record(
        format!("{tag} condensate jacobian vs finite differences"),
        jac_err < 1e-6,
        format!("relative error {jac_err:e}"),
    );

    // Points along σ.
    for &sigma in &STANDARD_SIGMAS {
        let name = |what: &str| format!("{tag} sigma={sigma} {what}");
        let report = match run_point(params, sigma, axial) {
            Ok(r) => r,
            Err(e) => {
                rep.record(name("solve"), false, e.to_string());
                continue;
            }
        };
        let phi0 = report.vacuum.phi0;
        let coeffs = match potential_coeffs(params, report.condensates.c_q, sigma) {
            Ok(c) => c,
            Err(e) => {
                rep.record(name("potential"), false, e.to_string());
                continue;
            }
        };
        let pot = SingletPotential::new(coeffs);

        let scale = phi0.max(l);
        rep.record(
            name("cubic residual"),
            report.vacuum.residual < 1e-10 * scale.powi(3),
            format!("{:e}", report.vacuum.residual),
        );
        rep.record(
            name("vacuum curvature > 0"),
            report.vacuum.curvature > 0.0,
            format!("{:e}", report.vacuum.curvature),
        );

        let mut d_err = 0.0f64;
        for s in [0.5 * l, l, 2.0 * l, phi0] {
            let (a1, a2) = potential_derivatives(&pot, s).unwrap();
            let (f1, f2) = fd_derivatives(&pot, s);
            let (s1, s2) = derivative_scales(&pot, s);
            d_err = d_err.max((a1 - f1).abs() / s1).max((a2 - f2).abs() / s2);
        }
        rep.record(
            name("potential derivatives vs finite differences"),
            d_err < 1e-6,
            format!("relative error {d_err:e}"),
        );

        let cubic = CubicCoefficients::from_potential(&coeffs).unwrap();
        let roots = solve_cubic(&cubic);
        match select_vacuum(&cubic, &roots, &pot) {
            Ok(sel) => {
                let s_max = 3.0 * l.max(sel.phi0);
                match vacuum_oracle_grid(&pot, s_max, ORACLE_POINTS) {
                    Ok(o) => rep.record(
                        name("cubic root vs grid minimiser"),
                        rel(sel.phi0, o) < 1e-8,
                        format!("{} vs {o}", sel.phi0),
                    ),
                    Err(e) => rep.record(name("grid oracle"), false, e.to_string()),
                }
                rep.record(
                    name("pipeline vacuum equals selected root"),
                    rel(sel.phi0, phi0) < 1e-10,
                    format!("{} vs {phi0}", sel.phi0),
                );
            }
            Err(e) => rep.record(name("select vacuum"), false, e.to_string()),
        }

        let hr = report.spectrum.hessian_residual.unwrap_or(f64::NAN);
        let detail = format!("relative gap {hr:e}");
        if derived {
            rep.record(name("scalar mass vs curvature"), hr < HESSIAN_TOL, detail);
        } else {
            rep.inform(name("scalar mass vs curvature"), hr < HESSIAN_TOL, detail);
        }

        match axial_quadratic_check(params, sigma, phi0) {
            Ok(r) if derived => rep.record(name("axial quadratic form"), r < 1e-10, format!("{r:e}")),
            Ok(r) => rep.inform(name("axial quadratic form"), r < 1e-10, format!("{r:e}")),
            Err(e) => rep.record(name("axial quadratic form"), false, e.to_string()),
        }

        let lam = quartic_coupling(params.n_c, sigma);
        let dv = vector_coupling_shift(params, sigma).unwrap();
        let m2 = report.spectrum.m_phi.powi(2);
        rep.record(
            name("delta_A = delta_V = lambda/3"),
            rel(dv, lam / 3.0) < 1e-15 && rel(report.spectrum.delta_ma2 / m2, lam / 3.0) < 1e-15,
            format!("delta_V={dv}, lambda/3={}", lam / 3.0),
        );
        rep.record(
            name("kinetic constant positive"),
            report.spectrum.z_phi > 0.0,
            format!("{}", report.spectrum.z_phi),
        );

        if m == 0.0 {
            let cf = vacuum_closed_form_m0(params, sigma).unwrap();
            rep.record(
                name("M=0 closed form"),
                rel(cf, roots.iter().copied().fold(f64::MIN, f64::max)) < 1e-12,
                format!("{cf}"),
            );
            rep.record(
                name("m_phi = 2 m_psi"),
                rel(report.spectrum.m_phi, 2.0 * report.spectrum.m_psi) < 1e-12,
                "",
            );
        }
    }

    // Compositeness-scale limit.
    if derived {
        match (
            run_point(params, 0.0, axial),
            run_point(params, 1e-6, axial),
            vacuum_closed_form_sigma0(params),
        ) {
            (Ok(at0), Ok(near0), Ok(cf)) => {
                rep.record(
                    format!("{tag} sigma=0 closed form"),
                    rel(at0.vacuum.phi0, cf) < 1e-12 && at0.spectrum.z_phi == 0.0,
                    format!("{} vs {cf}", at0.vacuum.phi0),
                );
                rep.record(
                    format!("{tag} sigma->0 convergence"),
                    rel(near0.vacuum.phi0, cf) < 1e-6
                        && rel(near0.spectrum.m_phi.powi(2), 12.0 * l * l) < 1e-6,
                    format!("phi0={} m_phi^2={}", near0.vacuum.phi0, near0.spectrum.m_phi.powi(2)),
                );
                rep.record(
                    format!("{tag} delta_mA2 vanishes at sigma=0"),
                    at0.spectrum.delta_ma2 == 0.0,
                    "",
                );
            }
            (a, b, c) => rep.record(
                format!("{tag} sigma=0 limit"),
                false,
                format!("{:?} {:?} {:?}", a.err(), b.err(), c.err()),
            ),
        }
        if let Ok(z) = kinetic_constant(params, 0.0, 1.0) {
            rep.record(format!("{tag} Z_phi(0) = 0"), z == 0.0, "");
        }
    }

    // Running claim: a finding, not a failure.
    match run_scan(params, &GridSpec::linear(0.0, 2.0, 21), axial) {
        Ok(t) => {
            let d = &t.diagnostics;
            rep.inform(
                format!("{tag} m_phi strictly decreasing on [0, 2]"),
                d.m_phi_strictly_decreasing,
                format!("violations: {:?}", d.monotonic_violations),
            );
            rep.record(
                format!("{tag} vacuum branch continuity on [0, 2]"),
                d.branch_switches.is_empty() && d.failed_points == 0,
                format!(
                    "switches at {:?}, {} failed points",
                    d.branch_switches, d.failed_points
                ),
            );
        }
        Err(e) => rep.record(format!("{tag} scan"), false, e.to_string()),
    }

    rep
}

/// Runs [`validate_model`] over the standard parameter grid.
pub fn validate_standard_grid() -> ValidationReport {
    let mut rep = ValidationReport::default();
    for p in standard_params() {
        rep.merge(validate_model(&p, AxialMode::default()));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_model_passes() {
        let rep = validate_model(&ModelParams::derived(3, 1.0, 0.3), AxialMode::default());
        let failures: Vec<_> = rep.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn invalid_params_fail() {
        let rep = validate_model(&ModelParams::derived(3, 1.0, 1.5), AxialMode::default());
        assert!(!rep.passed());
    }

    #[test]
    fn override_mismatch_is_informational() {
        let exact = crate::params::derive_fpi(3, 1.0, 0.3).unwrap();
        let rep = validate_model(
            &ModelParams::with_fpi(3, 1.0, 0.3, exact * 1.01),
            AxialMode::default(),
        );
        assert!(rep
            .checks
            .iter()
            .any(|c| c.informational && c.name.contains("scalar mass vs curvature") && !c.passed));
        let failures: Vec<_> = rep.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
