//! Vacuum and mass spectrum of a composite scalar meson with a finite
//! compositeness scale.
//!
//! Starting from the quark and gluon condensates (or equivalently the
//! compositeness scale Λ and spectral asymmetry M), the crate builds the
//! induced effective potential at a running scale `μ = Λe^{−σ}`, solves the
//! cubic stationarity equation for the scalar condensate Φ₀ and derives
//! the scalar, quark and axial-vector masses. Every closed-form relation
//! has a numerical cross-check in [`validate`].
//!
//! ```
//! use induced_meson::{run_point, AxialMode, ModelParams};
//!
//! let params = ModelParams::derived(3, 1.0, 0.0);
//! let point = run_point(&params, 1.0, AxialMode::default()).unwrap();
//! assert!((point.spectrum.m_phi - 2.0 * point.vacuum.phi0).abs() < 1e-12);
//! ```

// Negated comparisons are used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod condensates;
pub mod error;
pub mod params;
pub mod pipeline;
pub mod potential;
pub mod report;
pub mod spectrum;
pub mod vacuum;
pub mod validate;

pub use condensates::{condensates_forward, condensates_invert, forward_jacobian, Condensates, Inversion};
pub use error::{Error, Result};
pub use params::{derive_fpi, running_scale, validate_params, xi_factor, FPi, ModelParams, RunningPoint, XiFactors};
pub use pipeline::{run_point, run_scan, GridSpec, PointReport, ScanRow, ScanTable, Spacing};
pub use potential::{
    kinetic_constant, potential_coeffs, potential_derivatives, potential_value, PotentialCoeffs, SingletPotential,
};
pub use report::{emit_report, Format};
pub use spectrum::{AxialMode, SpectrumReport};
pub use vacuum::{
    cubic_coefficients, select_vacuum, solve_cubic, vacuum_closed_form_m0, vacuum_closed_form_sigma0,
    vacuum_oracle_grid, CubicCoefficients, VacuumKind, VacuumSolution,
};
