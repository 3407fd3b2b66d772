//! Quark and gluon condensates as functions of (Λ, M), and the inverse map.
//!
//! Sign convention: the relations are implemented literally, so `c_g < 0`
//! whenever `M` is small compared with `Λ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quark condensate (GeV³) and gluon condensate (GeV⁴).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Condensates {
    pub c_q: f64,
    pub c_g: f64,
}

/// Rows are `(c_q, c_g)`, columns `(∂/∂Λ, ∂/∂M)`.
pub type Jacobian = [[f64; 2]; 2];

fn prefactor(n_c: u32) -> f64 {
    f64::from(n_c) / (2.0 * PI * PI)
}

pub fn condensates_forward(n_c: u32, lambda_cut: f64, m_asym: f64) -> Condensates {
    let k = prefactor(n_c);
    let (l, m) = (lambda_cut, m_asym);
    let (l2, m2) = (l * l, m * m);
    Condensates {
        // `+ 0.0` turns the M = 0 result into +0 rather than -0.
        c_q: -k * (l2 * m - m2 * m / 3.0) + 0.0,
        c_g: 3.0 * k * (6.0 * l2 * m2 - l2 * l2 - m2 * m2),
    }
}

pub fn forward_jacobian(n_c: u32, lambda_cut: f64, m_asym: f64) -> Jacobian {
    let k = prefactor(n_c);
    let (l, m) = (lambda_cut, m_asym);
    [
        [-2.0 * k * l * m, -k * (l * l - m * m)],
        [
            3.0 * k * (12.0 * l * m * m - 4.0 * l * l * l),
            3.0 * k * (12.0 * l * l * m - 4.0 * m * m * m),
        ],
    ]
}

/// Result of inverting the condensate relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    pub lambda_cut: f64,
    pub m_asym: f64,
    /// Relative residual of the forward map at the solution.
    pub residual: f64,
    pub iterations: usize,
}

pub const MAX_ITERATIONS: usize = 200;
pub const MAX_HALVINGS: usize = 30;
/// Accepted relative residual.
pub const RESIDUAL_TOL: f64 = 1e-10;
const TARGET_TOL: f64 = 1e-15;

/// Per-component normalisation of the residual: natural sizes `kE³` and
/// `3kE⁴` for an energy scale `E` read off the target.
#[derive(Debug, Clone, Copy)]
struct Scale {
    q: f64,
    g: f64,
    energy: f64,
}

impl Scale {
    fn of(n_c: u32, target: &Condensates) -> Self {
        let k = prefactor(n_c);
        let e_q = (3.0 * target.c_q.abs() / k).cbrt();
        let e_g = (target.c_g.abs() / (3.0 * k)).powf(0.25);
        let energy = e_q.max(e_g);
        Scale {
            q: k * energy.powi(3),
            g: 3.0 * k * energy.powi(4),
            energy,
        }
    }
}

fn scaled_residual(n_c: u32, target: &Condensates, scale: &Scale, l: f64, m: f64) -> [f64; 2] {
    let c = condensates_forward(n_c, l, m);
    [(c.c_q - target.c_q) / scale.q, (c.c_g - target.c_g) / scale.g]
}

fn norm(r: [f64; 2]) -> f64 {
    r[0].hypot(r[1])
}

fn on_branch(l: f64, m: f64) -> bool {
    l > 0.0 && m >= 0.0 && m < l
}

enum Outcome {
    Converged(Inversion),
    Stalled { best_residual: f64 },
}

fn newton(n_c: u32, target: &Condensates, scale: &Scale, start: (f64, f64)) -> Outcome {
    let (mut l, mut m) = start;
    let mut r = scaled_residual(n_c, target, scale, l, m);
    let mut res = norm(r);
    for it in 0..MAX_ITERATIONS {
        if res < TARGET_TOL {
            return Outcome::Converged(Inversion {
                lambda_cut: l,
                m_asym: m,
                residual: res,
                iterations: it,
            });
        }
        let j = forward_jacobian(n_c, l, m);
        let (a, b) = (j[0][0] / scale.q, j[0][1] / scale.q);
        let (c, d) = (j[1][0] / scale.g, j[1][1] / scale.g);
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dl = -(d * r[0] - b * r[1]) / det;
        let dm = -(-c * r[0] + a * r[1]) / det;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let (nl, nm) = (l + t * dl, m + t * dm);
            if nl > 0.0 {
                let nr = scaled_residual(n_c, target, scale, nl, nm);
                let nres = norm(nr);
                if nres < res {
                    l = nl;
                    m = nm;
                    r = nr;
                    res = nres;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if res < RESIDUAL_TOL {
        Outcome::Converged(Inversion {
            lambda_cut: l,
            m_asym: m,
            residual: res,
            iterations: MAX_ITERATIONS,
        })
    } else {
        Outcome::Stalled { best_residual: res }
    }
}

/// Finds `(Λ, M)` on the branch `Λ > M ≥ 0` reproducing `target`.
///
/// Runs damped Newton from `guess` when given; otherwise (or if that start
/// fails) runs a multi-start search and keeps the lowest-residual converged
/// start, ties going to the earlier grid point.
pub fn condensates_invert(
    n_c: u32,
    target: &Condensates,
    guess: Option<(f64, f64)>,
) -> Result<Inversion> {
    if n_c == 0 {
        return Err(Error::Domain("n_c must be positive".into()));
    }
    if !(target.c_q.is_finite() && target.c_g.is_finite()) {
        return Err(Error::Domain("condensates must be finite".into()));
    }
    if target.c_q > 0.0 {
        return Err(Error::NoSolution(
            "c_q > 0 lies outside the image of the branch lambda_cut > m_asym >= 0".into(),
        ));
    }
    if target.c_q == 0.0 {
        // c_q vanishes on the branch only at M = 0, where c_g = -3 N_c Λ⁴ / 2π².
        if target.c_g >= 0.0 {
            return Err(Error::NoSolution(
                "c_q = 0 requires m_asym = 0, which needs c_g < 0".into(),
            ));
        }
        let lambda_cut = (-target.c_g / (3.0 * prefactor(n_c))).powf(0.25);
        let scale = Scale::of(n_c, target);
        let residual = norm(scaled_residual(n_c, target, &scale, lambda_cut, 0.0));
        return Ok(Inversion {
            lambda_cut,
            m_asym: 0.0,
            residual,
            iterations: 0,
        });
    }

    let scale = Scale::of(n_c, target);
    let mut best_failed = f64::INFINITY;
    let mut off_branch = false;

    let mut try_start = |start: (f64, f64)| -> Option<Inversion> {
        match newton(n_c, target, &scale, start) {
            Outcome::Converged(sol) if on_branch(sol.lambda_cut, sol.m_asym) => Some(sol),
            Outcome::Converged(sol) => {
                off_branch = true;
                best_failed = best_failed.min(sol.residual);
                None
            }
            Outcome::Stalled { best_residual } => {
                best_failed = best_failed.min(best_residual);
                None
            }
        }
    };

    if let Some(g) = guess {
        if let Some(sol) = try_start(g) {
            return Ok(sol);
        }
    }

    let mut best: Option<Inversion> = None;
    for i in 0..9 {
        let l = scale.energy * 4f64.powf((i as f64 - 4.0) / 4.0);
        for j in 0..10 {
            let m = 0.1 * j as f64 * l;
            if let Some(sol) = try_start((l, m)) {
                if best.is_none_or(|b| sol.residual < b.residual) {
                    best = Some(sol);
                }
            }
        }
    }

    match best {
        Some(sol) => Ok(sol),
        None if off_branch => Err(Error::NoSolution(
            "only solutions outside lambda_cut > m_asym >= 0 were found".into(),
        )),
        None => Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            best_residual: best_failed,
        }),
    }
}
