//! ⋆-eigenvalue checks in momentum-translation form, expectation values and
//! time-dependent superpositions of stationary Wigner functions.
//!
//! For the Morse potential the left equation `H ⋆ ρ = E_L ρ` reads
//!
//! ```text
//! (ħ²/8m) ∂ₓ²ρ + (iħp/2m) ∂ₓρ = (ħ²κ²/2m) e^{-2αx} ρ(x, p - iħα)
//!                              - (βħ²κ²/2m) e^{-αx} ρ(x, p - iħα/2)
//!                              + ((p² - ħ²k_L²)/2m) ρ
//! ```
//!
//! and the right one flips the sign of the `∂ₓρ` term and of the imaginary
//! shifts and uses `k_R`. The shifted values come from the contour
//! representation continued to complex `p`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::mellin::{trapezoid_weights, ContourSpec, FieldSource, WignerField, WignerProblem};
use crate::model::energy_of;
use crate::{Error, Result, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Knobs for negative controls and invariance tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarOptions {
    /// Added to the wavenumber of the tested side in the equation only.
    pub k_shift: f64,
    /// Global factor applied to `ρ` in every term.
    pub scale: f64,
    /// Replace `ρ` by `ρ·(1 + ε cos αx)`, which is not a solution.
    pub perturb: f64,
}

impl Default for StarOptions {
    fn default() -> Self {
        StarOptions {
            k_shift: 0.0,
            scale: 1.0,
            perturb: 0.0,
        }
    }
}

/// Residuals of both equations at one phase point. The complex residual is
/// `(LHS - RHS)` divided by the largest magnitude among the five terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarPoint {
    pub x: f64,
    pub p: f64,
    pub left: Complex64,
    pub right: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarResidualReport {
    pub side: Side,
    pub grid: Vec<(f64, f64)>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

struct Local {
    rho: Complex64,
    d1: Complex64,
    d2: Complex64,
}

fn local_values(problem: &WignerProblem, x: f64, p: f64, spec: &ContourSpec, opts: &StarOptions) -> Result<Local> {
    let pc = Complex64::new(p, 0.0);
    let rho = problem.point(x, pc, spec)?.value;
    let d1 = problem.x_derivative(x, pc, 1, spec)?.value;
    let d2 = problem.x_derivative(x, pc, 2, spec)?.value;
    let (rho, d1, d2) = perturbed(rho, d1, d2, x, problem.sys.alpha, opts.perturb);
    Ok(Local {
        rho: opts.scale * rho,
        d1: opts.scale * d1,
        d2: opts.scale * d2,
    })
}

/// `f = ρ g`, `g = 1 + ε cos αx`, with its first two `x` derivatives.
fn perturbed(
    rho: Complex64,
    d1: Complex64,
    d2: Complex64,
    x: f64,
    alpha: f64,
    eps: f64,
) -> (Complex64, Complex64, Complex64) {
    if eps == 0.0 {
        return (rho, d1, d2);
    }
    let g = 1.0 + eps * (alpha * x).cos();
    let g1 = -eps * alpha * (alpha * x).sin();
    let g2 = -eps * alpha * alpha * (alpha * x).cos();
    (rho * g, d1 * g + rho * g1, d2 * g + 2.0 * d1 * g1 + rho * g2)
}

fn side_residual(
    problem: &WignerProblem,
    local: &Local,
    x: f64,
    p: f64,
    side: Side,
    spec: &ContourSpec,
    opts: &StarOptions,
) -> Result<Complex64> {
    let sys = &problem.sys;
    let (hbar, m, a) = (sys.hbar, sys.mass, sys.alpha);
    let (sign, label) = match side {
        Side::Left => (1.0, &problem.left),
        Side::Right => (-1.0, &problem.right),
    };
    let k = label.wavenumber(sys) + opts.k_shift;
    let shifted = |frac: f64| -> Result<Complex64> {
        let pc = Complex64::new(p, -sign * hbar * a * frac);
        let raw = problem.point(x, pc, spec)?.value;
        let g = 1.0 + opts.perturb * (a * x).cos();
        Ok(opts.scale * raw * g)
    };
    let c = hbar * hbar * sys.kappa * sys.kappa / (2.0 * m);
    let t1 = hbar * hbar / (8.0 * m) * local.d2;
    let t2 = sign * I * hbar * p / (2.0 * m) * local.d1;
    let t3 = c * (-2.0 * a * x).exp() * shifted(1.0)?;
    let t4 = -sys.beta
        * c
        * (-a * x).exp()
        * if sys.beta != 0.0 {
            shifted(0.5)?
        } else {
            Complex64::new(0.0, 0.0)
        };
    let t5 = (p * p - hbar * hbar * k * k) / (2.0 * m) * local.rho;
    let scale = [t1, t2, t3, t4, t5].iter().map(|t| t.norm()).fold(0.0, f64::max);
    let r = t1 + t2 - t3 - t4 - t5;
    Ok(if scale > 0.0 { r / scale } else { r })
}

/// Both ⋆-eigenvalue residuals of the closed-form `ρ` at `(x, p)`.
pub fn star_residual(
    problem: &WignerProblem,
    x: f64,
    p: f64,
    spec: &ContourSpec,
    opts: &StarOptions,
) -> Result<StarPoint> {
    let local = local_values(problem, x, p, spec, opts)?;
    Ok(StarPoint {
        x,
        p,
        left: side_residual(problem, &local, x, p, Side::Left, spec, opts)?,
        right: side_residual(problem, &local, x, p, Side::Right, spec, opts)?,
    })
}

/// Star residuals over a grid for a field of the given source. Only
/// closed-form fields can be continued to complex momenta.
pub fn star_residual_grid(
    problem: &WignerProblem,
    source: FieldSource,
    xs: &[f64],
    ps: &[f64],
    spec: &ContourSpec,
    opts: &StarOptions,
    exec: Execution,
) -> Result<(StarResidualReport, StarResidualReport)> {
    if source != FieldSource::Closed {
        return Err(Error::UnsupportedSource(format!(
            "{source:?} fields are sampled data and cannot be evaluated at complex momentum"
        )));
    }
    let grid: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ps.iter().map(move |&p| (x, p))).collect();
    let points = exec
        .map(&grid, |&(x, p)| star_residual(problem, x, p, spec, opts))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let report = |side: Side| {
        let residuals: Vec<f64> = points
            .iter()
            .map(|pt| match side {
                Side::Left => pt.left.norm(),
                Side::Right => pt.right.norm(),
            })
            .collect();
        StarResidualReport {
            side,
            grid: grid.clone(),
            max_residual: residuals.iter().copied().fold(0.0, f64::max),
            residuals,
        }
    };
    Ok((report(Side::Left), report(Side::Right)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub value: f64,
    /// `|I_h - I_{2h}|` from the trapezoid rule on every other grid point
    /// (zero when a grid has fewer than three points).
    pub discretization: f64,
    /// Trapezoid integral of `|ρQ|` along the outermost grid lines, a
    /// proxy for the mass cut off by the finite grid.
    pub edge_mass: f64,
}

/// `∫∫ ρ Q dx dp` by the trapezoid rule. The field must have been
/// normalized (see [`WignerField::normalize`]).
pub fn expectation<Q: Fn(f64, f64) -> f64>(field: &WignerField, q: Q) -> Result<Expectation> {
    if field.normalization.is_none() {
        return Err(Error::NormalizationRequired);
    }
    let value = field.trapezoid(|x, p, r| r * q(x, p)).re;
    let coarse = |g: &[f64]| -> Vec<usize> { (0..g.len()).step_by(2).collect() };
    let (cx, cp) = (coarse(&field.x), coarse(&field.p));
    let discretization = if cx.len() >= 2 && cp.len() >= 2 && field.x.len() % 2 == 1 && field.p.len() % 2 == 1 {
        let gx: Vec<f64> = cx.iter().map(|&i| field.x[i]).collect();
        let gp: Vec<f64> = cp.iter().map(|&i| field.p[i]).collect();
        let (wx, wp) = (trapezoid_weights(&gx), trapezoid_weights(&gp));
        let mut s = 0.0;
        for (a, &ix) in cx.iter().enumerate() {
            for (b, &ip) in cp.iter().enumerate() {
                s += wx[a] * wp[b] * field.at(ix, ip).re * q(field.x[ix], field.p[ip]);
            }
        }
        (s - value).abs()
    } else {
        0.0
    };
    let (nx, np) = (field.x.len(), field.p.len());
    let (wx, wp) = (trapezoid_weights(&field.x), trapezoid_weights(&field.p));
    let mut edge_mass = 0.0;
    for (ix, (&x, &wxi)) in field.x.iter().zip(&wx).enumerate() {
        let x_edge = ix == 0 || ix == nx - 1;
        for (ip, (&p, &wpi)) in field.p.iter().zip(&wp).enumerate() {
            if x_edge || ip == 0 || ip == np - 1 {
                let w = if x_edge { wpi } else { wxi };
                edge_mass += w * (field.at(ix, ip) * q(x, p)).norm();
            }
        }
    }
    Ok(Expectation {
        value,
        discretization,
        edge_mass,
    })
}

/// `Σ C_{LR} e^{-i(E_L - E_R)t/ħ} ρ_{LR}` over fields sharing one grid.
/// The result carries the first term's labels.
pub fn compose_stationary(terms: &[(Complex64, &WignerField)], t: f64) -> Result<WignerField> {
    let (_, first) = terms
        .first()
        .ok_or_else(|| Error::InvalidParameter("compose_stationary needs at least one term".into()))?;
    let mut out = (*first).clone();
    out.values.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
    out.errors.iter_mut().for_each(|e| *e = 0.0);
    for (coef, field) in terms {
        if field.x != first.x || field.p != first.p {
            return Err(Error::GridMismatch("superposed fields must share x and p grids".into()));
        }
        if field.system != first.system {
            return Err(Error::GridMismatch(
                "superposed fields must share the Morse system".into(),
            ));
        }
        let el = energy_of(&field.left, &field.system)?;
        let er = energy_of(&field.right, &field.system)?;
        let phase = (-I * (el - er) * t / field.system.hbar).exp();
        for (i, v) in field.values.iter().enumerate() {
            out.values[i] += coef * phase * v;
            out.errors[i] += (coef * phase).norm() * field.errors[i];
            if let Some(f) = &field.failures[i] {
                out.failures[i] = Some(f.clone());
            }
        }
    }
    out.convention = format!("superposition of {} stationary terms at t = {t}", terms.len());
    Ok(out)
}
