//! Modified Bessel function of the second kind for complex order.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::c;
use super::gamma::ln_gamma_c;
use super::quad::{integrate, QuadratureControl};
use crate::{Error, Result};

/// `K_ν(z) = ½∫₀^∞ w^{-(ν+1)} e^{-z(w+1/w)/2} dw = ∫₀^∞ e^{-z cosh t} cosh(νt) dt`
/// (`w = e^t`), for `Re z > 0`.
///
/// The integrand is scaled by `e^{z}` during quadrature. The range is cut at
/// the first `T` (on a 0.25 grid) past the peak where
/// `Re z (cosh T - 1) - |Re ν| T` exceeds the peak exponent by
/// `-ln(abs_tol)` e-folds (at least 40), which bounds the discarded tail.
pub fn bessel_k(order: Complex64, z: Complex64, ctl: &QuadratureControl) -> Result<Complex64> {
    ctl.validate()?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("bessel_k needs Re z > 0, got {z}")));
    }
    let nu = order;
    let log_env = |t: f64| -z.re * (t.cosh() - 1.0) + nu.re.abs() * t;
    let efolds = (-ctl.abs_tol.ln()).clamp(40.0, 700.0);
    let mut peak = log_env(0.0);
    let mut t = 0.0;
    let step = 0.25;
    loop {
        t += step;
        let l = log_env(t);
        peak = peak.max(l);
        if l < peak - efolds {
            break;
        }
        if t > 750.0 {
            return Err(Error::convergence("bessel_k", "truncation point not found"));
        }
    }
    let upper = t;
    let scaled = |t: f64| -> Result<Complex64> {
        let e = (-z * (t.cosh() - 1.0)).exp();
        Ok(e * (nu * t).cosh())
    };
    let r = integrate(scaled, 0.0, upper, ctl)?;
    Ok(r.value * (-z).exp())
}

/// `K_ν(z) = (1/4πi) ∫_{c-i∞}^{c+i∞} Γ(s) Γ(s-ν) (z/2)^{ν-2s} ds`,
/// `c > max(0, Re ν)`, evaluated by adaptive quadrature along the line.
/// An independent route used to cross-check [`bessel_k`].
pub fn bessel_k_contour(order: Complex64, z: f64, offset: f64, ctl: &QuadratureControl) -> Result<Complex64> {
    if !(z > 0.0) {
        return Err(Error::Domain("bessel_k_contour needs z > 0".into()));
    }
    if offset <= 0.0 || offset <= order.re {
        return Err(Error::Contour(format!(
            "offset {offset} must exceed max(0, Re ν = {})",
            order.re
        )));
    }
    let lz = (z / 2.0).ln();
    let f = |y: f64| -> Result<Complex64> {
        let s = c(offset, y);
        let l = ln_gamma_c(s)? + ln_gamma_c(s - order)? + (order - 2.0 * s) * lz;
        Ok(l.exp())
    };
    // |Γ(s)Γ(s-ν)| decays like e^{-π|y|}; 40/π units covers 1e-17.
    let half = 40.0 / PI + order.im.abs();
    let r = integrate(f, -half, half, ctl)?;
    // ds = i dy, and 1/(4πi)·i = 1/(4π).
    Ok(r.value / (4.0 * PI))
}
