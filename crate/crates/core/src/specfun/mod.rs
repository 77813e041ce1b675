//! Complex special-function kernel.
//!
//! Everything the closed-form factor solutions and the wave-function oracle
//! are assembled from. No arbitrary precision: all routines work in `f64` and
//! target 12+ significant digits away from their stated trouble spots.

mod bessel;
mod confluent;
mod gamma;
mod gauss;
mod laguerre;
pub mod quad;

pub use bessel::{bessel_k, bessel_k_contour};
pub use confluent::{kummer_m, tricomi_u, tricomi_u_kummer, whittaker_m, whittaker_w, whittaker_w_bessel};
pub use gamma::{gamma_c, ln_gamma_c, pochhammer, pole_distance, rgamma, LANCZOS_G};
pub use gauss::{gauss_2f1, gauss_2f1_on_side, CutSide};
pub use laguerre::{binomial, laguerre_assoc};
pub use quad::QuadratureControl;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Truncation control for power series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-12,
            max_terms: 10_000,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 {
            return Err(crate::Error::InvalidParameter(format!(
                "series control needs rel_tol > 0 and max_terms >= 1, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// A special-function value that may have been obtained through the
/// ε-perturbation fallback at a degenerate parameter point. `perturbed`
/// values carry a relaxed accuracy target of about 1e-8.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated {
    pub value: Complex64,
    pub perturbed: bool,
}

impl Evaluated {
    pub(crate) fn exact(value: Complex64) -> Self {
        Evaluated {
            value,
            perturbed: false,
        }
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
