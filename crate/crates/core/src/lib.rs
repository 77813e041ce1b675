//! Stationary Wigner functions for the Morse potential
//! `V(x) = (ħ²κ²/2m)(e^{-2αx} - β e^{-αx})` and its Liouville limit `β = 0`.
//!
//! The phase-space functions `ρ_{E_L E_R}(x, p)` are built as inverse Mellin
//! transforms of products of closed-form "factor" solutions of a difference
//! equation ([`factors`], [`mellin`]). Two independent routes check them: the
//! ⋆-eigenvalue equations in momentum-translation form ([`starverify`]) and a
//! brute-force Wigner transform of the Schrödinger wave functions
//! ([`schrodinger`]).

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::too_many_arguments,
    clippy::excessive_precision
)]

pub mod error;
pub mod exec;
pub mod factors;
pub mod io;
pub mod mellin;
pub mod model;
pub mod schrodinger;
pub mod specfun;
pub mod starverify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Least-squares scalar `λ` minimizing `Σ |a_i - λ b_i|²`, together with the
/// calibrated discrepancy `max_i |a_i - λ b_i| / max_i |a_i|`.
///
/// Every "∝" comparison in the crate goes through this.
pub fn calibrate(a: &[Complex64], b: &[Complex64]) -> (Complex64, f64) {
    assert_eq!(a.len(), b.len(), "calibrate: length mismatch");
    let num: Complex64 = a.iter().zip(b).map(|(x, y)| y.conj() * x).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    let lambda = if den > 0.0 { num / den } else { Complex64::new(0.0, 0.0) };
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let worst = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - lambda * y).norm())
        .fold(0.0, f64::max);
    let rel = if scale > 0.0 { worst / scale } else { worst };
    (lambda, rel)
}

/// Variance-style spread of the ratios `a_i / b_i` relative to their mean:
/// `max_i |r_i - r̄| / |r̄|`. Zero for an exactly constant ratio.
pub fn ratio_spread(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "ratio_spread: length mismatch");
    let ratios: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x / y).collect();
    let mean: Complex64 = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm()
}
