//! Kummer `M`, Tricomi `U`, and the Whittaker functions built from them.

use num_complex::Complex64;

use super::bessel::bessel_k;
use super::gamma::{gamma_c, pochhammer, rgamma};
use super::quad::{integrate, QuadratureControl};
use super::{c, is_finite, Evaluated, SeriesControl};
use crate::{Error, Result};

/// Kummer's confluent hypergeometric function `M(μ, ν; z) = Σ (μ)_n/(ν)_n zⁿ/n!`.
///
/// The series is summed until a term falls below `rel_tol` relative to the
/// partial sum *and* the term ratio has dropped below one, so a transient
/// dip before the terms peak (large `|z|`) does not stop it early.
pub fn kummer_m(mu: Complex64, nu: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    ctl.validate()?;
    if nu.im == 0.0 && nu.re <= 0.0 && nu.re.fract() == 0.0 {
        return Err(Error::Domain(format!(
            "kummer_m: ν = {} is a non-positive integer",
            nu.re
        )));
    }
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        let ratio = (mu + nf) / ((nu + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == c(0.0, 0.0) {
            return Ok(sum);
        }
        if term.norm() <= ctl.rel_tol * sum.norm() && ratio.norm() < 1.0 {
            return Ok(sum);
        }
    }
    Err(Error::convergence(
        "kummer_m",
        format!("no convergence within {} terms at z = {z}", ctl.max_terms),
    ))
}

const NEAR_INTEGER: f64 = 1e-6;

fn near_integer(z: Complex64) -> bool {
    (z - z.re.round()).norm() < NEAR_INTEGER
}

/// Tricomi's `U` from the two-term Kummer combination
/// `Γ(1-ν)/Γ(μ-ν+1) M(μ,ν;z) + Γ(ν-1)/Γ(μ) z^{1-ν} M(1+μ-ν, 2-ν; z)`.
///
/// When `ν` is within 1e-6 of an integer the combination is evaluated at
/// `ν(1 ± ε)`, `ε = 1e-6`, and averaged; the result is flagged `perturbed`.
/// Ill-conditioned for large `|z|` (the two terms grow like `e^z`).
pub fn tricomi_u_kummer(mu: Complex64, nu: Complex64, z: Complex64) -> Result<Evaluated> {
    if z == c(0.0, 0.0) {
        return Err(Error::Domain("tricomi_u: z = 0".into()));
    }
    if near_integer(nu) {
        let eps = 1e-6;
        let shift = if nu.norm() > 0.5 { nu * eps } else { c(eps, 0.0) };
        let up = kummer_combination(mu, nu + shift, z)?;
        let down = kummer_combination(mu, nu - shift, z)?;
        return Ok(Evaluated {
            value: 0.5 * (up + down),
            perturbed: true,
        });
    }
    Ok(Evaluated::exact(kummer_combination(mu, nu, z)?))
}

fn kummer_combination(mu: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    let ctl = SeriesControl {
        rel_tol: 1e-16,
        ..SeriesControl::default()
    };
    let first = gamma_c(1.0 - nu)? * rgamma(mu - nu + 1.0) * kummer_m(mu, nu, z, &ctl)?;
    let second =
        gamma_c(nu - 1.0)? * rgamma(mu) * (z.ln() * (1.0 - nu)).exp() * kummer_m(1.0 + mu - nu, 2.0 - nu, z, &ctl)?;
    let value = first + second;
    if !is_finite(value) {
        return Err(Error::Degenerate(format!(
            "tricomi_u: Gamma prefactors degenerate at μ = {mu}, ν = {nu}"
        )));
    }
    Ok(value)
}

/// `Γ(a) U(a,b,z) = ∫₀^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt`, needs `Re a ≥ 1`
/// here (smooth integrand) and `Re z > 0`. Integrated in `σ = ln t`.
fn u_laplace(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    let log_integrand = |s: f64| -> Complex64 { -z * s.exp() + a * s + (b - a - 1.0) * (1.0 + s.exp()).ln() };
    // Locate the bulk on a coarse scan, then cut where the modulus has
    // dropped 45 e-folds below the peak.
    let step = 0.25;
    let lo_scan = -80.0;
    let hi_scan = (80.0 / z.re).ln() + 2.0;
    let n = ((hi_scan - lo_scan) / step).ceil() as usize + 1;
    let mut peak = f64::NEG_INFINITY;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let s = lo_scan + step * i as f64;
        let m = log_integrand(s).re;
        peak = peak.max(m);
        samples.push((s, m));
    }
    let keep = |m: f64| m > peak - 45.0;
    let first = samples.iter().position(|&(_, m)| keep(m)).unwrap_or(0);
    let last = samples.iter().rposition(|&(_, m)| keep(m)).unwrap_or(n - 1);
    let lo = samples[first.saturating_sub(1)].0;
    let hi = samples[(last + 1).min(n - 1)].0;
    let ctl = QuadratureControl {
        abs_tol: 1e-300,
        rel_tol: 1e-14,
        max_subdivisions: 4000,
    };
    let r = integrate(|s| Ok(log_integrand(s).exp()), lo, hi, &ctl)?;
    Ok(r.value * rgamma(a))
}

fn tricomi_u_laplace(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if a.re >= 1.0 {
        return u_laplace(a, b, z);
    }
    // Climb to Re a ∈ [1, 2) and come back down with
    // U(a-1) = (2a + z - b) U(a) - a(a - b + 1) U(a+1),
    // which is the stable direction for U.
    let steps = (1.0 - a.re).ceil() as usize;
    let top = a + steps as f64;
    let mut upper = u_laplace(top + 1.0, b, z)?;
    let mut current = u_laplace(top, b, z)?;
    let mut j = top;
    for _ in 0..steps {
        let lower = (2.0 * j + z - b) * current - j * (j - b + 1.0) * upper;
        upper = current;
        current = lower;
        j -= 1.0;
    }
    Ok(current)
}

/// Tricomi's confluent hypergeometric function `U(μ, ν; z)`.
///
/// For `Re z > 0` with `|z| ≥ 1` and `|arg z| < π/3` the Laplace-integral
/// representation (after raising `Re μ` by the three-term recurrence) is
/// used; it has no trouble at integer `ν` or large `|z|`. Elsewhere the
/// two-term Kummer combination [`tricomi_u_kummer`] is used.
pub fn tricomi_u(mu: Complex64, nu: Complex64, z: Complex64) -> Result<Evaluated> {
    if z == c(0.0, 0.0) {
        return Err(Error::Domain("tricomi_u: z = 0".into()));
    }
    let laplace_ok = z.re > 0.0 && z.norm() >= 1.0 && z.im.abs() < 3f64.sqrt() * z.re;
    if laplace_ok {
        return Ok(Evaluated::exact(tricomi_u_laplace(mu, nu, z)?));
    }
    tricomi_u_kummer(mu, nu, z)
}

fn whittaker_prefactor(m: Complex64, z: Complex64) -> Complex64 {
    ((m + 0.5) * z.ln() - 0.5 * z).exp()
}

/// Whittaker `M_{l,m}(z) = z^{m+1/2} e^{-z/2} M(1/2+m-l, 1+2m; z)`.
pub fn whittaker_m(l: Complex64, m: Complex64, z: Complex64) -> Result<Complex64> {
    if z == c(0.0, 0.0) {
        return Err(Error::Domain("whittaker_m: z = 0".into()));
    }
    let nu = 1.0 + 2.0 * m;
    if nu.im == 0.0 && nu.re <= 0.0 && nu.re.fract() == 0.0 {
        return Err(Error::Domain(format!(
            "whittaker_m: 1+2m = {} is a non-positive integer",
            nu.re
        )));
    }
    let ctl = SeriesControl {
        rel_tol: 1e-16,
        ..SeriesControl::default()
    };
    Ok(whittaker_prefactor(m, z) * kummer_m(0.5 + m - l, nu, z, &ctl)?)
}

/// Whittaker `W_{l,m}(z) = z^{m+1/2} e^{-z/2} U(1/2+m-l, 1+2m; z)`.
pub fn whittaker_w(l: Complex64, m: Complex64, z: Complex64) -> Result<Complex64> {
    Ok(whittaker_prefactor(m, z) * tricomi_u(0.5 + m - l, 1.0 + 2.0 * m, z)?.value)
}

/// `W_{n/2, μ}(y)` for integer `n ≥ 0` as a finite sum of Bessel `K`:
///
/// `y^{(n+1)/2}/√π ((1-n)/2+μ)_n Σ_k (-1)^{n+k}(2k-n+2μ) r_k / (k-n+2μ)_{n+1} K_{n/2-k-μ}(y/2)`
///
/// with `r_k = (-n)_{n-k}/(n-k)!`. Needs `y > 0`.
pub fn whittaker_w_bessel(n: u32, mu: Complex64, y: f64, ctl: &QuadratureControl) -> Result<Complex64> {
    if !(y > 0.0) {
        return Err(Error::Domain("whittaker_w_bessel: y must be positive".into()));
    }
    let nf = n as f64;
    let mut sum = c(0.0, 0.0);
    let mut fact = 1.0; // (n-k)!
    for k in (0..=n).rev() {
        if k < n {
            fact *= (n - k) as f64;
        }
        let kf = k as f64;
        let r = pochhammer(c(-nf, 0.0), n - k) / fact;
        let sign = if (n + k) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = pochhammer(kf - nf + 2.0 * mu, n + 1);
        if denom == c(0.0, 0.0) {
            return Err(Error::Degenerate(format!(
                "whittaker_w_bessel: (k-n+2μ)_(n+1) = 0 at k = {k}"
            )));
        }
        let order = c(nf / 2.0 - kf, 0.0) - mu;
        sum += sign * (2.0 * kf - nf + 2.0 * mu) * r / denom * bessel_k(order, c(y / 2.0, 0.0), ctl)?;
    }
    let pre = y.powf((nf + 1.0) / 2.0) / std::f64::consts::PI.sqrt() * pochhammer(c((1.0 - nf) / 2.0, 0.0) + mu, n);
    Ok(pre * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn kummer_closed_forms() {
        let ctl = SeriesControl::default();
        assert_eq!(
            kummer_m(c(0.3, 1.0), c(2.5, -1.0), c(0.0, 0.0), &ctl).unwrap(),
            c(1.0, 0.0)
        );
        let v = kummer_m(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), &ctl).unwrap();
        let exact = (2f64.exp() - 1.0) / 2.0;
        assert!((v.re - exact).abs() < 1e-12 * exact && v.im == 0.0);
        assert!(kummer_m(c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0), &ctl).is_err());
    }

    #[test]
    fn kummer_budget_exhaustion_is_reported() {
        let ctl = SeriesControl {
            rel_tol: 1e-12,
            max_terms: 5,
        };
        let err = kummer_m(c(1.0, 0.0), c(1.5, 0.0), c(40.0, 0.0), &ctl).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn tricomi_closed_form_and_paths_agree() {
        for z in [0.4, 1.0, 2.5, 7.0, 30.0] {
            let u = tricomi_u(c(1.0, 0.0), c(2.0, 0.0), c(z, 0.0)).unwrap();
            assert!(rel(u.value, c(1.0 / z, 0.0)) < 1e-8, "z={z}: {}", u.value);
        }
        // Non-integer ν, moderate z: both routes are well conditioned.
        let (mu, nu) = (c(-1.25, 0.8), c(1.0, 1.6));
        for z in [1.0, 2.0, 4.0] {
            let a = tricomi_u_kummer(mu, nu, c(z, 0.0)).unwrap().value;
            let b = tricomi_u(mu, nu, c(z, 0.0)).unwrap().value;
            assert!(rel(a, b) < 1e-11, "z={z}: {a} vs {b}");
        }
    }

    #[test]
    fn near_integer_nu_is_flagged() {
        let u = tricomi_u_kummer(c(0.7, 0.0), c(3.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!(u.perturbed);
        let u = tricomi_u_kummer(c(0.7, 0.0), c(3.2, 0.0), c(0.5, 0.0)).unwrap();
        assert!(!u.perturbed);
    }
}
