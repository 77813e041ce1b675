//! Schrödinger-side oracle: Morse wave functions, their brute-force Wigner
//! transform, the term-by-term Bessel-K series, and the bound-state
//! closed form.
//!
//! The Wigner transform convention throughout is
//! `ρ(x, p) = ∫ e^{-iyp} ψ_L(x + ħy/2) ψ_R*(x - ħy/2) dy`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::model::{energy_of, v_of_x, MorseSystem, SpectralLabel};
use crate::specfun::{
    bessel_k, binomial, gamma_c, kummer_m, laguerre_assoc, quad::integrate, rgamma, whittaker_w, QuadratureControl,
    SeriesControl,
};
use crate::{Error, Result, I};

/// Beyond this `v` the wave functions are below `e^{-700}` and are returned as zero.
const V_NEGLIGIBLE: f64 = 1500.0;

/// An energy eigenfunction of the Morse Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveFunction {
    pub sys: MorseSystem,
    pub label: SpectralLabel,
    /// Multiplies the raw formula; `1/√N` for bound states, `1` for scattering states.
    pub scale: f64,
}

impl WaveFunction {
    pub fn scattering(sys: &MorseSystem, k: f64) -> Result<Self> {
        let label = SpectralLabel::Scattering { k };
        label.validate(sys)?;
        Ok(WaveFunction {
            sys: *sys,
            label,
            scale: 1.0,
        })
    }

    /// The bound state `ν`, normalized to `∫|ψ|² dx = 1` by adaptive quadrature.
    pub fn bound(sys: &MorseSystem, nu: u32) -> Result<Self> {
        let label = SpectralLabel::Bound { nu };
        label.validate(sys)?;
        let lambda = sys.b() - 2.0 * nu as f64 - 1.0;
        let a = sys.alpha;
        let x_lo = -(200.0 * a / (2.0 * sys.kappa)).ln() / a;
        let x_hi = (2.0 * sys.kappa / a).ln() / a + 80.0 / (a * lambda);
        let ctl = QuadratureControl::default();
        let norm = integrate(
            |x| Ok(Complex64::new(psi_bound_raw(sys, nu, x).powi(2), 0.0)),
            x_lo,
            x_hi,
            &ctl,
        )?
        .value
        .re;
        Ok(WaveFunction {
            sys: *sys,
            label,
            scale: 1.0 / norm.sqrt(),
        })
    }

    pub fn for_label(sys: &MorseSystem, label: &SpectralLabel) -> Result<Self> {
        match *label {
            SpectralLabel::Scattering { k } => Self::scattering(sys, k),
            SpectralLabel::Bound { nu } => Self::bound(sys, nu),
        }
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let v = v_of_x(x, &self.sys);
        if v > V_NEGLIGIBLE {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.scale
            * match self.label {
                SpectralLabel::Scattering { k } => psi_scattering(&self.sys, k, x)?,
                SpectralLabel::Bound { nu } => Complex64::new(psi_bound_raw(&self.sys, nu, x), 0.0),
            })
    }

    pub fn energy(&self) -> Result<f64> {
        energy_of(&self.label, &self.sys)
    }

    pub fn normalization_note(&self) -> &'static str {
        match self.label {
            SpectralLabel::Scattering { .. } => "C = 1 in C e^(alpha x/2) W_(b/2, i k/alpha)(v); not normalizable",
            SpectralLabel::Bound { .. } => "normalized: int |psi|^2 dx = 1",
        }
    }
}

/// `e^{αx/2} W_{b/2, ik/α}(2κe^{-αx}/α)`.
pub fn psi_scattering(sys: &MorseSystem, k: f64, x: f64) -> Result<Complex64> {
    let v = v_of_x(x, sys);
    let mu = I * k / sys.alpha;
    Ok((sys.alpha * x / 2.0).exp() * whittaker_w(Complex64::new(sys.b() / 2.0, 0.0), mu, Complex64::new(v, 0.0))?)
}

/// `Ã = Γ(-2ik/α) / Γ(1/2 - b/2 - ik/α)`.
pub fn a_tilde(sys: &MorseSystem, k: f64) -> Result<Complex64> {
    let mu = I * k / sys.alpha;
    Ok(gamma_c(-2.0 * mu)? * rgamma(0.5 - sys.b() / 2.0 - mu))
}

/// The Kummer-`M` form `e^{-v/2}[Ã v^{ik/α} M(χ, ς; v) + c.c.]`, times
/// `√(2κ/α)` so that it coincides with [`psi_scattering`].
pub fn psi_scattering_kummer(sys: &MorseSystem, k: f64, x: f64) -> Result<Complex64> {
    let v = v_of_x(x, sys);
    let mu = I * k / sys.alpha;
    let b = sys.b();
    let a = a_tilde(sys, k)?;
    let ctl = SeriesControl {
        rel_tol: 1e-16,
        ..SeriesControl::default()
    };
    let vc = Complex64::new(v, 0.0);
    let chi = 0.5 - b / 2.0 + mu;
    let chi_bar = 0.5 - b / 2.0 - mu;
    let t1 = a * (mu * v.ln()).exp() * kummer_m(chi, 1.0 + 2.0 * mu, vc, &ctl)?;
    let t2 = a.conj() * (-mu * v.ln()).exp() * kummer_m(chi_bar, 1.0 - 2.0 * mu, vc, &ctl)?;
    Ok((2.0 * sys.kappa / sys.alpha).sqrt() * (-v / 2.0).exp() * (t1 + t2))
}

/// Unnormalized bound state `e^{-v/2} e^{α(ν - b/2 + 1/2)x} L_ν^{b-2ν-1}(v)`,
/// which decays on both sides since `ν - b/2 + 1/2 < 0`.
pub fn psi_bound_raw(sys: &MorseSystem, nu: u32, x: f64) -> f64 {
    let v = v_of_x(x, sys);
    let q = nu as f64 - sys.b() / 2.0 + 0.5;
    let lambda = sys.b() - 2.0 * nu as f64 - 1.0;
    (-v / 2.0 + sys.alpha * q * x).exp() * laguerre_assoc(nu, lambda, v)
}

/// Normalized bound state. Recomputes the norm on every call; hold a
/// [`WaveFunction`] for repeated evaluation.
pub fn psi_bound(sys: &MorseSystem, nu: u32, x: f64) -> Result<f64> {
    Ok(WaveFunction::bound(sys, nu)?.eval(x)?.re)
}

/// Relative residual of `-ħ²ψ''/2m + Vψ - Eψ = 0` at `x`, with `ψ''` from
/// the 5-point central difference (step `2·10⁻³/α`), normalized by the
/// largest of the three terms.
pub fn schrodinger_residual<F>(sys: &MorseSystem, psi: F, energy: f64, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let h = 2e-3 / sys.alpha;
    if x + h == x || x - 2.0 * h == x {
        return Err(Error::Domain(format!("finite-difference step underflows at x = {x}")));
    }
    let f0 = psi(x)?;
    let d2 =
        (-psi(x + 2.0 * h)? + 16.0 * psi(x + h)? - 30.0 * f0 + 16.0 * psi(x - h)? - psi(x - 2.0 * h)?) / (12.0 * h * h);
    let kinetic = -sys.hbar * sys.hbar / (2.0 * sys.mass) * d2;
    let pot = sys.potential(x) * f0;
    let en = energy * f0;
    let scale = kinetic.norm().max(pot.norm()).max(en.norm());
    let res = (kinetic + pot - en).norm();
    Ok(if scale > 0.0 { res / scale } else { res })
}

/// Controls for [`wigner_transform_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformControl {
    /// Apply the cosine taper and grow the window until it stops mattering.
    /// Without it the `y` range is cut hard and the integrand must already
    /// be negligible at its ends.
    pub window: bool,
    /// Acceptance threshold for the window-doubling change, relative to
    /// `∫|integrand| dy`.
    pub tol: f64,
    pub max_doublings: u32,
    pub quad: QuadratureControl,
}

impl Default for TransformControl {
    fn default() -> Self {
        TransformControl {
            window: true,
            tol: 1e-10,
            max_doublings: 6,
            quad: QuadratureControl {
                abs_tol: 1e-300,
                rel_tol: 1e-12,
                max_subdivisions: 4000,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformResult {
    pub value: Complex64,
    pub error: f64,
    /// Half-width of the flat part of the window in `y`.
    pub window: f64,
}

/// `x` beyond which (to the left) every Morse wave function is negligible.
fn forbidden_edge(sys: &MorseSystem) -> f64 {
    (2.0 * sys.kappa / (120.0 * sys.alpha)).ln() / sys.alpha
}

fn taper(y: f64, flat: f64, width: f64) -> f64 {
    let a = y.abs();
    if a <= flat {
        1.0
    } else if a >= flat + width {
        0.0
    } else {
        let s = (a - flat) / width;
        0.5 * (1.0 + (std::f64::consts::PI * s).cos())
    }
}

/// `∫ e^{-iyp} ψ_L(x + ħy/2) ψ_R*(x - ħy/2) dy` by adaptive quadrature on a
/// cosine-tapered window `[-Y - τ, Y + τ]` (`τ = 2/αħ`). `Y` starts where the
/// deeper of the two arguments is well inside the classically forbidden
/// region and is doubled until the result changes by less than
/// `tol · ∫|integrand|`.
pub fn wigner_transform_numeric(
    psi_l: &WaveFunction,
    psi_r: &WaveFunction,
    x: f64,
    p: f64,
    ctl: &TransformControl,
) -> Result<TransformResult> {
    let sys = &psi_l.sys;
    if psi_r.sys != *sys {
        return Err(Error::InvalidParameter(
            "wave functions belong to different systems".into(),
        ));
    }
    let hbar = sys.hbar;
    let width = 2.0 / (sys.alpha * hbar);
    let integrand = |y: f64| -> Result<Complex64> {
        let l = psi_l.eval(x + hbar * y / 2.0)?;
        if l == Complex64::new(0.0, 0.0) {
            return Ok(l);
        }
        let r = psi_r.eval(x - hbar * y / 2.0)?;
        Ok((-I * y * p).exp() * l * r.conj())
    };
    let mut flat = 2.0 * (x - forbidden_edge(sys)).max(2.0 / sys.alpha) / hbar;

    if !ctl.window {
        let r = integrate(&integrand, -flat, flat, &ctl.quad)?;
        let end = integrand(flat)?.norm().max(integrand(-flat)?.norm());
        let l1_scale = r.abs_value / (2.0 * flat);
        if end > ctl.tol * l1_scale {
            return Err(Error::WindowRequired);
        }
        return Ok(TransformResult {
            value: r.value,
            error: r.error,
            window: flat,
        });
    }

    let eval = |flat: f64| {
        integrate(
            |y| Ok(taper(y, flat, width) * integrand(y)?),
            -flat - width,
            flat + width,
            &ctl.quad,
        )
    };
    let mut prev = eval(flat)?;
    for _ in 0..ctl.max_doublings {
        let next = eval(2.0 * flat)?;
        let change = (next.value - prev.value).norm();
        if change <= ctl.tol * next.abs_value.max(f64::MIN_POSITIVE) {
            return Ok(TransformResult {
                value: next.value,
                error: change + next.error,
                window: 2.0 * flat,
            });
        }
        flat *= 2.0;
        prev = next;
    }
    Err(Error::WindowRequired)
}

/// Truncation record of [`wigner_series`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTail {
    /// Number of `m + n = M` shells summed.
    pub terms_used: usize,
    pub last_term_magnitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControlShells {
    /// Stop once a full shell is below `tol` times the partial sum.
    pub tol: f64,
    pub max_shells: usize,
    /// Declare divergence once a shell exceeds a tenth of the partial sum and this
    /// multiple of the smallest shell seen so far.
    pub divergence_factor: f64,
}

impl Default for SeriesControlShells {
    fn default() -> Self {
        SeriesControlShells {
            tol: 1e-10,
            max_shells: 200,
            divergence_factor: 1e3,
        }
    }
}

/// The four-block double sum obtained by expanding both Kummer functions of
/// the scattering states and integrating term by term against
/// `e^{-v(w+1/w)/2}`:
///
/// ```text
/// ρ = (2κ/α)(2/αħ) Σ_{σ_L,σ_R=±} A_L^{σ_L} A_R^{σ_R} v^{σ_L μ_L + σ_R μ_R}
///     Σ_{m,n} (χ_L^{σ_L})_m (χ_R^{σ_R})_n / ((ς_L^{σ_L})_m (ς_R^{σ_R})_n m! n!) v^{m+n}
///     · 2K_{m - n + σ_L μ_L - σ_R μ_R + 2ip/αħ}(v)
/// ```
///
/// with `μ = ik/α`, `A^+ = Ã`, `A^- = Ã*`, `χ^± = 1/2 - b/2 ± μ`,
/// `ς^± = 1 ± 2μ`. Shells `m + n = M` are added until one falls below
/// `tol` relative; the `m`-direction terms grow like `2^m` (from
/// `K_m(v) ~ Γ(m)(v/2)^{-m}/2`), so in practice the shells eventually grow
/// and a convergence error is returned.
pub fn wigner_series(
    sys: &MorseSystem,
    v: f64,
    p: f64,
    k_l: f64,
    k_r: f64,
    ctl: &SeriesControlShells,
) -> Result<(Complex64, SeriesTail)> {
    let series = KSeries::new(sys, v, p, k_l, k_r)?;
    let mut total = Complex64::new(0.0, 0.0);
    let mut smallest = f64::INFINITY;
    let mut last = f64::NAN;
    for m_total in 0..ctl.max_shells {
        // Past the smallest shell the K kernels grow with their order and
        // eventually overflow the quadrature; report that as divergence.
        let shell = series.shell(m_total).map_err(|e| {
            Error::convergence(
                "Bessel-K double series",
                format!(
                    "shell {m_total} failed ({e}) after shells shrank to {smallest:.3e} and grew back to {last:.3e}"
                ),
            )
        })?;
        total += shell;
        let mag = shell.norm();
        smallest = smallest.min(mag);
        last = mag;
        if m_total >= 2 && mag <= ctl.tol * total.norm() {
            return Ok((
                total,
                SeriesTail {
                    terms_used: m_total + 1,
                    last_term_magnitude: mag,
                },
            ));
        }
        if m_total >= 4 && mag > 0.1 * total.norm() && mag > ctl.divergence_factor * smallest {
            return Err(Error::convergence(
                "Bessel-K double series",
                format!("diverges: shell {m_total} has magnitude {mag:.3e}, smallest shell was {smallest:.3e}"),
            ));
        }
    }
    Err(Error::convergence(
        "Bessel-K double series",
        format!("no convergence within {} shells", ctl.max_shells),
    ))
}

/// Shell magnitudes `|Σ_{m+n=M} term|` for `M < shells`, for diagnostics.
pub fn wigner_series_shells(sys: &MorseSystem, v: f64, p: f64, k_l: f64, k_r: f64, shells: usize) -> Result<Vec<f64>> {
    let series = KSeries::new(sys, v, p, k_l, k_r)?;
    (0..shells).map(|m| Ok(series.shell(m)?.norm())).collect()
}

/// The `m = n = 0` term of [`wigner_series`]; with `asymptotic` the kernels
/// `K_ν(v)` are replaced by their large-`v` form `√(π/2v) e^{-v}`.
pub fn wigner_series_leading(
    sys: &MorseSystem,
    v: f64,
    p: f64,
    k_l: f64,
    k_r: f64,
    asymptotic: bool,
) -> Result<Complex64> {
    let series = KSeries::new(sys, v, p, k_l, k_r)?;
    if asymptotic {
        let k_asym = (std::f64::consts::PI / (2.0 * v)).sqrt() * (-v).exp();
        let mut s = Complex64::new(0.0, 0.0);
        for bl in &series.left {
            for br in &series.right {
                s += bl.a * br.a * ((bl.mu + br.mu) * v.ln()).exp() * 2.0 * k_asym;
            }
        }
        Ok(series.prefactor * s)
    } else {
        series.term(0, 0)
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    a: Complex64,
    mu: Complex64,
    chi: Complex64,
    varsigma: Complex64,
}

struct KSeries {
    v: f64,
    left: [Block; 2],
    right: [Block; 2],
    p_order: Complex64,
    prefactor: f64,
    quad: QuadratureControl,
}

impl KSeries {
    fn new(sys: &MorseSystem, v: f64, p: f64, k_l: f64, k_r: f64) -> Result<Self> {
        if !(v > 0.0) {
            return Err(Error::Domain(format!("series needs v > 0, got {v}")));
        }
        let blocks = |k: f64| -> Result<[Block; 2]> {
            SpectralLabel::Scattering { k }.validate(sys)?;
            let mu = I * k / sys.alpha;
            let a = a_tilde(sys, k)?;
            let b = sys.b();
            Ok([
                Block {
                    a,
                    mu,
                    chi: 0.5 - b / 2.0 + mu,
                    varsigma: 1.0 + 2.0 * mu,
                },
                Block {
                    a: a.conj(),
                    mu: -mu,
                    chi: 0.5 - b / 2.0 - mu,
                    varsigma: 1.0 - 2.0 * mu,
                },
            ])
        };
        Ok(KSeries {
            v,
            left: blocks(k_l)?,
            right: blocks(k_r)?,
            p_order: 2.0 * I * p / (sys.alpha * sys.hbar),
            prefactor: (2.0 * sys.kappa / sys.alpha) * (2.0 / (sys.alpha * sys.hbar)),
            quad: QuadratureControl::default(),
        })
    }

    fn coeff(block: &Block, m: usize, v: f64) -> Complex64 {
        let mut c = Complex64::new(1.0, 0.0);
        for j in 0..m {
            c *= (block.chi + j as f64) / ((block.varsigma + j as f64) * (j as f64 + 1.0)) * v;
        }
        c
    }

    fn term(&self, m: usize, n: usize) -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for bl in &self.left {
            for br in &self.right {
                let order = (m as f64 - n as f64) + bl.mu - br.mu + self.p_order;
                s += bl.a
                    * br.a
                    * ((bl.mu + br.mu) * self.v.ln()).exp()
                    * Self::coeff(bl, m, self.v)
                    * Self::coeff(br, n, self.v)
                    * 2.0
                    * bessel_k(order, Complex64::new(self.v, 0.0), &self.quad)?;
            }
        }
        Ok(self.prefactor * s)
    }

    fn shell(&self, m_total: usize) -> Result<Complex64> {
        (0..=m_total).try_fold(Complex64::new(0.0, 0.0), |acc, m| Ok(acc + self.term(m, m_total - m)?))
    }
}

/// Bound-state Wigner function in closed form,
///
/// ```text
/// ρ = N (4/αħ) (α/2κ)^{(λ_L+λ_R)/2} v^{(λ_L+λ_R)/2}
///     Σ_{l1,l2} binom(b-ν_L-1, ν_L-l1) binom(b-ν_R-1, ν_R-l2) (-v)^{l1+l2}/(l1! l2!)
///     · K_{l1 - l2 + (λ_L-λ_R)/2 + 2ip/αħ}(v)
/// ```
///
/// with `λ = b - 2ν - 1` and `N` the product of the two normalization
/// factors; for `ν_L = ν_R` this is `∝ v^{b-2ν-1} Σ … K_{l1-l2+2ip/αħ}(v)`.
/// Equals [`wigner_transform_numeric`] of the normalized states.
pub fn wigner_bound_closed(left: &WaveFunction, right: &WaveFunction, x: f64, p: f64) -> Result<Complex64> {
    let sys = &left.sys;
    let (nu_l, nu_r) = match (left.label, right.label) {
        (SpectralLabel::Bound { nu: a }, SpectralLabel::Bound { nu: b }) => (a, b),
        _ => {
            return Err(Error::InvalidParameter(
                "bound closed form needs two bound states".into(),
            ))
        }
    };
    let b = sys.b();
    let v = v_of_x(x, sys);
    let lam_l = b - 2.0 * nu_l as f64 - 1.0;
    let lam_r = b - 2.0 * nu_r as f64 - 1.0;
    let quad = QuadratureControl::default();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut f1 = 1.0;
    for l1 in 0..=nu_l {
        if l1 > 0 {
            f1 *= l1 as f64;
        }
        let mut f2 = 1.0;
        for l2 in 0..=nu_r {
            if l2 > 0 {
                f2 *= l2 as f64;
            }
            let coef = binomial(b - nu_l as f64 - 1.0, nu_l - l1)
                * binomial(b - nu_r as f64 - 1.0, nu_r - l2)
                * (-v).powi((l1 + l2) as i32)
                / (f1 * f2);
            let order = (l1 as f64 - l2 as f64) + (lam_l - lam_r) / 2.0 + 2.0 * I * p / (sys.alpha * sys.hbar);
            sum += coef * bessel_k(order, Complex64::new(v, 0.0), &quad)?;
        }
    }
    let half = (lam_l + lam_r) / 2.0;
    let pref = left.scale * right.scale * 4.0 / (sys.alpha * sys.hbar) * (sys.alpha * v / (2.0 * sys.kappa)).powf(half);
    Ok(pref * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(b: f64) -> MorseSystem {
        MorseSystem::unit_with_b(b).unwrap()
    }

    #[test]
    fn scattering_forms_agree_and_are_real() {
        let s = sys(2.5);
        for x in [-1.0, -0.3, 0.5, 1.7, 3.0, 4.5] {
            let w = psi_scattering(&s, 0.8, x).unwrap();
            let m = psi_scattering_kummer(&s, 0.8, x).unwrap();
            assert!((w - m).norm() < 1e-9 * w.norm().max(1e-3), "x={x}: {w} vs {m}");
            assert!(w.im.abs() < 1e-9 * w.norm().max(1e-12));
        }
    }

    #[test]
    fn scattering_asymptotics() {
        let s = sys(2.5);
        let k = 1.0;
        // Zero crossings at large x are spaced by π/k.
        let xs: Vec<f64> = (0..=2000).map(|i| 5.0 + i as f64 * 0.01).collect();
        let vals: Vec<f64> = xs.iter().map(|&x| psi_scattering(&s, k, x).unwrap().re).collect();
        let crossings: Vec<f64> = (1..xs.len())
            .filter(|&i| vals[i - 1].signum() != vals[i].signum())
            .map(|i| xs[i - 1] + 0.01 * vals[i - 1] / (vals[i - 1] - vals[i]))
            .collect();
        assert!(crossings.len() >= 3);
        for w in crossings.windows(2) {
            assert!(((w[1] - w[0]) - std::f64::consts::PI / k).abs() < 0.02 * std::f64::consts::PI / k);
        }
        let deep: Vec<f64> = [-1.5, -2.0, -2.5]
            .iter()
            .map(|&x| psi_scattering(&s, k, x).unwrap().norm())
            .collect();
        assert!(deep[0] > deep[1] && deep[1] > deep[2]);
    }

    #[test]
    fn bound_states_nodes_and_orthogonality() {
        let s = sys(4.0);
        let g = WaveFunction::bound(&s, 0).unwrap();
        let e = WaveFunction::bound(&s, 1).unwrap();
        let grid: Vec<f64> = (0..10_000).map(|i| -3.0007 + i as f64 * 15.0 / 10_000.0).collect();
        let sign_changes = |w: &WaveFunction| {
            let v: Vec<f64> = grid.iter().map(|&x| w.eval(x).unwrap().re).collect();
            v.windows(2).filter(|p| p[0] * p[1] < 0.0).count()
        };
        assert_eq!(sign_changes(&g), 0);
        assert_eq!(sign_changes(&e), 1);
        let ctl = QuadratureControl::default();
        let overlap = integrate(|x| Ok(g.eval(x)? * e.eval(x)?), -6.0, 60.0, &ctl)
            .unwrap()
            .value;
        assert!(overlap.norm() < 1e-8, "{overlap}");
        let norm = integrate(|x| Ok(g.eval(x)?.powu(2)), -6.0, 60.0, &ctl).unwrap().value;
        assert!((norm.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn schrodinger_residuals() {
        let s = sys(4.0);
        let g = WaveFunction::bound(&s, 0).unwrap();
        let e0 = g.energy().unwrap();
        for i in 0..=10 {
            let x = -1.0 + 0.5 * i as f64;
            assert!(schrodinger_residual(&s, |x| g.eval(x), e0, x).unwrap() < 1e-6);
        }
        let sc = WaveFunction::scattering(&s, 1.0).unwrap();
        for x in [-1.0, 0.0, 1.3, 2.9] {
            assert!(schrodinger_residual(&s, |x| sc.eval(x), 0.5, x).unwrap() < 1e-6);
            assert!(schrodinger_residual(&s, |x| sc.eval(x), 0.6, x).unwrap() > 1e-2);
        }
        assert!(schrodinger_residual(&s, |x| g.eval(x), e0 + 0.1, 0.5).unwrap() > 1e-2);
    }

    #[test]
    fn transform_symmetry_and_window() {
        let s = sys(4.0);
        let g = WaveFunction::bound(&s, 0).unwrap();
        let ctl = TransformControl::default();
        let a = wigner_transform_numeric(&g, &g, 0.4, 0.7, &ctl).unwrap().value;
        let b = wigner_transform_numeric(&g, &g, 0.4, -0.7, &ctl).unwrap().value;
        assert!(a.im.abs() < 1e-10 * a.norm());
        assert!((a - b).norm() < 1e-10 * a.norm());
        let hard = TransformControl { window: false, ..ctl };
        assert!(wigner_transform_numeric(&g, &g, 0.4, 0.7, &hard).is_ok());
        let sc = WaveFunction::scattering(&s, 1.0).unwrap();
        let short = TransformControl {
            max_doublings: 0,
            ..ctl
        };
        assert!(matches!(
            wigner_transform_numeric(&sc, &sc, 0.4, 0.7, &short),
            Err(Error::WindowRequired)
        ));
    }

    #[test]
    fn bound_closed_form_matches_transform() {
        let s = sys(4.0);
        for (nl, nr) in [(0, 0), (1, 1), (0, 1)] {
            let l = WaveFunction::bound(&s, nl).unwrap();
            let r = WaveFunction::bound(&s, nr).unwrap();
            for (x, p) in [(0.0, 0.3), (1.0, -0.5), (-0.5, 1.0)] {
                let c = wigner_bound_closed(&l, &r, x, p).unwrap();
                let n = wigner_transform_numeric(&l, &r, x, p, &TransformControl::default())
                    .unwrap()
                    .value;
                assert!(
                    (c - n).norm() < 1e-9 * n.norm().max(1e-3),
                    "{nl}{nr} ({x},{p}): {c} vs {n}"
                );
            }
        }
    }

    #[test]
    fn series_leading_term_and_divergence() {
        let s = sys(2.5);
        let v = 40.0;
        let exact = wigner_series_leading(&s, v, 0.3, 0.7, 0.7, false).unwrap();
        let asym = wigner_series_leading(&s, v, 0.3, 0.7, 0.7, true).unwrap();
        assert!((exact - asym).norm() < 0.1 * exact.norm());
        let shells = wigner_series_shells(&s, 1.5, 0.3, 0.7, 0.7, 30).unwrap();
        assert!(shells[29] > 10.0 * shells[10]);
        assert!(matches!(
            wigner_series(&s, 1.5, 0.3, 0.7, 0.7, &SeriesControlShells::default()),
            Err(Error::Convergence { .. })
        ));
    }
}
