//! Mellin-space factor solutions `w_b(t, k)` of the difference equation
//!
//! ```text
//! w(t-1) - (b/2) w(t-1/2) = [t² + k²/4α²] w(t)
//! ```
//!
//! Every family is evaluated with its literal prefactors; they are all only
//! defined up to a `t`-independent constant, so comparisons between families
//! go through [`crate::ratio_spread`] or [`crate::calibrate`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::model::{MorseSystem, SpectralLabel};
use crate::specfun::{binomial, gamma_c, gauss_2f1_on_side, pochhammer, pole_distance, rgamma, CutSide};
use crate::{Error, Result, I};

/// Distance to a Gamma pole below which evaluation is refused.
pub const POLE_PROXIMITY: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    LiouvilleB0,
    ExplicitB1,
    ExplicitB2,
    IntegerB,
    RealB,
    Bound,
}

/// A factor `w(t)` with its parameters frozen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorSolution {
    pub family: Family,
    pub b: f64,
    /// Wavenumber; imaginary `iα(ν - b/2 + 1/2)` for bound states.
    pub k: Complex64,
    pub alpha: f64,
    pub nu: Option<u32>,
}

impl FactorSolution {
    pub fn new(family: Family, b: f64, k: Complex64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        let fixed_b = match family {
            Family::LiouvilleB0 => Some(0.0),
            Family::ExplicitB1 => Some(1.0),
            Family::ExplicitB2 => Some(2.0),
            _ => None,
        };
        if let Some(fb) = fixed_b {
            if b != fb {
                return Err(Error::InvalidParameter(format!(
                    "{family:?} requires b = {fb}, got {b}"
                )));
            }
        }
        match family {
            Family::IntegerB if !(b >= 0.0 && b.fract() == 0.0) => {
                return Err(Error::InvalidParameter(format!("IntegerB requires b in N0, got {b}")));
            }
            Family::Bound => {
                return Err(Error::InvalidParameter(
                    "use FactorSolution::bound for bound states".into(),
                ));
            }
            _ => {}
        }
        if family == Family::RealB || family == Family::IntegerB {
            check_resonance(k, alpha)?;
        }
        Ok(FactorSolution {
            family,
            b,
            k,
            alpha,
            nu: None,
        })
    }

    pub fn bound(nu: u32, b: f64, alpha: f64) -> Result<Self> {
        let q = nu as f64 - b / 2.0 + 0.5;
        if !(q < 0.0) {
            return Err(Error::Domain(format!("nu = {nu} is not a bound state for b = {b}")));
        }
        Ok(FactorSolution {
            family: Family::Bound,
            b,
            k: Complex64::new(0.0, alpha * q),
            alpha,
            nu: Some(nu),
        })
    }

    /// The production factor for a label: `w_bound` for bound states,
    /// `w_real` for every scattering state.
    pub fn for_label(sys: &MorseSystem, label: &SpectralLabel) -> Result<Self> {
        label.validate(sys)?;
        match *label {
            SpectralLabel::Bound { nu } => Self::bound(nu, sys.b(), sys.alpha),
            SpectralLabel::Scattering { k } => Self::new(Family::RealB, sys.b(), Complex64::new(k, 0.0), sys.alpha),
        }
    }

    /// Like [`for_label`](Self::for_label) but uses the finite `w_integer`
    /// sum for scattering states when `b` is a non-negative integer.
    pub fn for_label_verify(sys: &MorseSystem, label: &SpectralLabel) -> Result<Self> {
        let b = sys.b();
        match *label {
            SpectralLabel::Scattering { k } if b >= 0.0 && b.fract() == 0.0 => {
                label.validate(sys)?;
                Self::new(Family::IntegerB, b, Complex64::new(k, 0.0), sys.alpha)
            }
            _ => Self::for_label(sys, label),
        }
    }

    pub fn eval(&self, t: Complex64) -> Result<Complex64> {
        match self.family {
            Family::LiouvilleB0 => w_liouville(t, self.k, self.alpha),
            Family::ExplicitB1 => w_b1(t, self.k, self.alpha),
            Family::ExplicitB2 => w_b2(t, self.k, self.alpha),
            Family::IntegerB => w_integer(t, self.k, self.b as u32, self.alpha),
            Family::RealB => w_real(t, self.k, self.b, self.alpha),
            Family::Bound => w_bound(t, self.nu.expect("bound factor carries nu"), self.b),
        }
    }

    /// Leftmost points of the pole lines of `w` in the `t` plane. Each line
    /// continues to the right in steps of ½ (or 1) from the listed point.
    pub fn pole_lines(&self) -> Vec<Complex64> {
        let a = I * self.k / (2.0 * self.alpha);
        match self.family {
            Family::LiouvilleB0 => vec![a, -a],
            Family::ExplicitB1 => vec![a, -a, 0.5 + a, 0.5 - a],
            Family::ExplicitB2 => vec![a, -a, 0.5 + a, 0.5 - a],
            Family::IntegerB => {
                let n = self.b as u32;
                (0..=n)
                    .flat_map(|j| {
                        let h = j as f64 / 2.0;
                        [h + a, (self.b - j as f64) / 2.0 - a]
                    })
                    .collect()
            }
            Family::RealB => vec![a, -a],
            Family::Bound => {
                let q = self.b / 2.0 - self.nu.unwrap_or(0) as f64 - 0.5;
                vec![Complex64::new(q / 2.0, 0.0)]
            }
        }
    }
}

fn check_resonance(k: Complex64, alpha: f64) -> Result<()> {
    let r = 2.0 * I * k / alpha;
    if (r - r.re.round()).norm() < POLE_PROXIMITY {
        return Err(Error::Resonance(r.re.round()));
    }
    Ok(())
}

/// `Γ(z)` with the pole-proximity guard.
fn gamma_guarded(z: Complex64) -> Result<Complex64> {
    if let Some((n, d)) = pole_distance(z) {
        if d < POLE_PROXIMITY {
            return Err(Error::Pole(n));
        }
    }
    gamma_c(z)
}

fn gamma_pair(z1: Complex64, z2: Complex64) -> Result<Complex64> {
    Ok(gamma_guarded(z1)? * gamma_guarded(z2)?)
}

/// `Γ(-t + ik/2α) Γ(-t - ik/2α)`.
pub fn w_liouville(t: Complex64, k: Complex64, alpha: f64) -> Result<Complex64> {
    let a = I * k / (2.0 * alpha);
    gamma_pair(-t + a, -t - a)
}

pub fn w_b1(t: Complex64, k: Complex64, alpha: f64) -> Result<Complex64> {
    let a = I * k / (2.0 * alpha);
    Ok(gamma_pair(-t + a, -t + 0.5 - a)? + gamma_pair(-t + 0.5 + a, -t - a)?)
}

/// `b = 2` factor, `(t + 1/4) Π± Γ(-t ± ik/2α) - Π± Γ(-t + 1/2 ± ik/2α)`.
pub fn w_b2(t: Complex64, k: Complex64, alpha: f64) -> Result<Complex64> {
    let a = I * k / (2.0 * alpha);
    Ok((t + 0.25) * gamma_pair(-t + a, -t - a)? - gamma_pair(-t + 0.5 + a, -t + 0.5 - a)?)
}

/// The three-term form of the `b = 2` factor that parallels `w_b1`.
pub fn w_b2_alt(t: Complex64, k: Complex64, alpha: f64) -> Result<Complex64> {
    let a = I * k / (2.0 * alpha);
    let r = 2.0 * I * k / alpha;
    Ok((r + 1.0) * gamma_pair(-t + a, -t + 1.0 - a)?
        + 2.0 * r * gamma_pair(-t + 0.5 + a, -t + 0.5 - a)?
        + (r - 1.0) * gamma_pair(-t + 1.0 + a, -t - a)?)
}

/// `C_n^b = (-1)ⁿ(2n - b + 2ik/α)(-b)_{b-n} / [(b-n)! (n - b + 2ik/α)_{b+1}]`.
pub fn coeff_cnb(n: u32, b: u32, k: Complex64, alpha: f64) -> Result<Complex64> {
    if n > b {
        return Err(Error::InvalidParameter(format!(
            "coefficient index n = {n} exceeds b = {b}"
        )));
    }
    let r = 2.0 * I * k / alpha;
    let nf = n as f64;
    let bf = b as f64;
    let den_poch = pochhammer(nf - bf + r, b + 1);
    if den_poch.norm() < POLE_PROXIMITY {
        return Err(Error::Degenerate(format!(
            "C_{n}^{b}: (n - b + 2ik/alpha)_(b+1) vanishes"
        )));
    }
    let fact: f64 = (1..=(b - n)).map(|j| j as f64).product();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * (2.0 * nf - bf + r) * pochhammer(Complex64::new(-bf, 0.0), b - n) / (fact * den_poch))
}

/// `Σ_{n=0}^{b} C_n^b Γ(-t + n/2 + ik/2α) Γ(-t - n/2 + b/2 - ik/2α)`.
pub fn w_integer(t: Complex64, k: Complex64, b: u32, alpha: f64) -> Result<Complex64> {
    let a = I * k / (2.0 * alpha);
    let bf = b as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..=b {
        let h = n as f64 / 2.0;
        sum += coeff_cnb(n, b, k, alpha)? * gamma_pair(-t + h + a, -t - h + bf / 2.0 - a)?;
    }
    Ok(sum)
}

/// The two-term `₂F₁(…; 2)` factor valid for every real `b`.
///
/// Both terms sit on the branch cut of `₂F₁`; the sum does not depend on the
/// side it is approached from, but the individual terms can cancel badly on
/// one of them. The side is therefore chosen per point as the sign of
/// `Im(-2t)` (upper side on a tie).
pub fn w_real(t: Complex64, k: Complex64, b: f64, alpha: f64) -> Result<Complex64> {
    check_resonance(k, alpha)?;
    let ika = I * k / alpha;
    let chi = 0.5 - b / 2.0 + ika;
    let chi_bar = 0.5 - b / 2.0 - ika;
    let side = if (-2.0 * t).im >= 0.0 {
        CutSide::Above
    } else {
        CutSide::Below
    };
    let z = Complex64::new(2.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for (sign, ch_num, ch_den) in [(1.0, chi, chi_bar), (-1.0, chi_bar, chi)] {
        let prefactor = rgamma(ch_den);
        if prefactor == Complex64::new(0.0, 0.0) {
            continue;
        }
        let e = sign * ika;
        let g = gamma_guarded(-2.0 * e)? * prefactor * gamma_guarded(-2.0 * t + e)?;
        let f = gauss_2f1_on_side(ch_num, -2.0 * t + e, 1.0 + 2.0 * e, z, side)?;
        total += (Complex64::new(4.0f64.ln(), 0.0) * (t + e / 2.0)).exp() * g * f.value;
    }
    Ok(total)
}

/// `Σ_{l=0}^{ν} (-2)^l 2^{2t}/l! · binom(b-ν-1, ν-l) · Γ(-2t + l + b/2 - ν - 1/2)`.
pub fn w_bound(t: Complex64, nu: u32, b: f64) -> Result<Complex64> {
    if !(nu as f64 - b / 2.0 + 0.5 < 0.0) {
        return Err(Error::Domain(format!("nu = {nu} is not a bound state for b = {b}")));
    }
    let pow2 = (Complex64::new(2.0f64.ln(), 0.0) * 2.0 * t).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut fact = 1.0;
    for l in 0..=nu {
        if l > 0 {
            fact *= l as f64;
        }
        let coef = (-2.0f64).powi(l as i32) / fact * binomial(b - nu as f64 - 1.0, nu - l);
        if coef == 0.0 {
            continue;
        }
        sum += coef * gamma_guarded(-2.0 * t + l as f64 + b / 2.0 - nu as f64 - 0.5)?;
    }
    Ok(pow2 * sum)
}

/// Relative residual of the difference equation for an arbitrary evaluator:
/// `|w(t-1) - (b/2)w(t-1/2) - [t² + k²/4α²]w(t)|` over the largest of the
/// three terms.
pub fn difference_residual_of<F>(w: F, t: Complex64, b: f64, k: Complex64, alpha: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let t1 = w(t - 1.0)?;
    let t2 = b / 2.0 * w(t - 0.5)?;
    let t3 = (t * t + k * k / (4.0 * alpha * alpha)) * w(t)?;
    let scale = t1.norm().max(t2.norm()).max(t3.norm());
    let res = (t1 - t2 - t3).norm();
    Ok(if scale > 0.0 { res / scale } else { res })
}

pub fn difference_residual(w: &FactorSolution, t: Complex64) -> Result<f64> {
    difference_residual_of(|s| w.eval(s), t, w.b, w.k, w.alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferenceResidualReport {
    pub factor: FactorSolution,
    pub samples: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

pub fn difference_report(w: &FactorSolution, samples: &[Complex64]) -> Result<DifferenceResidualReport> {
    let residuals = samples
        .iter()
        .map(|&t| difference_residual(w, t))
        .collect::<Result<Vec<_>>>()?;
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(DifferenceResidualReport {
        factor: *w,
        samples: samples.to_vec(),
        residuals,
        max_residual,
    })
}

/// `n` deterministic contour-typical sample points `t = re + iy`, with `y`
/// spread over `[-half_width, half_width]` by the golden-ratio sequence.
pub fn sample_points(n: usize, re: f64, half_width: f64) -> Vec<Complex64> {
    const PHI: f64 = 0.618_033_988_749_894_8;
    (0..n)
        .map(|j| {
            let frac = (0.5 + j as f64 * PHI).fract();
            Complex64::new(re, half_width * (2.0 * frac - 1.0))
        })
        .collect()
}
