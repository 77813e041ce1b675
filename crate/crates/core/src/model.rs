//! Physical parameters, spectra and the coordinate substitutions `u(x)`, `v(x)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Morse potential `V(x) = (ħ²κ²/2m)(e^{-2αx} - β e^{-αx})`.
///
/// The shape parameter `b = βκ/α` is always recomputed from the fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseSystem {
    pub hbar: f64,
    pub mass: f64,
    pub alpha: f64,
    pub kappa: f64,
    pub beta: f64,
}

impl Default for MorseSystem {
    fn default() -> Self {
        MorseSystem {
            hbar: 1.0,
            mass: 1.0,
            alpha: 1.0,
            kappa: 1.0,
            beta: 0.0,
        }
    }
}

impl MorseSystem {
    pub fn new(hbar: f64, mass: f64, alpha: f64, kappa: f64, beta: f64) -> Result<Self> {
        let sys = MorseSystem {
            hbar,
            mass,
            alpha,
            kappa,
            beta,
        };
        sys.validate()?;
        Ok(sys)
    }

    /// `ħ = m = α = κ = 1` with `β` chosen so that the shape parameter is `b`.
    pub fn unit_with_b(b: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, 1.0, b)
    }

    /// Keeps `ħ, m, α, κ` and resets `β` so that the shape parameter is `b`.
    pub fn with_b(self, b: f64) -> Result<Self> {
        Self::new(
            self.hbar,
            self.mass,
            self.alpha,
            self.kappa,
            b * self.alpha / self.kappa,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("alpha", self.alpha),
            ("kappa", self.kappa),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite, got {}",
                self.beta
            )));
        }
        Ok(())
    }

    pub fn b(&self) -> f64 {
        self.beta * self.kappa / self.alpha
    }

    pub fn is_liouville(&self) -> bool {
        self.beta == 0.0
    }

    pub fn potential(&self, x: f64) -> f64 {
        let e = (-self.alpha * x).exp();
        self.hbar * self.hbar * self.kappa * self.kappa / (2.0 * self.mass) * (e * e - self.beta * e)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let sys: MorseSystem =
            serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))?;
        sys.validate()?;
        Ok(sys)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }
}

/// An energy eigenstate: a scattering state of real wavenumber `k > 0` or the
/// bound state with quantum number `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpectralLabel {
    Scattering { k: f64 },
    Bound { nu: u32 },
}

impl SpectralLabel {
    pub fn validate(&self, sys: &MorseSystem) -> Result<()> {
        match *self {
            SpectralLabel::Scattering { k } => {
                if !(k > 0.0 && k.is_finite()) {
                    return Err(Error::Domain(format!(
                        "scattering wavenumber must be positive, got {k}"
                    )));
                }
            }
            SpectralLabel::Bound { nu } => {
                let q = bound_exponent(nu, sys.b());
                if !(q < 0.0) {
                    return Err(Error::Domain(format!(
                        "nu = {nu} is not a bound state for b = {} (nu - b/2 + 1/2 = {q} must be < 0)",
                        sys.b()
                    )));
                }
            }
        }
        Ok(())
    }

    /// The wavenumber entering the factor solutions: `k` for scattering
    /// states, `iα(ν - b/2 + 1/2)` for bound states.
    pub fn wavenumber(&self, sys: &MorseSystem) -> Complex64 {
        match *self {
            SpectralLabel::Scattering { k } => Complex64::new(k, 0.0),
            SpectralLabel::Bound { nu } => Complex64::new(0.0, sys.alpha * bound_exponent(nu, sys.b())),
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, SpectralLabel::Bound { .. })
    }
}

impl std::fmt::Display for SpectralLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectralLabel::Scattering { k } => write!(f, "k={k}"),
            SpectralLabel::Bound { nu } => write!(f, "nu={nu}"),
        }
    }
}

/// A phase-space point. `p` is complex so that evaluators can be continued to
/// the shifted momenta `p ∓ iħα`, `p ∓ iħα/2` of the ⋆-eigenvalue equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x: f64,
    pub p: Complex64,
}

impl PhasePoint {
    pub fn real(x: f64, p: f64) -> Self {
        PhasePoint {
            x,
            p: Complex64::new(p, 0.0),
        }
    }
}

fn bound_exponent(nu: u32, b: f64) -> f64 {
    nu as f64 - b / 2.0 + 0.5
}

pub fn energy_of(label: &SpectralLabel, sys: &MorseSystem) -> Result<f64> {
    label.validate(sys)?;
    let scale = sys.hbar * sys.hbar / (2.0 * sys.mass);
    Ok(match *label {
        SpectralLabel::Scattering { k } => scale * k * k,
        SpectralLabel::Bound { nu } => {
            let q = bound_exponent(nu, sys.b());
            -scale * sys.alpha * sys.alpha * q * q
        }
    })
}

/// Number of normalizable bound states, `#{ν ≥ 0 : ν - b/2 + 1/2 < 0}`.
pub fn bound_count(sys: &MorseSystem) -> u32 {
    let limit = (sys.b() - 1.0) / 2.0;
    if limit <= 0.0 {
        return 0;
    }
    // Largest integer strictly below `limit`, plus one for ν = 0.
    limit.ceil() as u32
}

/// Diagnostic count under the inclusive reading `ν ∈ [0, ⌊b/2⌋]` with `⌊a⌋`
/// taken as the largest integer strictly below `a`. It differs from
/// [`bound_count`] for odd integer `b`, where it also admits the `E = 0` state.
pub fn bound_count_inclusive(sys: &MorseSystem) -> u32 {
    let half = sys.b() / 2.0;
    if half <= 0.0 {
        0
    } else {
        half.ceil() as u32
    }
}

/// `u = 16 e^{4αx} α⁴/κ⁴`, the Mellin variable.
pub fn u_of_x(x: f64, sys: &MorseSystem) -> f64 {
    16.0 * (4.0 * sys.alpha * x).exp() * (sys.alpha / sys.kappa).powi(4)
}

/// `v = 2κ e^{-αx}/α`, the Whittaker argument.
pub fn v_of_x(x: f64, sys: &MorseSystem) -> f64 {
    2.0 * sys.kappa * (-sys.alpha * x).exp() / sys.alpha
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies() {
        let sys = MorseSystem::unit_with_b(4.0).unwrap();
        assert_eq!(energy_of(&SpectralLabel::Bound { nu: 0 }, &sys).unwrap(), -1.125);
        assert_eq!(energy_of(&SpectralLabel::Bound { nu: 1 }, &sys).unwrap(), -0.125);
        assert_eq!(energy_of(&SpectralLabel::Scattering { k: 2.0 }, &sys).unwrap(), 2.0);
        let sys1 = MorseSystem::unit_with_b(1.0).unwrap();
        assert!(matches!(
            energy_of(&SpectralLabel::Bound { nu: 0 }, &sys1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn counts() {
        let count = |b: f64| bound_count(&MorseSystem::unit_with_b(b).unwrap());
        assert_eq!(count(0.0), 0);
        assert_eq!(count(1.0), 0);
        assert_eq!(count(2.0), 1);
        assert_eq!(count(3.0), 1);
        assert_eq!(count(3.2), 2);
        assert_eq!(count(4.0), 2);
        let inclusive = |b: f64| bound_count_inclusive(&MorseSystem::unit_with_b(b).unwrap());
        assert_eq!(inclusive(3.0), 2);
        assert_eq!(inclusive(4.0), 2);
        let mut prev = 0;
        for i in 0..200 {
            let n = count(i as f64 * 0.05);
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn substitutions() {
        let sys = MorseSystem::unit_with_b(2.0).unwrap();
        assert_eq!(u_of_x(0.0, &sys), 16.0);
        assert_eq!(v_of_x(0.0, &sys), 2.0);
        for x in [-3.0, -0.7, 0.0, 1.3, 4.0] {
            let id = u_of_x(x, &sys) * (v_of_x(x, &sys) / 2.0).powi(4);
            assert!((id - 16.0).abs() < 1e-12);
            assert!(u_of_x(x + 0.1, &sys) > u_of_x(x, &sys));
            assert!(v_of_x(x + 0.1, &sys) < v_of_x(x, &sys));
        }
    }

    #[test]
    fn bound_wavenumber_is_imaginary() {
        let sys = MorseSystem::unit_with_b(4.0).unwrap();
        let k = SpectralLabel::Bound { nu: 1 }.wavenumber(&sys);
        assert_eq!(k, Complex64::new(0.0, -0.5));
    }

    #[test]
    fn config_round_trip() {
        let sys = MorseSystem::new(1.0, 2.0, 0.5, 1.5, 0.75).unwrap();
        assert_eq!(MorseSystem::from_json(&sys.to_json()).unwrap(), sys);
        assert!(MorseSystem::from_json(r#"{"hbar":1,"mass":1,"alpha":0,"kappa":1,"beta":0}"#).is_err());
        assert!(MorseSystem::from_json(r#"{"hbar":1,"mass":1,"alpha":1,"kappa":1,"beta":0,"b":3}"#).is_err());
    }
}
