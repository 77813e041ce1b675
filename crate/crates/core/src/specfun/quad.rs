//! Quadrature: Gauss–Legendre rules and a globally adaptive 7/15-point
//! Gauss–Kronrod integrator for complex-valued integrands on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureControl {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureControl {
    fn default() -> Self {
        QuadratureControl {
            abs_tol: 1e-300,
            rel_tol: 1e-13,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter(format!(
                "quadrature control needs positive tolerances, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// ascending. Newton iteration on `P_n` from the Chebyshev-like initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

// QUADPACK qk15 abscissae and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    /// Integral of `|f|`, the natural scale for cancellation.
    pub abs_value: f64,
    pub evaluations: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    abs_value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut absk = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kron += (f1 + f2) * WGK[j];
        absk += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    Ok(Segment {
        a,
        b,
        value,
        abs_value: absk * half.abs(),
        error,
    })
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Stops when the summed error estimate drops below
/// `max(abs_tol, rel_tol·|I|)`; the integrand may fail, and the first
/// failure is propagated.
pub fn integrate<F>(mut f: F, a: f64, b: f64, ctl: &QuadratureControl) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    ctl.validate()?;
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            abs_value: 0.0,
            evaluations: 0,
        });
    }
    // Start from a few panels so narrow features are not missed.
    let initial = 4;
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for i in 0..initial {
        let x0 = a + (b - a) * i as f64 / initial as f64;
        let x1 = a + (b - a) * (i + 1) as f64 / initial as f64;
        heap.push(kronrod15(&mut f, x0, x1)?);
        evaluations += 15;
    }
    let mut subdivisions = initial;
    loop {
        let (value, error, abs_value) = heap
            .iter()
            .fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(v, e, s), seg| {
                (v + seg.value, e + seg.error, s + seg.abs_value)
            });
        let target = ctl.abs_tol.max(ctl.rel_tol * value.norm());
        // Round-off floor: nothing better than ~50 ulp of the |f| integral.
        let floor = 50.0 * f64::EPSILON * abs_value;
        if error <= target || error <= floor {
            return Ok(QuadResult {
                value,
                error,
                abs_value,
                evaluations,
            });
        }
        if subdivisions >= ctl.max_subdivisions {
            return Err(Error::convergence(
                "adaptive quadrature",
                format!("error estimate {error:e} above target {target:e} after {subdivisions} subdivisions"),
            ));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(kronrod15(&mut f, worst.a, mid)?);
        heap.push(kronrod15(&mut f, mid, worst.b)?);
        evaluations += 30;
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rules_integrate_polynomials_exactly() {
        for n in [1, 2, 5, 8, 16, 33] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-14, "n={n}");
            // degree 2n-1 monomial x^{2n-2} integrates to 2/(2n-1)
            let deg = 2 * n - 2;
            let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            assert!((s - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n={n}: {s}");
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn adaptive_handles_oscillation_and_peaks() {
        let ctl = QuadratureControl::default();
        let r = integrate(|x| Ok(Complex64::new(0.0, 30.0 * x).exp()), 0.0, 1.0, &ctl).unwrap();
        let exact = (Complex64::new(0.0, 30.0).exp() - 1.0) / Complex64::new(0.0, 30.0);
        assert!((r.value - exact).norm() < 1e-13);
        let r = integrate(|x| Ok(Complex64::new(1.0 / (1e-4 + x * x), 0.0)), -1.0, 1.0, &ctl).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((r.value.re - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn failures_propagate() {
        let ctl = QuadratureControl::default();
        let r = integrate(|_| Err(Error::Pole(0)), 0.0, 1.0, &ctl);
        assert_eq!(r.unwrap_err(), Error::Pole(0));
    }
}
