//! Numerical inverse Mellin transform on a vertical line and the Wigner
//! functions built from it.
//!
//! `ρ(x, p) = (1/2πi) ∫_{c-i∞}^{c+i∞} u^{-s} w(s - ip/2αħ, k_L) w(s + ip/2αħ, k_R) ds`
//! with `u = 16 e^{4αx} α⁴/κ⁴`. Values are emitted without any normalization
//! constant (see [`CONVENTION`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::factors::FactorSolution;
use crate::model::{u_of_x, MorseSystem, SpectralLabel};
use crate::specfun::{gamma_c, quad::gauss_legendre};
use crate::{Error, Result, I};

pub const CONVENTION: &str =
    "rho(x,p) = (1/2 pi i) int u^-s w(s - i p/(2 alpha hbar), k_L) w(s + i p/(2 alpha hbar), k_R) ds, \
unnormalized";

const PANEL_WIDTH: f64 = 0.5;
const MIN_POLE_MARGIN: f64 = 0.1;
const EXTRA_DOUBLINGS: usize = 3;

/// Vertical-line contour `Re s = c`, `|Im s| ≤ T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    /// Offset `c`; `None` places it from the pole inventory.
    pub c: Option<f64>,
    /// Initial half-length `T` (before the shift of the pole lines is added).
    pub half_length: f64,
    /// Cap for the geometric growth of `T`.
    pub max_half_length: f64,
    pub nodes_per_unit: usize,
    pub rel_tol: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            c: None,
            half_length: 4.0,
            max_half_length: 400.0,
            nodes_per_unit: 32,
            rel_tol: 1e-10,
        }
    }
}

impl ContourSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_unit < 8 {
            return Err(Error::InvalidParameter(format!(
                "nodes_per_unit must be >= 8, got {}",
                self.nodes_per_unit
            )));
        }
        if !(self.rel_tol > 0.0 && self.half_length > 0.0 && self.max_half_length >= self.half_length) {
            return Err(Error::InvalidParameter(format!("invalid contour spec {self:?}")));
        }
        if let Some(c) = self.c {
            if !c.is_finite() {
                return Err(Error::InvalidParameter("contour offset must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn with_offset(self, c: f64) -> Self {
        ContourSpec { c: Some(c), ..self }
    }
}

/// Starting points of the pole lines of a Mellin integrand `F(s)`.
/// `rightward` lines continue to `+∞`, `leftward` ones to `-∞`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoleInventory {
    pub rightward: Vec<Complex64>,
    pub leftward: Vec<Complex64>,
}

impl PoleInventory {
    pub fn leftmost_rightward(&self) -> Option<f64> {
        self.rightward.iter().map(|z| z.re).reduce(f64::min)
    }

    pub fn rightmost_leftward(&self) -> Option<f64> {
        self.leftward.iter().map(|z| z.re).reduce(f64::max)
    }

    /// Largest `|Im|` among the pole lines; the integrand is concentrated
    /// roughly within this distance of the real axis.
    pub fn imaginary_extent(&self) -> f64 {
        self.rightward
            .iter()
            .chain(&self.leftward)
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    /// `c = (leftmost rightward pole) - 0.5` capped at `-0.25`, or half a
    /// unit right of the leftward lines; the midpoint if both are present
    /// and close.
    pub fn default_offset(&self) -> f64 {
        match (self.rightmost_leftward(), self.leftmost_rightward()) {
            (None, None) => 0.0,
            (None, Some(hi)) => (hi - 0.5).min(-0.25),
            (Some(lo), None) => lo + 0.5,
            (Some(lo), Some(hi)) => {
                if hi - lo >= 1.0 {
                    hi - 0.5
                } else {
                    (lo + hi) / 2.0
                }
            }
        }
    }

    pub fn check_offset(&self, c: f64) -> Result<()> {
        if let Some(hi) = self.leftmost_rightward() {
            if c > hi - MIN_POLE_MARGIN {
                return Err(Error::Contour(format!(
                    "offset c = {c} is not at least {MIN_POLE_MARGIN} left of the pole line at Re s = {hi}"
                )));
            }
        }
        if let Some(lo) = self.rightmost_leftward() {
            if c < lo + MIN_POLE_MARGIN {
                return Err(Error::Contour(format!(
                    "offset c = {c} is not at least {MIN_POLE_MARGIN} right of the pole line at Re s = {lo}"
                )));
            }
        }
        Ok(())
    }
}

/// `F(s)` in `(1/2πi) ∫ u^{-s} F(s) ds`.
pub trait MellinIntegrand: Sync {
    fn eval(&self, s: Complex64) -> Result<Complex64>;
    fn poles(&self) -> PoleInventory;
}

/// `F(s)` multiplied by `(-4αs)^order`, the Mellin image of `∂ₓ^order` when
/// `u ∝ e^{4αx}`.
pub struct XDerivative<'a, T: MellinIntegrand + ?Sized> {
    pub inner: &'a T,
    pub alpha: f64,
    pub order: u32,
}

impl<T: MellinIntegrand + ?Sized> MellinIntegrand for XDerivative<'_, T> {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        Ok((-4.0 * self.alpha * s).powu(self.order) * self.inner.eval(s)?)
    }
    fn poles(&self) -> PoleInventory {
        self.inner.poles()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinResult {
    pub value: Complex64,
    /// Change under the last node doubling.
    pub error: f64,
    /// `(1/2π) ∫ |u^{-s} F(s)| dy`, the scale cancellation is measured against.
    pub l1: f64,
    pub offset: f64,
    pub half_length: f64,
    pub nodes_per_unit: usize,
}

struct LineSum {
    value: Complex64,
    l1: f64,
    peak: f64,
}

fn line_sum<G>(g: &G, half_panels: usize, n: usize) -> Result<LineSum>
where
    G: Fn(f64) -> Result<Complex64>,
{
    let (nodes, weights) = gauss_legendre(n);
    let h = PANEL_WIDTH / 2.0;
    let mut value = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    let mut peak = 0.0f64;
    let np = half_panels as i64;
    for j in -np..np {
        let mid = (j as f64 + 0.5) * PANEL_WIDTH;
        for (x, w) in nodes.iter().zip(&weights) {
            let f = g(mid + h * x)?;
            value += h * w * f;
            l1 += h * w * f.norm();
            peak = peak.max(f.norm());
        }
    }
    Ok(LineSum {
        value: value / (2.0 * PI),
        l1: l1 / (2.0 * PI),
        peak,
    })
}

/// `(1/2πi) ∫_{c-iT}^{c+iT} u^{-s} F(s) ds` by composite Gauss–Legendre
/// panels of width ½ in `Im s`.
///
/// `T` starts at `spec.half_length` plus the imaginary extent of the pole
/// lines and grows by ×1.5 until `|u^{-s}F|` at both ends is below
/// `rel_tol` times its peak. The node count is then doubled until two
/// successive results agree to `rel_tol` relative (or to the roundoff floor
/// set by the L1 norm of the integrand).
pub fn inverse_mellin<F: MellinIntegrand + ?Sized>(f: &F, u: f64, spec: &ContourSpec) -> Result<MellinResult> {
    spec.validate()?;
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("Mellin variable u must be positive, got {u}")));
    }
    let poles = f.poles();
    let c = spec.c.unwrap_or_else(|| poles.default_offset());
    poles.check_offset(c)?;
    let ln_u = u.ln();
    let g = |y: f64| -> Result<Complex64> {
        let s = Complex64::new(c, y);
        Ok((-s * ln_u).exp() * f.eval(s)?)
    };

    let mut n = (spec.nodes_per_unit / 2).max(4);
    let mut t_half = spec.half_length + poles.imaginary_extent();
    let (half_panels, mut sum) = loop {
        let half_panels = (t_half / PANEL_WIDTH).ceil() as usize;
        let sum = line_sum(&g, half_panels, n)?;
        let t_end = half_panels as f64 * PANEL_WIDTH;
        let end = g(t_end)?.norm().max(g(-t_end)?.norm());
        if end <= spec.rel_tol * sum.peak {
            break (half_panels, sum);
        }
        t_half = t_end * 1.5;
        if t_half > spec.max_half_length {
            return Err(Error::Contour(format!(
                "integrand still at {:.3e} of its peak at |Im s| = {t_end}; increase max_half_length",
                end / sum.peak
            )));
        }
    };
    for _ in 0..=EXTRA_DOUBLINGS {
        let finer = line_sum(&g, half_panels, 2 * n)?;
        let err = (finer.value - sum.value).norm();
        let floor = 256.0 * f64::EPSILON * finer.l1;
        if err <= (spec.rel_tol * finer.value.norm()).max(floor) {
            return Ok(MellinResult {
                value: finer.value,
                error: err,
                l1: finer.l1,
                offset: c,
                half_length: half_panels as f64 * PANEL_WIDTH,
                nodes_per_unit: 4 * n,
            });
        }
        sum = finer;
        n *= 2;
    }
    Err(Error::convergence(
        "inverse Mellin quadrature",
        format!(
            "no agreement to rel_tol = {} after {EXTRA_DOUBLINGS} extra node doublings",
            spec.rel_tol
        ),
    ))
}

/// `Π Γ(a_l - s)`, the Mellin-Barnes integrand of `G⁴⁰₀₄`.
pub struct FourGamma {
    pub a: [Complex64; 4],
}

impl MellinIntegrand for FourGamma {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        self.a
            .iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, &a| Ok(acc * gamma_c(a - s)?))
    }
    fn poles(&self) -> PoleInventory {
        PoleInventory {
            rightward: self.a.to_vec(),
            leftward: vec![],
        }
    }
}

/// `Π Γ(1 - a_l + s)`, the Mellin-Barnes integrand of `G⁰⁴₄₀`.
struct FourGammaReflected {
    a: [Complex64; 4],
}

impl MellinIntegrand for FourGammaReflected {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        self.a
            .iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, &a| Ok(acc * gamma_c(1.0 - a + s)?))
    }
    fn poles(&self) -> PoleInventory {
        PoleInventory {
            rightward: vec![],
            leftward: self.a.iter().map(|&a| a - 1.0).collect(),
        }
    }
}

/// `G⁴⁰₀₄(z | b₁..b₄) = (1/2πi) ∫ Π Γ(b_l - s) z^s ds`, contour left of all poles.
pub fn meijer_g4004(z: f64, b: [Complex64; 4], spec: &ContourSpec) -> Result<MellinResult> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("G⁴⁰₀₄ needs z > 0, got {z}")));
    }
    inverse_mellin(&FourGamma { a: b }, 1.0 / z, spec)
}

/// `G⁰⁴₄₀(z | a₁..a₄) = (1/2πi) ∫ Π Γ(1 - a_l + s) z^s ds`, contour right of all poles.
pub fn meijer_g0440(z: f64, a: [Complex64; 4], spec: &ContourSpec) -> Result<MellinResult> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("G⁰⁴₄₀ needs z > 0, got {z}")));
    }
    // z^s = (1/z)^{-s}
    inverse_mellin(&FourGammaReflected { a }, 1.0 / z, spec)
}

/// Parameters of the Liouville Wigner function as `G⁴⁰₀₄(1/u | a)`.
pub fn liouville_meijer_params(k_l: f64, k_r: f64, p: Complex64, sys: &MorseSystem) -> [Complex64; 4] {
    let q = p / sys.hbar;
    let d = 2.0 * sys.alpha;
    [
        I * (q + k_l) / d,
        I * (q - k_l) / d,
        -I * (q - k_r) / d,
        -I * (q + k_r) / d,
    ]
}

/// Which factor family to use for scattering states at integer `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FactorMode {
    /// `w_real` everywhere (the production path).
    #[default]
    Production,
    /// `w_integer` for integer `b`, to cross-check against production.
    Verify,
}

/// The assembled integrand `w(s - ip/2αħ, k_L) w(s + ip/2αħ, k_R)`.
#[derive(Debug, Clone, Copy)]
pub struct WignerIntegrand {
    pub left: FactorSolution,
    pub right: FactorSolution,
    /// `ip/2αħ`.
    pub shift: Complex64,
}

impl MellinIntegrand for WignerIntegrand {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.left.eval(s - self.shift)? * self.right.eval(s + self.shift)?)
    }
    fn poles(&self) -> PoleInventory {
        let rightward = self
            .left
            .pole_lines()
            .into_iter()
            .map(|t| t + self.shift)
            .chain(self.right.pole_lines().into_iter().map(|t| t - self.shift))
            .collect();
        PoleInventory {
            rightward,
            leftward: vec![],
        }
    }
}

/// A Morse system with a fixed pair of states, ready to evaluate `ρ_{LR}`.
#[derive(Debug, Clone, Copy)]
pub struct WignerProblem {
    pub sys: MorseSystem,
    pub left: SpectralLabel,
    pub right: SpectralLabel,
    left_factor: FactorSolution,
    right_factor: FactorSolution,
}

impl WignerProblem {
    pub fn new(sys: MorseSystem, left: SpectralLabel, right: SpectralLabel, mode: FactorMode) -> Result<Self> {
        sys.validate()?;
        let pick = |label: &SpectralLabel| match mode {
            FactorMode::Production => FactorSolution::for_label(&sys, label),
            FactorMode::Verify => FactorSolution::for_label_verify(&sys, label),
        };
        Ok(WignerProblem {
            sys,
            left,
            right,
            left_factor: pick(&left)?,
            right_factor: pick(&right)?,
        })
    }

    /// Same states with the left factor's wavenumber replaced, for the
    /// wrong-eigenvalue negative control.
    pub fn with_left_factor(mut self, factor: FactorSolution) -> Self {
        self.left_factor = factor;
        self
    }

    pub fn left_factor(&self) -> &FactorSolution {
        &self.left_factor
    }

    pub fn right_factor(&self) -> &FactorSolution {
        &self.right_factor
    }

    pub fn integrand(&self, p: Complex64) -> WignerIntegrand {
        WignerIntegrand {
            left: self.left_factor,
            right: self.right_factor,
            shift: I * p / (2.0 * self.sys.alpha * self.sys.hbar),
        }
    }

    pub fn point(&self, x: f64, p: Complex64, spec: &ContourSpec) -> Result<MellinResult> {
        inverse_mellin(&self.integrand(p), u_of_x(x, &self.sys), spec)
    }

    /// `∂ₓ^order ρ` through the weight `(-4αs)^order` in the integrand.
    pub fn x_derivative(&self, x: f64, p: Complex64, order: u32, spec: &ContourSpec) -> Result<MellinResult> {
        let inner = self.integrand(p);
        let weighted = XDerivative {
            inner: &inner,
            alpha: self.sys.alpha,
            order,
        };
        inverse_mellin(&weighted, u_of_x(x, &self.sys), spec)
    }
}

pub fn assemble_integrand(
    sys: &MorseSystem,
    left: &SpectralLabel,
    right: &SpectralLabel,
    p: Complex64,
) -> Result<WignerIntegrand> {
    Ok(WignerProblem::new(*sys, *left, *right, FactorMode::Production)?.integrand(p))
}

pub fn wigner_point(
    sys: &MorseSystem,
    left: &SpectralLabel,
    right: &SpectralLabel,
    x: f64,
    p: Complex64,
    spec: &ContourSpec,
) -> Result<MellinResult> {
    WignerProblem::new(*sys, *left, *right, FactorMode::Production)?.point(x, p, spec)
}

pub fn wigner_x_derivative(
    sys: &MorseSystem,
    left: &SpectralLabel,
    right: &SpectralLabel,
    x: f64,
    p: Complex64,
    order: u32,
    spec: &ContourSpec,
) -> Result<MellinResult> {
    if !(order == 1 || order == 2) {
        return Err(Error::InvalidParameter(format!(
            "derivative order must be 1 or 2, got {order}"
        )));
    }
    WignerProblem::new(*sys, *left, *right, FactorMode::Production)?.x_derivative(x, p, order, spec)
}

/// Where a field's values came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSource {
    Closed,
    Oracle,
    Series,
}

/// `ρ_{LR}` sampled on a rectangular grid, row-major with `p` fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerField {
    pub system: MorseSystem,
    pub left: SpectralLabel,
    pub right: SpectralLabel,
    pub source: FieldSource,
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    pub values: Vec<Complex64>,
    pub errors: Vec<f64>,
    /// `None` where the point evaluated, the error message where it failed
    /// (the value is then stored as zero).
    pub failures: Vec<Option<String>>,
    pub convention: String,
    pub contour: Option<ContourSpec>,
    /// Factor applied by [`WignerField::normalize`], if any.
    pub normalization: Option<f64>,
}

impl WignerField {
    pub fn index(&self, ix: usize, ip: usize) -> usize {
        ix * self.p.len() + ip
    }

    pub fn at(&self, ix: usize, ip: usize) -> Complex64 {
        self.values[self.index(ix, ip)]
    }

    pub fn failure_count(&self) -> usize {
        self.failures.iter().filter(|f| f.is_some()).count()
    }

    pub fn is_diagonal(&self) -> bool {
        self.left == self.right
    }

    /// `max |Im ρ| / max |ρ|` over the grid.
    pub fn max_imag_ratio(&self) -> f64 {
        let scale = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let im = self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
        if scale > 0.0 {
            im / scale
        } else {
            0.0
        }
    }

    /// Trapezoid `∫∫ f(x, p, ρ) dx dp` over the grid.
    pub fn trapezoid<F: Fn(f64, f64, Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        let wx = trapezoid_weights(&self.x);
        let wp = trapezoid_weights(&self.p);
        let mut sum = Complex64::new(0.0, 0.0);
        for (ix, &x) in self.x.iter().enumerate() {
            for (ip, &p) in self.p.iter().enumerate() {
                sum += wx[ix] * wp[ip] * f(x, p, self.at(ix, ip));
            }
        }
        sum
    }

    /// Rescales a diagonal bound-state field so that `∫∫ρ dx dp = 1`.
    pub fn normalize(&mut self) -> Result<f64> {
        if !self.is_diagonal() || !self.left.is_bound() {
            return Err(Error::InvalidParameter(
                "only diagonal bound-state fields can be normalized".into(),
            ));
        }
        if self.failure_count() > 0 {
            return Err(Error::InvalidParameter("field has failed points".into()));
        }
        let total = self.trapezoid(|_, _, r| r).re;
        if !(total.abs() > 0.0) {
            return Err(Error::Degenerate("field integrates to zero".into()));
        }
        let scale = 1.0 / total;
        for v in &mut self.values {
            *v *= scale;
        }
        for e in &mut self.errors {
            *e *= scale.abs();
        }
        self.normalization = Some(self.normalization.unwrap_or(1.0) * scale);
        Ok(scale)
    }
}

pub(crate) fn trapezoid_weights(grid: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let mut w = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let h = grid[i + 1] - grid[i];
        w[i] += h / 2.0;
        w[i + 1] += h / 2.0;
    }
    w
}

pub(crate) fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::GridMismatch(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !v.is_finite()) || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::GridMismatch(format!(
            "{name} grid must be finite and strictly ascending"
        )));
    }
    Ok(())
}

/// `n` equally spaced points on `[lo, hi]` (just `lo` when `n = 1`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Evaluates `f` on every grid point with the given execution mode and packs
/// the results, recording per-point failures.
pub fn build_field<F>(
    system: MorseSystem,
    left: SpectralLabel,
    right: SpectralLabel,
    source: FieldSource,
    xs: &[f64],
    ps: &[f64],
    exec: Execution,
    f: F,
) -> Result<WignerField>
where
    F: Fn(f64, f64) -> Result<(Complex64, f64)> + Sync + Send,
{
    check_grid("x", xs)?;
    check_grid("p", ps)?;
    let points: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ps.iter().map(move |&p| (x, p))).collect();
    let results = exec.map(&points, |&(x, p)| f(x, p));
    let mut values = Vec::with_capacity(points.len());
    let mut errors = Vec::with_capacity(points.len());
    let mut failures = Vec::with_capacity(points.len());
    for r in results {
        match r {
            Ok((v, e)) => {
                values.push(v);
                errors.push(e);
                failures.push(None);
            }
            Err(e) => {
                values.push(Complex64::new(0.0, 0.0));
                errors.push(0.0);
                failures.push(Some(e.to_string()));
            }
        }
    }
    Ok(WignerField {
        system,
        left,
        right,
        source,
        x: xs.to_vec(),
        p: ps.to_vec(),
        values,
        errors,
        failures,
        convention: CONVENTION.to_string(),
        contour: None,
        normalization: None,
    })
}

/// Grid map of [`wigner_point`].
pub fn wigner_field(
    sys: &MorseSystem,
    left: &SpectralLabel,
    right: &SpectralLabel,
    xs: &[f64],
    ps: &[f64],
    spec: &ContourSpec,
    exec: Execution,
) -> Result<WignerField> {
    spec.validate()?;
    let problem = WignerProblem::new(*sys, *left, *right, FactorMode::Production)?;
    let mut field = build_field(*sys, *left, *right, FieldSource::Closed, xs, ps, exec, |x, p| {
        let r = problem.point(x, Complex64::new(p, 0.0), spec)?;
        Ok((r.value, r.error))
    })?;
    field.contour = Some(*spec);
    Ok(field)
}
