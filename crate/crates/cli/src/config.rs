//! Flag parsing and resolution of the run configuration.
//!
//! Precedence is flags > config file > built-in defaults (`ħ = m = α = κ = 1`,
//! `β = 0`). `--b` resets `β` so that `βκ/α = b` for whatever `α, κ` are in
//! effect.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moyal_morse::exec::Execution;
use moyal_morse::mellin::{linspace, ContourSpec, FieldSource};
use moyal_morse::model::{MorseSystem, SpectralLabel};
use num_complex::Complex64;
use serde::Serialize;

use crate::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "moyal-morse",
    version,
    about = "Stationary Wigner functions of the Morse potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List bound-state energies.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a Wigner function on a grid and write CSV + JSON.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SourceArg::Closed)]
        source: SourceArg,
        /// Also write a PPM heatmap of Re ρ.
        #[arg(long)]
        heatmap: bool,
    },
    /// Run verification suites and exit 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Negative control: multiply ρ by (1 + ε cos αx) before the star check.
        #[arg(long, num_args = 0..=1, default_missing_value = "0.01")]
        perturb: Option<f64>,
    },
    /// Evaluate a special function, printing 17 significant digits.
    Specfun {
        #[command(subcommand)]
        action: SpecfunAction,
    },
    /// Factor solutions of the difference equation.
    Factor {
        #[command(subcommand)]
        action: FactorAction,
    },
    /// Schrödinger-side reference computations.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpecfunAction {
    /// NAME is one of gamma, lngamma, rgamma, pochhammer, besselk, kummer_m,
    /// tricomi_u, whittaker_m, whittaker_w, hyp2f1, laguerre. Complex
    /// arguments are written like `1.5`, `2i` or `0.5-1.25i`.
    Eval {
        name: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FactorAction {
    /// Evaluate the left factor at the given points.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Evaluation point (repeatable).
        #[arg(long = "t", required = true, allow_hyphen_values = true)]
        t: Vec<String>,
        /// Use the explicit integer-b family where it applies.
        #[arg(long)]
        explicit: bool,
    },
    /// Difference-equation residuals of the left factor on sample points.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = -0.25, allow_hyphen_values = true)]
        re: f64,
        #[arg(long)]
        explicit: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleAction {
    /// Brute-force Wigner transform of the wave functions.
    Wigner {
        #[command(flatten)]
        common: Common,
    },
    /// Sample the left wave function on the x grid.
    Wavefn {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Closed,
    Oracle,
    Series,
}

impl From<SourceArg> for FieldSource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Closed => FieldSource::Closed,
            SourceArg::Oracle => FieldSource::Oracle,
            SourceArg::Series => FieldSource::Series,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Difference,
    Star,
    Oracle,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// JSON file with keys hbar, mass, alpha, kappa, beta.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Shape parameter b = βκ/α.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long = "kL")]
    pub k_l: Option<f64>,
    #[arg(long = "kR")]
    pub k_r: Option<f64>,
    /// Bound state for both sides (or the left side with --nuR).
    #[arg(long)]
    pub nu: Option<u32>,
    #[arg(long = "nuR")]
    pub nu_r: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub pmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub pmax: Option<f64>,
    #[arg(long)]
    pub np: Option<usize>,
    /// Contour offset c (default: placed from the pole inventory).
    #[arg(long = "contour-c", allow_hyphen_values = true)]
    pub contour_c: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Evaluate grids on one thread.
    #[arg(long)]
    pub serial: bool,
}

/// Everything a command needs, after precedence has been applied.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub system: MorseSystem,
    pub b: f64,
    pub left: SpectralLabel,
    pub right: SpectralLabel,
    pub x: GridAxis,
    pub p: GridAxis,
    pub contour: ContourSpec,
    pub tol: Option<f64>,
    #[serde(skip)]
    pub out: PathBuf,
    #[serde(skip)]
    pub exec: Execution,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.n)
    }
}

/// Grid used when no grid flags are given.
#[derive(Debug, Clone, Copy)]
pub struct GridDefaults {
    pub x: GridAxis,
    pub p: GridAxis,
}

pub const FIELD_GRID: GridDefaults = GridDefaults {
    x: GridAxis {
        min: -2.0,
        max: 4.0,
        n: 25,
    },
    p: GridAxis {
        min: -3.0,
        max: 3.0,
        n: 25,
    },
};

pub const CHECK_GRID: GridDefaults = GridDefaults {
    x: GridAxis {
        min: -1.0,
        max: 2.0,
        n: 5,
    },
    p: GridAxis {
        min: -1.5,
        max: 1.5,
        n: 5,
    },
};

impl Common {
    pub fn resolve(&self, grid: GridDefaults) -> Result<RunConfig, Failure> {
        let mut system = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                MorseSystem::from_json(&text).map_err(|e| Failure::Usage(e.to_string()))?
            }
            None => MorseSystem::default(),
        };
        if let Some(b) = self.b {
            system = system.with_b(b).map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let (left, right) = match (self.nu, self.nu_r) {
            (Some(nl), nr) => {
                if self.k_l.is_some() || self.k_r.is_some() {
                    return Err(Failure::Usage("--nu cannot be combined with --kL/--kR".into()));
                }
                (
                    SpectralLabel::Bound { nu: nl },
                    SpectralLabel::Bound { nu: nr.unwrap_or(nl) },
                )
            }
            (None, Some(_)) => return Err(Failure::Usage("--nuR needs --nu".into())),
            (None, None) => {
                let kl = self.k_l.unwrap_or(1.0);
                let kr = self.k_r.unwrap_or(kl);
                (SpectralLabel::Scattering { k: kl }, SpectralLabel::Scattering { k: kr })
            }
        };
        for label in [&left, &right] {
            label.validate(&system).map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let axis = |lo: Option<f64>, hi: Option<f64>, n: Option<usize>, d: GridAxis, name: &str| {
            let a = GridAxis {
                min: lo.unwrap_or(d.min),
                max: hi.unwrap_or(d.max),
                n: n.unwrap_or(d.n),
            };
            if a.n == 0 || !(a.min.is_finite() && a.max.is_finite()) || (a.n > 1 && !(a.max > a.min)) {
                return Err(Failure::Usage(format!("bad {name} grid {a:?}")));
            }
            Ok(a)
        };
        let x = axis(self.xmin, self.xmax, self.nx, grid.x, "x")?;
        let p = axis(self.pmin, self.pmax, self.np, grid.p, "p")?;
        let contour = ContourSpec {
            c: self.contour_c,
            ..ContourSpec::default()
        };
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
            }
        }
        Ok(RunConfig {
            b: system.b(),
            system,
            left,
            right,
            x,
            p,
            contour,
            tol: self.tol,
            out: self.out.clone(),
            exec: if self.serial {
                Execution::Serial
            } else {
                Execution::Parallel
            },
        })
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| Failure::Usage(format!("cannot parse {s:?} as a complex number")))
}
