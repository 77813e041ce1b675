use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use moyal_morse::calibrate;
use moyal_morse::factors::{difference_report, sample_points, FactorSolution};
use moyal_morse::io::{field_csv, field_to_json, heatmap_ppm, WaveSamples};
use moyal_morse::mellin::{build_field, wigner_field, FactorMode, FieldSource, WignerField, WignerProblem};
use moyal_morse::model::{bound_count, energy_of, v_of_x, SpectralLabel};
use moyal_morse::schrodinger::{
    wigner_series, wigner_transform_numeric, SeriesControlShells, TransformControl, WaveFunction,
};
use moyal_morse::specfun::{
    bessel_k, gamma_c, gauss_2f1, kummer_m, laguerre_assoc, ln_gamma_c, pochhammer, rgamma, tricomi_u, whittaker_m,
    whittaker_w, QuadratureControl, SeriesControl,
};
use moyal_morse::starverify::{star_residual_grid, StarOptions};

use crate::config::{parse_complex, RunConfig, Suite};
use crate::manifest::Outputs;
use crate::Failure;

const DIFFERENCE_TOL: f64 = 1e-7;
const STAR_TOL: f64 = 1e-6;
const ORACLE_TOL: f64 = 1e-4;

fn core(e: moyal_morse::Error) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn spectrum(cfg: &RunConfig, as_json: bool) -> Result<bool, Failure> {
    let sys = &cfg.system;
    let rows: Vec<(u32, f64)> = (0..bound_count(sys))
        .map(|nu| Ok((nu, energy_of(&SpectralLabel::Bound { nu }, sys).map_err(core)?)))
        .collect::<Result<_, Failure>>()?;
    let per_k2 = sys.hbar * sys.hbar / (2.0 * sys.mass);
    if as_json {
        let bound: Vec<_> = rows.iter().map(|(nu, e)| json!({ "nu": nu, "energy": e })).collect();
        let doc = json!({ "b": cfg.b, "bound": bound, "scattering_energy_per_k2": per_k2 });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!("b = {}", cfg.b);
        println!("{:>4}  {:>24}", "nu", "E");
        for (nu, e) in &rows {
            println!("{nu:>4}  {e:>24.17}");
        }
        println!("scattering: E(k) = {per_k2} k^2, k > 0");
    }
    Ok(true)
}

fn field_for(cfg: &RunConfig, source: FieldSource) -> Result<WignerField, Failure> {
    let (xs, ps) = (cfg.x.points(), cfg.p.points());
    let sys = cfg.system;
    match source {
        FieldSource::Closed => {
            wigner_field(&sys, &cfg.left, &cfg.right, &xs, &ps, &cfg.contour, cfg.exec).map_err(core)
        }
        FieldSource::Oracle => {
            let l = WaveFunction::for_label(&sys, &cfg.left).map_err(core)?;
            let r = WaveFunction::for_label(&sys, &cfg.right).map_err(core)?;
            let ctl = TransformControl::default();
            build_field(sys, cfg.left, cfg.right, source, &xs, &ps, cfg.exec, |x, p| {
                let t = wigner_transform_numeric(&l, &r, x, p, &ctl)?;
                Ok((t.value, t.error))
            })
            .map_err(core)
        }
        FieldSource::Series => {
            let (SpectralLabel::Scattering { k: kl }, SpectralLabel::Scattering { k: kr }) = (cfg.left, cfg.right)
            else {
                return Err(Failure::Usage("the series source covers scattering states only".into()));
            };
            let ctl = SeriesControlShells::default();
            build_field(sys, cfg.left, cfg.right, source, &xs, &ps, cfg.exec, |x, p| {
                let (v, tail) = wigner_series(&sys, v_of_x(x, &sys), p, kl, kr, &ctl)?;
                Ok((v, tail.last_term_magnitude))
            })
            .map_err(core)
        }
    }
}

pub fn eval(cfg: &RunConfig, source: FieldSource, heatmap: bool, out: &mut Outputs) -> Result<bool, Failure> {
    let field = field_for(cfg, source)?;
    out.write("wigner.csv", field_csv(&field).as_bytes())?;
    out.write("wigner.json", field_to_json(&field).as_bytes())?;
    if heatmap {
        out.write("wigner.ppm", &heatmap_ppm(&field, 4))?;
    }
    let failures = field.failure_count();
    println!(
        "{} points, {} failed, source {:?}{}",
        field.values.len(),
        failures,
        source,
        if field.is_diagonal() {
            format!(", max |Im|/max |Re| = {:.3e}", field.max_imag_ratio())
        } else {
            String::new()
        }
    );
    if let Some(msg) = field.failures.iter().flatten().next() {
        eprintln!("first failure: {msg}");
    }
    Ok(failures == 0)
}

#[derive(Debug, Serialize)]
struct Check {
    suite: &'static str,
    name: String,
    measured: Option<f64>,
    tolerance: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl Check {
    fn new(suite: &'static str, name: String, result: moyal_morse::Result<f64>, tolerance: f64) -> Self {
        match result {
            Ok(m) => Check {
                suite,
                name,
                measured: Some(m),
                tolerance,
                pass: m <= tolerance,
                error: None,
            },
            Err(e) => Check {
                suite,
                name,
                measured: None,
                tolerance,
                pass: false,
                error: Some(e.to_string()),
            },
        }
    }
}

fn distinct_labels(cfg: &RunConfig) -> Vec<(&'static str, SpectralLabel)> {
    if cfg.left == cfg.right {
        vec![("left=right", cfg.left)]
    } else {
        vec![("left", cfg.left), ("right", cfg.right)]
    }
}

fn difference_checks(cfg: &RunConfig) -> Vec<Check> {
    let samples = sample_points(20, -0.25, 3.0);
    let mut checks = Vec::new();
    for (side, label) in distinct_labels(cfg) {
        let mut run = |kind: &str, f: moyal_morse::Result<FactorSolution>| {
            let r = f.and_then(|w| difference_report(&w, &samples)).map(|r| r.max_residual);
            checks.push(Check::new(
                "difference",
                format!("{side} {label} {kind}"),
                r,
                DIFFERENCE_TOL,
            ));
        };
        run("production", FactorSolution::for_label(&cfg.system, &label));
        if !label.is_bound() && cfg.b.fract() == 0.0 && cfg.b >= 0.0 {
            run("explicit", FactorSolution::for_label_verify(&cfg.system, &label));
        }
    }
    checks
}

fn star_checks(cfg: &RunConfig, perturb: Option<f64>) -> Vec<Check> {
    let tol = cfg.tol.unwrap_or(STAR_TOL);
    let opts = StarOptions {
        perturb: perturb.unwrap_or(0.0),
        ..StarOptions::default()
    };
    let result = WignerProblem::new(cfg.system, cfg.left, cfg.right, FactorMode::Production).and_then(|pr| {
        star_residual_grid(
            &pr,
            FieldSource::Closed,
            &cfg.x.points(),
            &cfg.p.points(),
            &cfg.contour,
            &opts,
            cfg.exec,
        )
    });
    match result {
        Ok((l, r)) => vec![
            Check::new("star", "left equation".into(), Ok(l.max_residual), tol),
            Check::new("star", "right equation".into(), Ok(r.max_residual), tol),
        ],
        Err(e) => vec![Check::new("star", "star equations".into(), Err(e), tol)],
    }
}

fn oracle_checks(cfg: &RunConfig) -> Result<Vec<Check>, Failure> {
    let closed = field_for(cfg, FieldSource::Closed)?;
    let oracle = field_for(cfg, FieldSource::Oracle)?;
    let failed = closed.failures.iter().chain(&oracle.failures).flatten().next().cloned();
    let result = match failed {
        Some(msg) => Err(moyal_morse::Error::InvalidParameter(msg)),
        None => Ok(calibrate(&closed.values, &oracle.values).1),
    };
    Ok(vec![Check::new(
        "oracle",
        "closed form vs Wigner transform (calibrated)".into(),
        result,
        ORACLE_TOL,
    )])
}

pub fn verify(cfg: &RunConfig, suite: Suite, perturb: Option<f64>, out: &mut Outputs) -> Result<bool, Failure> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Difference | Suite::All) {
        checks.extend(difference_checks(cfg));
    }
    if matches!(suite, Suite::Star | Suite::All) {
        checks.extend(star_checks(cfg, perturb));
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        checks.extend(oracle_checks(cfg)?);
    }
    for c in &checks {
        let measured = c
            .measured
            .map_or_else(|| c.error.clone().unwrap_or_default(), |m| format!("{m:.3e}"));
        println!(
            "{} {:<10} {:<48} {} (tol {:.0e})",
            if c.pass { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            measured,
            c.tolerance
        );
    }
    let pass = checks.iter().all(|c| c.pass);
    let doc = json!({ "suite": suite, "pass": pass, "perturb": perturb, "checks": checks });
    out.write(
        "verify.json",
        serde_json::to_string_pretty(&doc).expect("json").as_bytes(),
    )?;
    Ok(pass)
}

pub fn specfun_eval(name: &str, args: &[String]) -> Result<bool, Failure> {
    let want = |n: usize| -> Result<Vec<Complex64>, Failure> {
        if args.len() != n {
            return Err(Failure::Usage(format!(
                "{name} takes {n} argument(s), got {}",
                args.len()
            )));
        }
        args.iter().map(|a| parse_complex(a)).collect()
    };
    let real = |z: Complex64| -> Result<f64, Failure> {
        if z.im != 0.0 {
            return Err(Failure::Usage(format!("{name}: expected a real argument, got {z}")));
        }
        Ok(z.re)
    };
    let count = |z: Complex64| -> Result<u32, Failure> {
        let r = real(z)?;
        if r < 0.0 || r.fract() != 0.0 {
            return Err(Failure::Usage(format!(
                "{name}: expected a non-negative integer, got {r}"
            )));
        }
        Ok(r as u32)
    };
    let quad = QuadratureControl::default();
    let value: moyal_morse::Result<Complex64> = match name {
        "gamma" => gamma_c(want(1)?[0]),
        "lngamma" => ln_gamma_c(want(1)?[0]),
        "rgamma" => Ok(rgamma(want(1)?[0])),
        "pochhammer" => {
            let a = want(2)?;
            Ok(pochhammer(a[0], count(a[1])?))
        }
        "besselk" => {
            let a = want(2)?;
            bessel_k(a[0], a[1], &quad)
        }
        "kummer_m" => {
            let a = want(3)?;
            kummer_m(a[0], a[1], a[2], &SeriesControl::default())
        }
        "tricomi_u" => {
            let a = want(3)?;
            tricomi_u(a[0], a[1], a[2]).map(|e| e.value)
        }
        "whittaker_m" => {
            let a = want(3)?;
            whittaker_m(a[0], a[1], a[2])
        }
        "whittaker_w" => {
            let a = want(3)?;
            whittaker_w(a[0], a[1], a[2])
        }
        "hyp2f1" => {
            let a = want(4)?;
            gauss_2f1(a[0], a[1], a[2], a[3]).map(|e| e.value)
        }
        "laguerre" => {
            let a = want(3)?;
            Ok(Complex64::new(
                laguerre_assoc(count(a[0])?, real(a[1])?, real(a[2])?),
                0.0,
            ))
        }
        other => return Err(Failure::Usage(format!("unknown special function {other:?}"))),
    };
    match value {
        Ok(v) => {
            println!("{:.16e} {:.16e}", v.re, v.im);
            Ok(true)
        }
        Err(e) => Err(Failure::Check(e.to_string())),
    }
}

fn left_factor(cfg: &RunConfig, explicit: bool) -> Result<FactorSolution, Failure> {
    if explicit {
        FactorSolution::for_label_verify(&cfg.system, &cfg.left)
    } else {
        FactorSolution::for_label(&cfg.system, &cfg.left)
    }
    .map_err(core)
}

pub fn factor_eval(cfg: &RunConfig, ts: &[String], explicit: bool) -> Result<bool, Failure> {
    let w = left_factor(cfg, explicit)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for t in ts {
        let t = parse_complex(t)?;
        match w.eval(t) {
            Ok(v) => rows.push(json!({ "t": t, "value": v })),
            Err(e) => {
                ok = false;
                rows.push(json!({ "t": t, "error": e.to_string() }));
            }
        }
    }
    let doc = json!({ "factor": w, "points": rows });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(ok)
}

pub fn factor_verify(cfg: &RunConfig, n: usize, re: f64, explicit: bool) -> Result<bool, Failure> {
    let w = left_factor(cfg, explicit)?;
    let report = difference_report(&w, &sample_points(n, re, 3.0)).map_err(|e| Failure::Check(e.to_string()))?;
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    Ok(report.max_residual <= cfg.tol.unwrap_or(DIFFERENCE_TOL))
}

pub fn oracle_wavefn(cfg: &RunConfig, out: &mut Outputs) -> Result<bool, Failure> {
    let psi = WaveFunction::for_label(&cfg.system, &cfg.left).map_err(core)?;
    let samples = WaveSamples::sample(&psi, &cfg.x.points()).map_err(|e| Failure::Check(e.to_string()))?;
    out.write("wavefn.csv", samples.to_csv().as_bytes())?;
    out.write("wavefn.json", samples.to_json().as_bytes())?;
    println!("{} samples of {}", samples.x.len(), cfg.left);
    Ok(true)
}
