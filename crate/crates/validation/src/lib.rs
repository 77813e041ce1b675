//! Reporting harness for the acceptance suite: each criterion is a set of
//! measured legs with tolerances, printed as one PASS/FAIL line per criterion.

use std::fmt::Display;
use std::time::{Duration, Instant};

/// One measured quantity compared against a tolerance.
pub struct Leg {
    pub name: String,
    pub measured: Result<f64, String>,
    pub tol: f64,
    /// `true` for legs that must exceed `tol` (negative controls).
    pub above: bool,
    /// Informative legs are printed but do not decide the criterion.
    pub informative: bool,
}

impl Leg {
    pub fn below<E: Display>(name: impl Into<String>, measured: Result<f64, E>, tol: f64) -> Self {
        Leg {
            name: name.into(),
            measured: measured.map_err(|e| e.to_string()),
            tol,
            above: false,
            informative: false,
        }
    }

    pub fn above<E: Display>(name: impl Into<String>, measured: Result<f64, E>, tol: f64) -> Self {
        Leg {
            above: true,
            ..Leg::below(name, measured, tol)
        }
    }

    pub fn info(self) -> Self {
        Leg {
            informative: true,
            ..self
        }
    }

    pub fn pass(&self) -> bool {
        match self.measured {
            Ok(m) if self.above => m > self.tol,
            Ok(m) => m < self.tol,
            Err(_) => false,
        }
    }
}

pub fn criterion(n: u32, title: &str, budget: Duration, body: impl FnOnce() -> Vec<Leg>) -> bool {
    let start = Instant::now();
    let mut legs = body();
    let elapsed = start.elapsed();
    legs.push(Leg::below::<String>(
        format!("runtime {:.1} s", elapsed.as_secs_f64()),
        Ok(elapsed.as_secs_f64()),
        budget.as_secs_f64(),
    ));
    let pass = legs.iter().filter(|l| !l.informative).all(Leg::pass);
    println!("criterion {n}: {} {title}", if pass { "PASS" } else { "FAIL" });
    for l in &legs {
        let mark = match (l.informative, l.pass()) {
            (true, _) => "info",
            (false, true) => "ok  ",
            (false, false) => "FAIL",
        };
        let cmp = if l.above { ">" } else { "<" };
        match &l.measured {
            Ok(m) => println!("    {mark} {}: {m:.3e} (want {cmp} {:.0e})", l.name, l.tol),
            Err(e) => println!("    {mark} {}: error: {e}", l.name),
        }
    }
    pass
}

/// Prints the summary line and exits with status 1 unless every criterion passed.
pub fn finish(results: &[bool]) {
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
