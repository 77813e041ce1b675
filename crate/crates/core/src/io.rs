//! File formats: the `x,p,re,im,err` CSV, the versioned JSON envelope and a
//! PPM heatmap of `Re ρ`.
//!
//! Floats are written with Rust's shortest round-trip formatting, so both the
//! CSV and the JSON reproduce every value bit for bit.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::mellin::WignerField;
use crate::model::{MorseSystem, SpectralLabel};
use crate::schrodinger::WaveFunction;
use crate::{Error, Result};

pub const SCHEMA: &str = "moyal-morse/1";
pub const CSV_HEADER: &str = "x,p,re,im,err";

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("i/o: {e}"))
}

pub fn write_csv<W: Write>(field: &WignerField, mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
    for (ix, &x) in field.x.iter().enumerate() {
        for (ip, &p) in field.p.iter().enumerate() {
            let i = field.index(ix, ip);
            let v = field.values[i];
            writeln!(out, "{x},{p},{:e},{:e},{:e}", v.re, v.im, field.errors[i]).map_err(io_err)?;
        }
    }
    Ok(())
}

pub fn field_csv(field: &WignerField) -> String {
    let mut buf = Vec::new();
    write_csv(field, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("csv is ascii")
}

/// One parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub x: f64,
    pub p: f64,
    pub value: Complex64,
    pub err: f64,
}

pub fn read_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::InvalidParameter(format!(
                "expected header {CSV_HEADER:?}, found {other:?}"
            )))
        }
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(n, line)| {
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidParameter(format!("csv row {}: {e}", n + 2)))?;
            if cols.len() != 5 {
                return Err(Error::InvalidParameter(format!(
                    "csv row {}: expected 5 columns, found {}",
                    n + 2,
                    cols.len()
                )));
            }
            Ok(CsvRow {
                x: cols[0],
                p: cols[1],
                value: Complex64::new(cols[2], cols[3]),
                err: cols[4],
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct FieldEnvelope {
    schema: String,
    kind: String,
    #[serde(flatten)]
    field: WignerField,
}

/// JSON envelope carrying the field, its parameters, labels, source,
/// contour metadata and failure mask.
pub fn field_to_json(field: &WignerField) -> String {
    let env = FieldEnvelope {
        schema: SCHEMA.to_string(),
        kind: "wigner".to_string(),
        field: field.clone(),
    };
    serde_json::to_string_pretty(&env).expect("field serializes")
}

pub fn field_from_json(text: &str) -> Result<WignerField> {
    let env: FieldEnvelope =
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("envelope: {e}")))?;
    if env.schema != SCHEMA || env.kind != "wigner" {
        return Err(Error::InvalidParameter(format!(
            "unsupported envelope {} / {}",
            env.schema, env.kind
        )));
    }
    let f = env.field;
    let n = f.x.len() * f.p.len();
    if f.values.len() != n || f.errors.len() != n || f.failures.len() != n {
        return Err(Error::GridMismatch(format!(
            "envelope holds {} values for a {}x{} grid",
            f.values.len(),
            f.x.len(),
            f.p.len()
        )));
    }
    Ok(f)
}

/// A wave function sampled on an `x` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSamples {
    pub system: MorseSystem,
    pub label: SpectralLabel,
    pub normalization: String,
    pub x: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl WaveSamples {
    pub fn sample(psi: &WaveFunction, xs: &[f64]) -> Result<Self> {
        Ok(WaveSamples {
            system: psi.sys,
            label: psi.label,
            normalization: psi.normalization_note().to_string(),
            x: xs.to_vec(),
            values: xs.iter().map(|&x| psi.eval(x)).collect::<Result<_>>()?,
        })
    }

    /// CSV with columns `x,re,im`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,re,im\n");
        for (x, v) in self.x.iter().zip(&self.values) {
            s.push_str(&format!("{x},{:e},{:e}\n", v.re, v.im));
        }
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Env<'a> {
            schema: &'a str,
            kind: &'a str,
            #[serde(flatten)]
            samples: &'a WaveSamples,
        }
        serde_json::to_string_pretty(&Env {
            schema: SCHEMA,
            kind: "wavefunction",
            samples: self,
        })
        .expect("samples serialize")
    }
}

/// Binary PPM (P6) heatmap of `Re ρ`: `x` runs left to right, `p` bottom to
/// top; blue is negative, red positive, white zero, scaled by `max |Re ρ|`.
/// Each grid point becomes a `cell × cell` block.
pub fn heatmap_ppm(field: &WignerField, cell: usize) -> Vec<u8> {
    let cell = cell.max(1);
    let (nx, np) = (field.x.len(), field.p.len());
    let (w, h) = (nx * cell, np * cell);
    let scale = field.values.iter().map(|v| v.re.abs()).fold(0.0, f64::max);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    for row in 0..h {
        let ip = np - 1 - row / cell;
        for col in 0..w {
            let ix = col / cell;
            let t = if scale > 0.0 { field.at(ix, ip).re / scale } else { 0.0 };
            let fade = (255.0 * (1.0 - t.abs())).round().clamp(0.0, 255.0) as u8;
            out.extend_from_slice(&if t >= 0.0 { [255, fade, fade] } else { [fade, fade, 255] });
        }
    }
    out
}
