//! Run manifest: every file a command writes is listed with its SHA-256.

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config: serde_json::Value,
    pub version: &'static str,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub outputs: Vec<OutputDigest>,
}

fn now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

/// Collects output files. Nothing is written until [`Outputs::write`] is
/// called from the coordinating thread, after all grid work has finished.
pub struct Outputs {
    dir: PathBuf,
    started: f64,
    digests: Vec<OutputDigest>,
}

impl Outputs {
    pub fn new(dir: PathBuf) -> Self {
        Outputs {
            dir,
            started: now(),
            digests: Vec::new(),
        }
    }

    pub fn write(&mut self, name: &str, data: &[u8]) -> Result<(), Failure> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| Failure::Io(format!("cannot create {}: {e}", self.dir.display())))?;
        let path = self.dir.join(name);
        std::fs::write(&path, data).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
        self.digests.push(OutputDigest {
            file: name.to_string(),
            bytes: data.len(),
            sha256: format!("{:x}", Sha256::digest(data)),
        });
        Ok(())
    }

    /// Writes `manifest.json` if any file was produced.
    pub fn finish(self, config: serde_json::Value) -> Result<(), Failure> {
        if self.digests.is_empty() {
            return Ok(());
        }
        let manifest = RunManifest {
            command_line: std::env::args().collect(),
            config,
            version: env!("CARGO_PKG_VERSION"),
            started_unix: self.started,
            finished_unix: now(),
            outputs: self.digests,
        };
        let path = self.dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        std::fs::write(&path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
    }
}
