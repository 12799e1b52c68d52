//! Run manifests: every file the CLI writes is accompanied by a JSON record
//! sufficient to re-run the command bit-identically.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    /// Full argument vector of the invocation.
    pub command: Vec<String>,
    /// SHA-256 of the model file bytes.
    pub model_sha256: String,
    /// Command configuration (dt, horizon, trials, ...).
    pub config: serde_json::Value,
    pub seed: u64,
    pub version: String,
}

impl RunManifest {
    pub fn new(
        command: Vec<String>,
        model_bytes: &[u8],
        config: serde_json::Value,
        seed: u64,
    ) -> Self {
        RunManifest {
            command,
            model_sha256: hex_digest(model_bytes),
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Manifest path for an output file: `traj.csv` -> `traj.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        let stem = output
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "output".into());
        output.with_file_name(format!("{stem}.manifest.json"))
    }

    pub fn write_next_to(&self, output: &Path) -> std::io::Result<PathBuf> {
        let path = Self::path_for(output);
        std::fs::write(&path, serde_json::to_string_pretty(self).unwrap())?;
        Ok(path)
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
