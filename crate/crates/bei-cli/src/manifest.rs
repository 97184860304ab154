//! Append-only JSONL run manifests: one line per invocation with the
//! command, parameters, timestamps, version, input hashes, stats, and
//! verdict.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

#[derive(Serialize)]
struct Manifest {
    schema: u32,
    command: String,
    parameters: serde_json::Value,
    started_at: String,
    finished_at: String,
    version: String,
    input_hashes: BTreeMap<String, String>,
    stats: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<bool>,
}

pub struct Run {
    command: String,
    started_at: String,
    input_hashes: BTreeMap<String, String>,
}

impl Run {
    pub fn start(command: &str) -> Self {
        Run {
            command: command.to_string(),
            started_at: chrono::Utc::now().to_rfc3339(),
            input_hashes: BTreeMap::new(),
        }
    }

    pub fn input_hash(&mut self, name: &str, sha256: &str) {
        self.input_hashes
            .insert(name.to_string(), sha256.to_string());
    }

    pub fn finish(
        self,
        path: &Path,
        parameters: serde_json::Value,
        stats: serde_json::Value,
        verdict: Option<bool>,
    ) -> Result<()> {
        let m = Manifest {
            schema: 1,
            command: self.command,
            parameters,
            started_at: self.started_at,
            finished_at: chrono::Utc::now().to_rfc3339(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_hashes: self.input_hashes,
            stats,
            verdict,
        };
        let line = serde_json::to_string(&m)?;
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening manifest {}", path.display()))?;
        writeln!(f, "{line}")?;
        Ok(())
    }
}
