//! Run manifests: seeds, input digests, and output inventory for
//! byte-reproducible reports.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub seed: u64,
    /// Content hash per input actually read.
    pub input_digests: BTreeMap<String, String>,
    /// Flag name → rendered value.
    pub flags: BTreeMap<String, String>,
    /// Output files per module.
    pub outputs: BTreeMap<String, Vec<String>>,
    pub wall_time_ms: u64,
}

impl RunManifest {
    pub fn new(seed: u64) -> Self {
        RunManifest {
            version: TOOL_VERSION.to_string(),
            seed,
            input_digests: BTreeMap::new(),
            flags: BTreeMap::new(),
            outputs: BTreeMap::new(),
            wall_time_ms: 0,
        }
    }

    pub fn record_input(&mut self, name: &str, path: &Path) -> std::io::Result<()> {
        let mut file = std::fs::File::open(path)?;
        let mut hasher = Sha256::new();
        let mut buf = [0u8; 8192];
        loop {
            let n = file.read(&mut buf)?;
            if n == 0 {
                break;
            }
            hasher.update(&buf[..n]);
        }
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        self.input_digests.insert(name.to_string(), digest);
        Ok(())
    }

    pub fn record_flag(&mut self, name: &str, value: impl ToString) {
        self.flags.insert(name.to_string(), value.to_string());
    }

    pub fn record_output(&mut self, module: &str, file: &str) {
        self.outputs
            .entry(module.to_string())
            .or_default()
            .push(file.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}
