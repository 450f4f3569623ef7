//! Content-addressed cache of function-side norm computations.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::elements::{element_to_json, Element};
use crate::norms::{NormResult, OpnormOptions, QuadratureConfig};
use crate::report::write_atomic;

/// Entries written by another artifact version are never served.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheEntry {
    pub version: String,
    pub key: String,
    pub engine: String,
    pub timestamp: u64,
    pub result: NormResult,
}

/// Hash of the canonical element, the engine, the exponent and every engine option.
pub fn cache_key(e: &Element, engine: &str, p: f64, q: &QuadratureConfig, op: &OpnormOptions) -> String {
    let mut h = Sha256::new();
    for part in [
        ARTIFACT_VERSION.to_string(),
        element_to_json(e),
        engine.to_string(),
        format!("{:016x}", p.to_bits()),
        serde_json::to_string(q).expect("options serialize"),
        serde_json::to_string(op).expect("options serialize"),
    ] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored result, or `None` on a miss. Unreadable entries are moved to
    /// `quarantine/` and count as misses.
    pub fn get(&self, key: &str) -> Option<NormResult> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(entry) if entry.key == key && entry.version == ARTIFACT_VERSION => Some(entry.result),
            Ok(_) => None,
            Err(_) => {
                let q = self.dir.join("quarantine");
                if fs::create_dir_all(&q).is_ok() {
                    let _ = fs::rename(&path, q.join(format!("{key}.json")));
                }
                None
            }
        }
    }

    pub fn put(&self, key: &str, engine: &str, result: &NormResult) -> io::Result<()> {
        let entry = CacheEntry {
            version: ARTIFACT_VERSION.to_string(),
            key: key.to_string(),
            engine: engine.to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            result: result.clone(),
        };
        let text = serde_json::to_string_pretty(&entry).map_err(io::Error::other)?;
        write_atomic(&self.path(key), text.as_bytes())
    }
}
