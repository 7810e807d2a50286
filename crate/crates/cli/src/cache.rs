//! Content-addressed store for command output.
//!
//! The key is the SHA-256 of the canonical JSON of the verb, its arguments and
//! the crate version. Each entry is one JSON file named by its key.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const DEFAULT_DIR: &str = ".hlg-cache";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub output: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

pub fn cache_key(verb: &str, args: &Value) -> String {
    let material = serde_json::json!({
        "verb": verb,
        "args": args,
        "version": env!("CARGO_PKG_VERSION"),
    });
    hex::encode(Sha256::digest(material.to_string().as_bytes()))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored output for `key`. Unreadable or mismatched entries count as misses.
    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry.output)
    }

    /// Writes the entry through a temporary file in the cache directory. An
    /// existing entry is left as it is.
    pub fn put(&self, key: &str, output: &str) -> Result<(), CliError> {
        let target = self.path(key);
        if target.exists() {
            return Ok(());
        }
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            key: key.to_string(),
            output: output.to_string(),
            created_at: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        match tmp.persist_noclobber(&target) {
            Ok(_) => Ok(()),
            Err(_) if target.exists() => Ok(()),
            Err(e) => Err(e.error.into()),
        }
    }
}
