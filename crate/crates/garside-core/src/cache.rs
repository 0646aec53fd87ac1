//! Disk cache for enumerated parabolics, reflection sets, and dual intervals,
//! keyed by a stable hash of the canonical input serialization.

use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Serialize};

use crate::Result;

pub const CACHE_VERSION: u32 = 1;

/// FNV-1a over the canonical key string; stable across runs and platforms.
pub fn stable_hash(key: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in key.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: Option<PathBuf>,
}

#[derive(Serialize, serde::Deserialize)]
struct Envelope<T> {
    version: u32,
    key: String,
    value: T,
}

impl DiskCache {
    pub fn new(dir: Option<&Path>) -> Self {
        DiskCache { dir: dir.map(|d| d.to_path_buf()) }
    }

    pub fn disabled() -> Self {
        DiskCache { dir: None }
    }

    /// Cache dir from the environment variable `GARSIDE_CACHE` unless one is
    /// given explicitly.
    pub fn from_env(explicit: Option<&Path>) -> Self {
        match explicit {
            Some(d) => Self::new(Some(d)),
            None => match std::env::var_os("GARSIDE_CACHE") {
                Some(d) => Self::new(Some(Path::new(&d))),
                None => Self::disabled(),
            },
        }
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{:016x}.json", stable_hash(key))))
    }

    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let path = self.path_for(key)?;
        let text = std::fs::read_to_string(path).ok()?;
        let env: Envelope<T> = serde_json::from_str(&text).ok()?;
        if env.version != CACHE_VERSION || env.key != key {
            return None;
        }
        Some(env.value)
    }

    pub fn store<T: Serialize>(&self, key: &str, value: &T) -> Result<()> {
        if let Some(path) = self.path_for(key) {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir)?;
            }
            let env = Envelope { version: CACHE_VERSION, key: key.to_string(), value };
            std::fs::write(path, serde_json::to_string(&env)?)?;
        }
        Ok(())
    }
}
