//! Append-only JSON-lines cache of point counts.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

pub const ENGINE_VERSION: &str = concat!("picard-core ", env!("CARGO_PKG_VERSION"));
pub const CACHE_ENV: &str = "PICARD_COUNT_CACHE";

/// A counting job in canonical form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CountJob {
    pub kind: String,
    pub model: String,
    pub p: u64,
    pub k: u32,
    /// Twist matrix (rows), empty for untwisted counts.
    pub twist: Vec<Vec<i64>>,
    pub boundary: u64,
}

impl CountJob {
    pub fn key(&self) -> String {
        let canon = serde_json::to_string(self).expect("job serializes");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CountRecord {
    pub key: String,
    pub p: u64,
    pub k: u32,
    pub j: Vec<Vec<i64>>,
    pub model: String,
    pub count: u64,
    pub engine: String,
}

#[derive(Debug, Default)]
pub struct CountCache {
    path: Option<PathBuf>,
    map: Mutex<HashMap<String, u64>>,
    offline: AtomicBool,
}

impl CountCache {
    /// In-memory cache only.
    pub fn memory() -> Self {
        Self::default()
    }

    /// Loads an existing file (if any); new records are appended to it.
    pub fn open(path: &Path) -> Result<Self> {
        let mut map = HashMap::new();
        if path.exists() {
            let f = std::fs::File::open(path).map_err(|e| Error::Invalid(format!("cache {}: {e}", path.display())))?;
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| Error::Invalid(e.to_string()))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: CountRecord =
                    serde_json::from_str(&line).map_err(|e| Error::Invalid(format!("corrupt cache line: {e}")))?;
                map.insert(rec.key, rec.count);
            }
        }
        Ok(CountCache { path: Some(path.to_path_buf()), map: Mutex::new(map), offline: AtomicBool::new(false) })
    }

    /// Refuses to compute: a missing count becomes a resource error.
    pub fn read_only(self) -> Self {
        self.set_read_only(true);
        self
    }

    pub fn set_read_only(&self, on: bool) {
        self.offline.store(on, Ordering::Relaxed);
    }

    pub fn is_read_only(&self) -> bool {
        self.offline.load(Ordering::Relaxed)
    }

    /// Uses the path in `PICARD_COUNT_CACHE` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) => Self::open(Path::new(&p)),
            None => Ok(Self::memory()),
        }
    }

    pub fn get(&self, job: &CountJob) -> Option<u64> {
        self.map.lock().unwrap().get(&job.key()).copied()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn put(&self, job: &CountJob, count: u64) -> Result<()> {
        let key = job.key();
        let mut map = self.map.lock().unwrap();
        if let Some(&old) = map.get(&key) {
            if old != count {
                return Err(Error::Inconsistent(format!("cached count {old} differs from recomputed {count}")));
            }
            return Ok(());
        }
        map.insert(key.clone(), count);
        if let Some(path) = &self.path {
            let rec = CountRecord {
                key,
                p: job.p,
                k: job.k,
                j: job.twist.clone(),
                model: job.model.clone(),
                count,
                engine: ENGINE_VERSION.to_string(),
            };
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::Invalid(format!("cache {}: {e}", path.display())))?;
            writeln!(f, "{}", serde_json::to_string(&rec).unwrap()).map_err(|e| Error::Invalid(e.to_string()))?;
        }
        Ok(())
    }

    pub fn get_or_compute(&self, job: &CountJob, compute: impl FnOnce() -> Result<u64>) -> Result<u64> {
        if let Some(c) = self.get(job) {
            return Ok(c);
        }
        if self.is_read_only() {
            return Err(Error::Resource(format!("count not cached: {} over F_{}^{}", job.kind, job.p, job.k)));
        }
        let c = compute()?;
        self.put(job, c)?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_file() {
        let dir = std::env::temp_dir().join(format!("picard-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("counts.jsonl");
        let _ = std::fs::remove_file(&path);
        let job = CountJob { kind: "affine".into(), model: "x".into(), p: 3, k: 1, twist: vec![], boundary: 0 };
        {
            let c = CountCache::open(&path).unwrap();
            assert_eq!(c.get_or_compute(&job, || Ok(1)).unwrap(), 1);
        }
        let c = CountCache::open(&path).unwrap();
        assert_eq!(c.get(&job), Some(1));
        assert!(c.put(&job, 2).is_err());
        let other = CountJob { k: 2, ..job.clone() };
        let c = c.read_only();
        assert_eq!(c.get_or_compute(&job, || Ok(1)).unwrap(), 1);
        assert!(matches!(c.get_or_compute(&other, || Ok(1)), Err(Error::Resource(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
