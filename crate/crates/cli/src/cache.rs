//! Content-addressed result cache.
//!
//! Entries live at `<dir>/<sha256>.json`, keyed by the computation, its
//! parameters and the crate version. Writes go to a temporary file in the
//! same directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CODE_VERSION: &str = concat!("quizzy-", env!("CARGO_PKG_VERSION"));

#[derive(Debug)]
pub enum CacheError {
    Corrupt(PathBuf, String),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Corrupt(p, why) => write!(f, "corrupt cache entry {}: {why}", p.display()),
            CacheError::Io(p, e) => write!(f, "cache I/O error at {}: {e}", p.display()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: Value,
    value: Value,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: Some(dir.into()),
        }
    }

    /// `QUIZZY_CACHE_DIR`, or `./.quizzy-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os("QUIZZY_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".quizzy-cache"));
        Cache::at(dir)
    }

    fn key_material(computation: &str, params: &Value) -> Value {
        serde_json::json!({
            "computation": computation,
            "params": params,
            "version": CODE_VERSION,
        })
    }

    pub fn path_for(dir: &Path, key: &Value) -> PathBuf {
        let digest = Sha256::digest(key.to_string().as_bytes());
        dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// Returns the cached value or computes and stores it.
    pub fn get_or_compute<T, E>(
        &self,
        computation: &str,
        params: Value,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<Result<T, E>, CacheError>
    where
        T: Serialize + DeserializeOwned,
    {
        let Some(dir) = &self.dir else {
            return Ok(compute());
        };
        let key = Self::key_material(computation, &params);
        let path = Self::path_for(dir, &key);
        if let Some(v) = read_entry(&path, &key)? {
            return Ok(Ok(v));
        }
        let value = match compute() {
            Ok(v) => v,
            Err(e) => return Ok(Err(e)),
        };
        write_entry(dir, &path, &key, &value)?;
        Ok(Ok(value))
    }
}

fn read_entry<T: DeserializeOwned>(path: &Path, key: &Value) -> Result<Option<T>, CacheError> {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(CacheError::Io(path.to_path_buf(), e)),
    };
    let corrupt = |why: String| CacheError::Corrupt(path.to_path_buf(), why);
    let entry: Entry = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
    if &entry.key != key {
        return Err(corrupt("stored key does not match its address".into()));
    }
    serde_json::from_value(entry.value)
        .map(Some)
        .map_err(|e| corrupt(e.to_string()))
}

fn write_entry<T: Serialize>(dir: &Path, path: &Path, key: &Value, value: &T) -> Result<(), CacheError> {
    let io = |e| CacheError::Io(dir.to_path_buf(), e);
    fs::create_dir_all(dir).map_err(io)?;
    let entry = Entry {
        key: key.clone(),
        value: serde_json::to_value(value).expect("cache values serialize"),
    };
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().unwrap().to_string_lossy(),
        std::process::id()
    ));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(serde_json::to_string(&entry).unwrap().as_bytes())
        .and_then(|_| f.sync_all())
        .map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}
