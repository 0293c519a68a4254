//! Content-addressed on-disk cache.
//!
//! Entries are immutable JSON files named by the SHA-256 of their
//! request descriptor, which folds in the engine version, so a new
//! engine writes fresh entries instead of touching old ones. Writes
//! go through a temporary file and an atomic rename; concurrent
//! writers of the same key produce identical bytes, so the last
//! rename wins harmlessly.

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a cache entry stores.
#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Bimodule,
    Complex,
    Groebner,
    Eigenblocks,
    HomRow,
}

#[derive(Serialize, Deserialize)]
pub struct Entry<T> {
    pub schema_version: u32,
    pub kind: Kind,
    pub engine_version: String,
    pub descriptor: String,
    pub data: T,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn key_of(descriptor: &str) -> String {
    let mut h = Sha256::new();
    h.update(ENGINE_VERSION.as_bytes());
    h.update(b"\n");
    h.update(descriptor.as_bytes());
    format!("{:x}", h.finalize())
}

impl Cache {
    /// A cache rooted at the given directory; with None every lookup
    /// misses and every store is dropped.
    pub fn open(dir: Option<&Path>) -> std::io::Result<Cache> {
        if let Some(d) = dir {
            std::fs::create_dir_all(d)?;
        }
        Ok(Cache {
            dir: dir.map(Path::to_path_buf),
        })
    }

    fn path_for(&self, descriptor: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", key_of(descriptor))))
    }

    pub fn load<T: DeserializeOwned>(&self, kind: Kind, descriptor: &str) -> Option<T> {
        let path = self.path_for(descriptor)?;
        let bytes = std::fs::read(&path).ok()?;
        let entry: Entry<T> = serde_json::from_slice(&bytes).ok()?;
        if entry.kind != kind
            || entry.engine_version != ENGINE_VERSION
            || entry.descriptor != descriptor
        {
            return None;
        }
        Some(entry.data)
    }

    pub fn store<T: Serialize>(&self, kind: Kind, descriptor: &str, data: &T) {
        let Some(path) = self.path_for(descriptor) else {
            return;
        };
        if path.exists() {
            return;
        }
        let entry = Entry {
            schema_version: 1,
            kind,
            engine_version: ENGINE_VERSION.to_string(),
            descriptor: descriptor.to_string(),
            data,
        };
        let Ok(body) = serde_json::to_vec_pretty(&entry) else {
            return;
        };
        let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
        if std::fs::write(&tmp, body).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}
