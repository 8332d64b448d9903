// SPDX-License-Identifier: MIT

//! On-disk cache of computed bases: one JSON file per [`SpaceKey`], written
//! to a temporary file and renamed into place, with a SHA-256 checksum over
//! the key, the dimension and the matrix.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{SpaceKey, SubspaceBasis};
use crate::error::{Error, Result};
use crate::linalg::exact::IntRow;
use crate::polydiff::Monomial;

/// Format tag stored in every file; files with another tag are ignored.
pub const FORMAT: &str = "poisson-inv-basis/json/1";

pub const ENV_VAR: &str = "POISSON_INV_CACHE";

pub fn cache_dir_from_env() -> PathBuf {
    std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("./cache"))
}

#[derive(Serialize, Deserialize)]
struct StoredRow {
    pivot: u32,
    den: i128,
    cols: Vec<u32>,
    nums: Vec<i128>,
}

#[derive(Serialize, Deserialize)]
struct Payload {
    key: SpaceKey,
    dim: usize,
    columns: Vec<Vec<u8>>,
    rows: Vec<StoredRow>,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    format: String,
    checksum: String,
    payload: Payload,
}

fn checksum(p: &Payload) -> Result<String> {
    let bytes = serde_json::to_vec(p).map_err(|e| Error::Cache(e.to_string()))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

fn to_payload(b: &SubspaceBasis) -> Payload {
    let width = 2 * b.key.n * b.key.d;
    Payload {
        key: b.key,
        dim: b.dim(),
        columns: b.columns.iter().map(|m| m.exponents()[..width].to_vec()).collect(),
        rows: b
            .rows
            .iter()
            .map(|r| StoredRow {
                pivot: r.pivot,
                den: r.den,
                cols: r.entries.iter().map(|e| e.0).collect(),
                nums: r.entries.iter().map(|e| e.1).collect(),
            })
            .collect(),
    }
}

fn from_payload(p: Payload) -> Option<SubspaceBasis> {
    if p.dim != p.rows.len() {
        return None;
    }
    let columns = p.columns.iter().map(|e| Monomial::from_exponents(e)).collect();
    let rows = p
        .rows
        .into_iter()
        .map(|r| {
            (r.cols.len() == r.nums.len()).then(|| IntRow { pivot: r.pivot, den: r.den, entries: r.cols.into_iter().zip(r.nums).collect() })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(SubspaceBasis { key: p.key, columns, rows })
}

pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: PathBuf) -> Self {
        DiskCache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &SpaceKey) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached basis, or None when absent, from another format version,
    /// or failing its checksum (reported on stderr and recomputed).
    pub fn load(&self, key: &SpaceKey) -> Option<SubspaceBasis> {
        let path = self.path(key);
        let text = fs::read(&path).ok()?;
        let stored: Stored = match serde_json::from_slice(&text) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("warning: ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        if stored.format != FORMAT {
            return None;
        }
        let ok = checksum(&stored.payload).map(|c| c == stored.checksum).unwrap_or(false);
        if !ok || stored.payload.key != *key {
            eprintln!("warning: cache file {} fails its checksum; recomputing", path.display());
            return None;
        }
        from_payload(stored.payload).filter(|b| b.is_canonical())
    }

    pub fn store(&self, b: &SubspaceBasis) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let payload = to_payload(b);
        let stored = Stored { format: FORMAT.into(), checksum: checksum(&payload)?, payload };
        let final_path = self.path(&b.key);
        let tmp = self.dir.join(format!(".{}.{}.{}.tmp", b.key, std::process::id(), unique()));
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer(&mut f, &stored).map_err(|e| Error::Cache(e.to_string()))?;
            f.flush()?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &final_path)?;
        Ok(())
    }
}

fn unique() -> u64 {
    use std::sync::atomic::{AtomicU64, Ordering};
    static NEXT: AtomicU64 = AtomicU64::new(0);
    NEXT.fetch_add(1, Ordering::Relaxed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{Context, Method};

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = Context::with_cache_dir(dir.path());
        let b = ctx.inv(3, 1, 2, Method::Graph).unwrap();
        let cache = DiskCache::new(dir.path().to_path_buf());
        let loaded = cache.load(&b.key).unwrap();
        assert_eq!(&loaded, &*b);

        // flip one stored numerator: the checksum no longer matches
        let path = cache.path(&b.key);
        let mut stored: Stored = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        stored.payload.rows[0].nums[0] += 1;
        fs::write(&path, serde_json::to_vec(&stored).unwrap()).unwrap();
        assert!(cache.load(&b.key).is_none());

        // a fresh context recomputes and rewrites the file
        let again = Context::with_cache_dir(dir.path()).inv(3, 1, 2, Method::Graph).unwrap();
        assert_eq!(&*again, &*b);
        assert!(cache.load(&b.key).is_some());
    }
}
