//! On-disk cache of cell homologies, one JSON file per cell and rank method.

use super::{write_json, Entry};
use crate::error::{Error, Result};
use crate::linalg::RankEngine;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Everything a cell's homology depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct Key {
    m: i32,
    n: i32,
    r: usize,
    h: usize,
    /// `exact` or the two primes ranks were computed with.
    method: String,
}

impl Key {
    pub(crate) fn new(m: i32, n: i32, r: usize, h: usize, engine: &RankEngine) -> Self {
        let method = if engine.exact {
            "exact".into()
        } else {
            let [p, q] = engine.primary_primes();
            format!("p{p}-{q}")
        };
        Key { m, n, r, h, method }
    }

    fn file_name(&self) -> String {
        format!("hgc_m{}_n{}_r{}_h{}_{}.json", self.m, self.n, self.r, self.h, self.method)
    }
}

#[derive(Serialize, Deserialize)]
struct Stored {
    key: Key,
    homology: Vec<Entry>,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// A stored result; unreadable or mismatched files count as misses.
    pub(crate) fn get(&self, key: &Key) -> Option<Vec<Entry>> {
        let text = std::fs::read_to_string(self.dir.join(key.file_name())).ok()?;
        let stored: Stored = serde_json::from_str(&text).ok()?;
        (stored.key == *key).then_some(stored.homology)
    }

    /// Writes through a temporary file so concurrent readers never see partial files.
    pub(crate) fn put(&self, key: &Key, homology: &[Entry]) -> Result<()> {
        let stored = Stored {
            key: key.clone(),
            homology: homology.to_vec(),
        };
        let value = serde_json::to_value(&stored).map_err(|e| Error::Io(e.to_string()))?;
        let target = self.dir.join(key.file_name());
        let tmp = self.dir.join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        write_json(&tmp, &value)?;
        std::fs::rename(&tmp, &target).map_err(|e| Error::Io(format!("{}: {e}", target.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_mismatch() {
        let dir = std::env::temp_dir().join(format!("hgc-cache-test-{}", std::process::id()));
        let cache = Cache::new(&dir).unwrap();
        let engine = RankEngine::default();
        let key = Key::new(2, 2, 1, 3, &engine);
        assert_eq!(cache.get(&key), None);
        let hom = vec![Entry { degree: 4, dim: 1 }];
        cache.put(&key, &hom).unwrap();
        assert_eq!(cache.get(&key), Some(hom));
        let exact = Key::new(2, 2, 1, 3, &RankEngine::new(0, None, true));
        assert_eq!(cache.get(&exact), None);
        std::fs::remove_dir_all(dir).unwrap();
    }
}
