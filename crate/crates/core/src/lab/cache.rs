//! Append-only JSON-lines cache of computed invariants, keyed by the SHA-256
//! of the matroid's spec JSON.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;
use crate::polynomial::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheEntry {
    pub key: String,
    pub matroid: MatroidSpec,
    pub rk: usize,
    pub chi: Polynomial,
    #[serde(rename = "Q")]
    pub q: Polynomial,
}

pub fn spec_key(spec: &MatroidSpec) -> String {
    let json = serde_json::to_string(spec).expect("specs always serialize");
    hex::encode(Sha256::digest(json.as_bytes()))
}

pub struct ResultCache {
    entries: HashMap<String, CacheEntry>,
    file: File,
}

impl ResultCache {
    /// Open or create the cache file. Lines that do not parse, or whose key
    /// does not match their spec (say, a write cut short), are skipped.
    pub fn open(path: &Path) -> Result<Self> {
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let Ok(entry) = serde_json::from_str::<CacheEntry>(&line?) else {
                    continue;
                };
                if spec_key(&entry.matroid) == entry.key {
                    entries.insert(entry.key.clone(), entry);
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(ResultCache { entries, file })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, spec: &MatroidSpec) -> Option<&CacheEntry> {
        self.entries.get(&spec_key(spec)).filter(|e| &e.matroid == spec)
    }

    pub fn insert(&mut self, entry: CacheEntry) -> Result<()> {
        if self.entries.contains_key(&entry.key) {
            return Ok(());
        }
        let mut line = serde_json::to_string(&entry).map_err(|e| Error::Io(e.to_string()))?;
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        self.entries.insert(entry.key.clone(), entry);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{scan, Check, Family, ScanOptions};

    #[test]
    fn keys_are_stable_hex() {
        let k = spec_key(&MatroidSpec::Uniform { m: 2, d: 3 });
        assert_eq!(k.len(), 64);
        assert_eq!(k, spec_key(&MatroidSpec::Uniform { m: 2, d: 3 }));
        assert_ne!(k, spec_key(&MatroidSpec::Uniform { m: 3, d: 2 }));
    }

    #[test]
    fn cached_scan_equals_fresh_scan() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let f = Family::Uniform { max_m: 3, max_d: 4 };
        let fresh = scan(&f, &Check::ALL, &ScanOptions::default()).unwrap();
        let opts = ScanOptions { cache: Some(path.clone()), ..Default::default() };
        let first = scan(&f, &Check::ALL, &opts).unwrap();
        assert_eq!(ResultCache::open(&path).unwrap().len(), 12);
        let second = scan(&f, &Check::ALL, &opts).unwrap();
        assert_eq!(fresh, first);
        assert_eq!(fresh, second);
        // a rescan adds nothing
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 12);
    }

    #[test]
    fn torn_lines_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        std::fs::write(&path, "{\"key\":\"abc\",\"matr\n").unwrap();
        let mut c = ResultCache::open(&path).unwrap();
        assert!(c.is_empty());
        let spec = MatroidSpec::Boolean { n: 1 };
        c.insert(CacheEntry {
            key: spec_key(&spec),
            matroid: spec.clone(),
            rk: 1,
            chi: Polynomial::from_i64s(&[-1, 1]),
            q: Polynomial::one(),
        })
        .unwrap();
        assert_eq!(ResultCache::open(&path).unwrap().get(&spec).unwrap().rk, 1);
    }
}
