//! Append-only on-disk factorization cache.
//!
//! Each line is `{"version":1,"key":"0x..","value":[["0x..",m],..]}`. Lines
//! that fail to parse, carry another version, or whose value does not
//! multiply back to the key into irreducible factors are skipped.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::{Mutex, RwLock};

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factor::{is_irreducible, Factorization};
use crate::poly::Poly;
use crate::search::{Factorizer, Seeded};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: Poly,
    pub value: Factorization,
}

impl CacheEntry {
    fn is_valid(&self) -> bool {
        self.version == CACHE_VERSION
            && self.value.product() == self.key
            && self.value.primes().all(|p| is_irreducible(p).unwrap_or(false))
    }
}

pub struct FactorCache {
    entries: RwLock<HashMap<Poly, Factorization>>,
    writer: Mutex<BufWriter<File>>,
    fallback: Seeded,
}

impl FactorCache {
    pub fn open(path: &Path, fallback: Seeded) -> io::Result<Self> {
        let mut entries = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (n, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheEntry>(&line) {
                    Ok(e) if e.version != CACHE_VERSION => {
                        debug!("cache line {}: version {} ignored", n + 1, e.version)
                    }
                    Ok(e) if e.is_valid() => {
                        entries.insert(e.key, e.value);
                    }
                    Ok(_) => warn!("cache line {}: inconsistent entry ignored", n + 1),
                    Err(err) => warn!("cache line {}: {err}", n + 1),
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(FactorCache {
            entries: RwLock::new(entries),
            writer: Mutex::new(BufWriter::new(file)),
            fallback,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &Poly) -> Option<Factorization> {
        self.entries.read().expect("cache lock").get(key).cloned()
    }

    pub fn put(&self, key: &Poly, value: &Factorization) -> io::Result<()> {
        let entry = CacheEntry { version: CACHE_VERSION, key: key.clone(), value: value.clone() };
        {
            let mut w = self.writer.lock().expect("cache writer");
            writeln!(w, "{}", serde_json::to_string(&entry).expect("entry serializes"))?;
            w.flush()?;
        }
        self.entries.write().expect("cache lock").insert(entry.key, entry.value);
        Ok(())
    }
}

impl Factorizer for FactorCache {
    fn factorize(&self, p: &Poly) -> Result<Factorization> {
        if let Some(f) = self.get(p) {
            return Ok(f);
        }
        let f = self.fallback.factorize(p)?;
        if let Err(e) = self.put(p, &f) {
            warn!("cache write failed: {e}");
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factorize;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let p: Poly = "x^6+x^3+x^2+x+1".parse().unwrap();
        {
            let cache = FactorCache::open(&path, Seeded::default()).unwrap();
            assert_eq!(cache.factorize(&p).unwrap(), factorize(&p).unwrap());
        }
        let cache = FactorCache::open(&path, Seeded::default()).unwrap();
        assert_eq!(cache.get(&p), Some(factorize(&p).unwrap()));

        let mut text = std::fs::read_to_string(&path).unwrap();
        text = text.replace("\"version\":1", "\"version\":0");
        text.push_str("not json\n");
        text.push_str(r#"{"version":1,"key":"0x7","value":[["0x3",1]]}"#);
        text.push('\n');
        std::fs::write(&path, text).unwrap();
        let cache = FactorCache::open(&path, Seeded::default()).unwrap();
        assert!(cache.is_empty());
        let seven = Poly::from_u64(7);
        assert_eq!(cache.factorize(&seven).unwrap(), factorize(&seven).unwrap());
    }
}
