//! On-disk cache of antichain lists, one JSON document per ground size.
//!
//! The cache is advisory: anything unreadable, stale or inconsistent is
//! ignored and recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use divint::antichain::IntersectingAntichain;
use divint::Mask;
use serde::{Deserialize, Serialize};

use crate::report::TOOL_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheDocument {
    pub k: usize,
    pub antichains: Vec<Vec<u32>>,
    pub count: u64,
    pub tool_version: String,
}

impl CacheDocument {
    pub fn new(k: usize, antichains: &[IntersectingAntichain]) -> CacheDocument {
        CacheDocument {
            k,
            antichains: antichains
                .iter()
                .map(|a| a.sets().into_iter().map(|m| m.0).collect())
                .collect(),
            count: antichains.len() as u64,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<CacheDocument, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Rebuilds and re-validates every antichain, insisting on canonical order.
    pub fn decode(&self, k: usize) -> Result<Vec<IntersectingAntichain>, String> {
        if self.k != k {
            return Err(format!("document is for k = {}, wanted {k}", self.k));
        }
        if self.count != self.antichains.len() as u64 {
            return Err(format!(
                "count {} but {} antichains",
                self.count,
                self.antichains.len()
            ));
        }
        let mut out = Vec::with_capacity(self.antichains.len());
        for sets in &self.antichains {
            let masks: Vec<Mask> = sets.iter().map(|&m| Mask(m)).collect();
            let a = IntersectingAntichain::from_sets(k, &masks).map_err(|e| e.to_string())?;
            if a.sets() != masks {
                return Err("masks are not in ascending order".into());
            }
            if out
                .last()
                .is_some_and(|prev: &IntersectingAntichain| *prev >= a)
            {
                return Err("antichains are not in canonical order".into());
            }
            out.push(a);
        }
        Ok(out)
    }
}

pub fn path_for(dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("antichains-k{k}.json"))
}

/// A usable cached list, or the reason there is none.
pub fn load(dir: &Path, k: usize) -> Result<Vec<IntersectingAntichain>, String> {
    let text = fs::read_to_string(path_for(dir, k)).map_err(|e| e.to_string())?;
    let doc = CacheDocument::parse(&text)?;
    if doc.tool_version != TOOL_VERSION {
        return Err(format!("written by version {}", doc.tool_version));
    }
    doc.decode(k)
}

pub fn store(dir: &Path, k: usize, antichains: &[IntersectingAntichain]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let doc = CacheDocument::new(k, antichains);
    let text = serde_json::to_string(&doc).expect("cache document serializes");
    let path = path_for(dir, k);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text)?;
    fs::rename(tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use divint::{antichain, Limits};

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let list = antichain::enumerate_antichains(4, &Limits::default()).unwrap();
        store(dir.path(), 4, &list).unwrap();
        assert_eq!(load(dir.path(), 4).unwrap(), list);
        assert!(load(dir.path(), 3).is_err());
    }

    #[test]
    fn rejects_tampering() {
        let list = antichain::enumerate_antichains(3, &Limits::default()).unwrap();
        let mut doc = CacheDocument::new(3, &list);
        assert_eq!(doc.decode(3).unwrap(), list);
        assert_eq!(
            doc.antichains,
            vec![vec![1], vec![2], vec![4], vec![3, 5, 6]]
        );

        doc.antichains.swap(0, 1);
        assert!(doc.decode(3).is_err());
        doc.antichains.swap(0, 1);
        doc.count = 5;
        assert!(doc.decode(3).is_err());
        doc.count = 4;
        doc.antichains[3] = vec![3, 5];
        assert!(doc.decode(3).is_err());
        assert!(doc.decode(4).is_err());
    }
}
