//! Content-addressed on-disk cache of character tables.
//!
//! One JSON document per group, named by the SHA-256 of its Cayley table.
//! Writes go to a unique temporary file in the same directory followed by a
//! rename, so concurrent writers never expose a partial file. Unreadable,
//! stale or mismatching entries are ignored and recomputed.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use super::Character;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    group_hash: String,
    order: usize,
    exponent: u64,
    characters: Vec<Character>,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, group: &FiniteGroup) -> PathBuf {
        self.dir.join(format!("{}.json", group.canonical_hash()))
    }

    pub fn load(&self, group: &FiniteGroup) -> Option<Vec<Character>> {
        let text = fs::read_to_string(self.path_for(group)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        let ok = entry.version == FORMAT_VERSION
            && entry.group_hash == group.canonical_hash()
            && entry.order == group.order()
            && entry.exponent == group.exponent();
        ok.then_some(entry.characters)
    }

    pub fn store(&self, group: &FiniteGroup, characters: &[Character]) -> Result<()> {
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let entry = Entry {
            version: FORMAT_VERSION,
            group_hash: group.canonical_hash(),
            order: group.order(),
            exponent: group.exponent(),
            characters: characters.to_vec(),
        };
        let text = serde_json::to_string(&entry).map_err(|e| Error::Cache(e.to_string()))?;
        let target = self.path_for(group);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            entry.group_hash,
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &target).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            io(e)
        })
    }
}
