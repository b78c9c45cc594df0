//! Kostka numbers `K_{λμ}`: semistandard Young tableaux of shape `λ` and
//! content `μ`.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::Partition;

/// Counts tableaux by placing the copies of each value as a horizontal strip.
///
/// `current` is the shape filled so far. Value `v` may extend row `r` from
/// `current[r]` up to `min(shape[r], previous current[r-1])`, so that no two
/// copies of `v` share a column.
pub fn kostka_uncached(shape: &Partition, content: &Partition) -> Result<u64> {
    if shape.size() != content.size() {
        return Err(Error::DegreeMismatch { expected: shape.size(), found: content.size() });
    }
    let shape = shape.parts();
    let mut current = vec![0usize; shape.len()];
    Ok(place_value(shape, content.parts(), 0, &mut current))
}

fn place_value(shape: &[usize], content: &[usize], value: usize, current: &mut Vec<usize>) -> u64 {
    if value == content.len() {
        return u64::from(current.as_slice() == shape);
    }
    let before = current.clone();
    let mut total = 0;
    fill_rows(shape, content, value, &before, current, 0, content[value], &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn fill_rows(
    shape: &[usize],
    content: &[usize],
    value: usize,
    before: &[usize],
    current: &mut Vec<usize>,
    row: usize,
    remaining: usize,
    total: &mut u64,
) {
    if remaining == 0 {
        let mut next = current.clone();
        *total += place_value(shape, content, value + 1, &mut next);
        return;
    }
    if row == shape.len() {
        return;
    }
    // Horizontal strip: row `row` grows at most to the old length of the row above.
    let ceiling = if row == 0 { shape[0] } else { shape[row].min(before[row - 1]) };
    let room = ceiling.saturating_sub(before[row]);
    for add in (0..=room.min(remaining)).rev() {
        current[row] = before[row] + add;
        fill_rows(shape, content, value, before, current, row + 1, remaining - add, total);
    }
    current[row] = before[row];
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    shape: Vec<usize>,
    content: Vec<usize>,
    value: u64,
}

#[derive(Serialize, Deserialize, Default)]
struct CacheFile {
    entries: Vec<CacheEntry>,
}

/// In-memory Kostka table with optional persistence to a JSON file.
///
/// Concurrent readers share the table; insertions take the write lock.
/// Values are a pure function of the key, so interleavings cannot change
/// any result.
#[derive(Default)]
pub struct KostkaCache {
    table: RwLock<HashMap<(Partition, Partition), u64>>,
}

impl KostkaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, shape: &Partition, content: &Partition) -> Result<u64> {
        let key = (shape.clone(), content.clone());
        if let Some(&v) = self.table.read().expect("kostka cache poisoned").get(&key) {
            return Ok(v);
        }
        let v = kostka_uncached(shape, content)?;
        self.table.write().expect("kostka cache poisoned").insert(key, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("kostka cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Merges entries from `path`. A missing file is not an error.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let file: CacheFile = serde_json::from_str(&text)
            .map_err(|e| Error::Io(format!("{}: malformed kostka cache: {e}", path.display())))?;
        let mut table = self.table.write().expect("kostka cache poisoned");
        let mut loaded = 0;
        for entry in file.entries {
            let shape = Partition::new(entry.shape)?;
            let content = Partition::new(entry.content)?;
            table.insert((shape, content), entry.value);
            loaded += 1;
        }
        Ok(loaded)
    }

    /// Writes the whole table to `path`, sorted by key.
    pub fn save(&self, path: &Path) -> Result<()> {
        let table = self.table.read().expect("kostka cache poisoned");
        let mut keys: Vec<_> = table.keys().collect();
        keys.sort();
        let file = CacheFile {
            entries: keys
                .into_iter()
                .map(|k| CacheEntry { shape: k.0.parts().to_vec(), content: k.1.parts().to_vec(), value: table[k] })
                .collect(),
        };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&file).expect("cache serializes"))?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// The process-wide cache used by [`kostka`].
pub fn kostka_cache() -> &'static KostkaCache {
    static CACHE: OnceLock<KostkaCache> = OnceLock::new();
    CACHE.get_or_init(KostkaCache::new)
}

/// `K_{λμ}`, memoised in [`kostka_cache`].
pub fn kostka(shape: &Partition, content: &Partition) -> Result<u64> {
    kostka_cache().get(shape, content)
}
