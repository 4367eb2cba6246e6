//! Memoized class-group data with a line-delimited text file format.
//!
//! ```text
//! # triquad class cache v1
//! # D,h,elementary_divisors
//! -356,12,12
//! -84,4,2 2
//! -4,1,-
//! 264,4,*
//! ```
//!
//! For `D < 0` the second field is the class number and the third the
//! space-separated invariant factors (`-` for the trivial group). For `D > 0`
//! the second field is the narrow class number `h+` and the third is `*`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use super::structure::AbelianStructure;
use crate::error::{Error, Result};

pub const CACHE_HEADER: &str = "# triquad class cache v1";
pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassData {
    Imaginary(AbelianStructure),
    RealNarrow(u64),
}

/// One line of the cache file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub discriminant: i64,
    pub data: ClassData,
}

impl CacheEntry {
    pub fn class_number(&self) -> u64 {
        match &self.data {
            ClassData::Imaginary(g) => g.order(),
            ClassData::RealNarrow(h) => *h,
        }
    }

    pub fn to_line(&self) -> String {
        let divisors = match &self.data {
            ClassData::Imaginary(g) if g.is_trivial() => "-".to_string(),
            ClassData::Imaginary(g) => g.invariants().iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            ClassData::RealNarrow(_) => "*".to_string(),
        };
        format!("{},{},{}", self.discriminant, self.class_number(), divisors)
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let bad = || Error::Cache(format!("malformed cache line {line:?}"));
        let mut parts = line.split(',');
        let (Some(d), Some(h), Some(divs), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let discriminant: i64 = d.trim().parse().map_err(|_| bad())?;
        let h: u64 = h.trim().parse().map_err(|_| bad())?;
        let divs = divs.trim();
        let data = if discriminant > 0 {
            if divs != "*" {
                return Err(bad());
            }
            ClassData::RealNarrow(h)
        } else {
            let inv = if divs == "-" {
                Vec::new()
            } else {
                divs.split_whitespace().map(|s| s.parse::<u64>().map_err(|_| bad())).collect::<Result<_>>()?
            };
            let g = AbelianStructure::from_invariants(inv).ok_or_else(bad)?;
            if g.order() != h {
                return Err(bad());
            }
            ClassData::Imaginary(g)
        };
        Ok(CacheEntry { discriminant, data })
    }
}

type Slot = Arc<OnceLock<Result<ClassData>>>;

/// Concurrent get-or-compute map from discriminant to class data. Each key is
/// computed at most once even under concurrent requests.
#[derive(Debug, Default)]
pub struct ClassCache {
    slots: Mutex<HashMap<i64, Slot>>,
}

impl ClassCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, disc: i64, compute: impl FnOnce() -> Result<ClassData>) -> Result<ClassData> {
        let slot = {
            let mut slots = self.slots.lock().expect("cache lock poisoned");
            slots.entry(disc).or_default().clone()
        };
        slot.get_or_init(compute).clone()
    }

    pub fn insert(&self, entry: CacheEntry) {
        let slot: Slot = Arc::new(OnceLock::new());
        let _ = slot.set(Ok(entry.data));
        self.slots.lock().expect("cache lock poisoned").insert(entry.discriminant, slot);
    }

    /// Successfully computed entries, sorted by discriminant.
    pub fn entries(&self) -> Vec<CacheEntry> {
        let slots = self.slots.lock().expect("cache lock poisoned");
        let mut out: Vec<CacheEntry> = slots
            .iter()
            .filter_map(|(&d, slot)| match slot.get() {
                Some(Ok(data)) => Some(CacheEntry { discriminant: d, data: data.clone() }),
                _ => None,
            })
            .collect();
        out.sort_by_key(|e| e.discriminant);
        out
    }

    pub fn len(&self) -> usize {
        self.entries().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Loads a cache file. Returns the number of lines read and whether the
    /// file held duplicate discriminants (which calls for compaction).
    pub fn load(&self, path: &Path) -> Result<(usize, bool)> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((0, false)),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let mut lines = text.lines();
        match lines.next() {
            Some(CACHE_HEADER) => {}
            None => return Ok((0, false)),
            Some(other) => return Err(Error::Cache(format!("unsupported cache header {other:?}"))),
        }
        let mut seen: BTreeMap<i64, CacheEntry> = BTreeMap::new();
        let mut count = 0;
        let mut duplicates = false;
        for line in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = CacheEntry::parse_line(line)?;
            count += 1;
            if let Some(prev) = seen.insert(entry.discriminant, entry.clone()) {
                if prev != entry {
                    return Err(Error::Cache(format!("conflicting entries for D = {}", entry.discriminant)));
                }
                duplicates = true;
            }
        }
        for entry in seen.into_values() {
            self.insert(entry);
        }
        Ok((count, duplicates))
    }

    /// Appends the given entries to the file, writing the header first if the
    /// file is new.
    pub fn append(path: &Path, entries: &[CacheEntry]) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let fresh = !path.exists() || fs::metadata(path).map_err(io)?.len() == 0;
        let mut file = fs::OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        let mut buf = String::new();
        if fresh {
            buf.push_str(CACHE_HEADER);
            buf.push_str("\n# D,h,elementary_divisors\n");
        }
        for e in entries {
            buf.push_str(&e.to_line());
            buf.push('\n');
        }
        file.write_all(buf.as_bytes()).map_err(io)
    }

    /// Rewrites the file with every entry of this cache, sorted and
    /// deduplicated, through a temporary file and an atomic rename.
    pub fn compact(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let tmp = path.with_extension("tmp");
        let mut buf = String::from(CACHE_HEADER);
        buf.push_str("\n# D,h,elementary_divisors\n");
        for e in self.entries() {
            buf.push_str(&e.to_line());
            buf.push('\n');
        }
        fs::write(&tmp, buf).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}
