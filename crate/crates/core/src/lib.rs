//! 2-class groups of the imaginary triquadratic fields `L_d = Q(zeta_8, sqrt d)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`arith`]: primality, factorization, residue symbols, Diophantine solvers.
//! - [`quadforms`]: class groups of quadratic fields via binary quadratic forms.
//! - [`units`]: fundamental units and unit indices of real multiquadratic fields.
//! - [`formulas`]: class number formulas assembled into routes for `h2(L_d)`.
//! - [`classifier`]: rank case lists and the `(2,4)` / `(2,2,2)` criteria.
//! - [`report`]: scan records, JSON/CSV rendering, the published example table.

pub mod arith;
pub mod classifier;
mod error;
pub mod formulas;
pub mod quadforms;
pub mod report;
pub mod units;

use std::collections::HashSet;
use std::path::Path;

pub use error::{Error, Result};

use quadforms::{CacheEntry, ClassCache};

pub const DEFAULT_CEILING: u64 = 1_000_000;
pub const DEFAULT_PRECISION_CEILING: u64 = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Largest `d` accepted by classification and scans.
    pub ceiling: u64,
    /// Search bound for the Diophantine solvers; `None` uses their defaults.
    pub search_bound: Option<u64>,
    /// Largest `|D|` the forms engine will enumerate.
    pub max_discriminant: u64,
    /// Working-precision ceiling, in bits, for squareness tests.
    pub precision_ceiling: u64,
}

impl Config {
    /// Configuration for a given `d` ceiling. Discriminants up to `8 * ceiling`
    /// are needed since `Q(sqrt(-2d))` has discriminant `-8d`.
    pub fn with_ceiling(ceiling: u64) -> Self {
        Config {
            ceiling,
            search_bound: None,
            max_discriminant: ceiling.saturating_mul(8),
            precision_ceiling: DEFAULT_PRECISION_CEILING,
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::with_ceiling(DEFAULT_CEILING)
    }
}

/// Configuration plus the shared class-group cache. Cheap to share across threads.
#[derive(Debug, Default)]
pub struct Context {
    config: Config,
    cache: ClassCache,
}

impl Context {
    pub fn new(config: Config) -> Self {
        Context { config, cache: ClassCache::new() }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn cache(&self) -> &ClassCache {
        &self.cache
    }

    /// Preloads cache entries from `path`, compacting the file if it held
    /// duplicates. A missing file is not an error.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        let (n, duplicates) = self.cache.load(path)?;
        if duplicates {
            self.cache.compact(path)?;
        }
        Ok(n)
    }

    /// Appends entries whose discriminants are not in `known` to the cache file.
    pub fn save_cache(&self, path: &Path, known: &HashSet<i64>) -> Result<()> {
        let fresh: Vec<CacheEntry> =
            self.cache.entries().into_iter().filter(|e| !known.contains(&e.discriminant)).collect();
        if fresh.is_empty() && path.exists() {
            return Ok(());
        }
        ClassCache::append(path, &fresh)
    }

    pub fn check_ceiling(&self, d: u64) -> Result<()> {
        if d > self.config.ceiling {
            return Err(Error::OutOfRange(format!("d = {d} exceeds ceiling {}", self.config.ceiling)));
        }
        Ok(())
    }
}
