use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::ScanRecord;
use crate::arith::is_squarefree;
use crate::classifier::{classify_with, GroupType, Verdict};
use crate::error::{precondition, Error, Result};
use crate::formulas::RouteRegistry;
use crate::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFilter {
    Type24,
    Type222,
    Rank2,
    Rank3,
    All,
}

impl ScanFilter {
    pub fn accepts(self, v: &Verdict) -> bool {
        match self {
            ScanFilter::Type24 => v.group_type == GroupType::Type24,
            ScanFilter::Type222 => v.group_type == GroupType::Type222,
            ScanFilter::Rank2 => v.rank() == Some(2),
            ScanFilter::Rank3 => v.rank() == Some(3),
            ScanFilter::All => true,
        }
    }
}

impl FromStr for ScanFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "24" => Ok(ScanFilter::Type24),
            "222" => Ok(ScanFilter::Type222),
            "rank2" => Ok(ScanFilter::Rank2),
            "rank3" => Ok(ScanFilter::Rank3),
            "all" => Ok(ScanFilter::All),
            _ => precondition(format!("unknown filter {s:?}; expected 24, 222, rank2, rank3 or all")),
        }
    }
}

impl fmt::Display for ScanFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanFilter::Type24 => "24",
            ScanFilter::Type222 => "222",
            ScanFilter::Rank2 => "rank2",
            ScanFilter::Rank3 => "rank3",
            ScanFilter::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub min: u64,
    pub max: u64,
    pub filter: ScanFilter,
    pub timing: bool,
}

/// Counts over every odd square-free `d` in the range, before filtering.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub min: u64,
    pub max: u64,
    pub filter: String,
    pub scanned: usize,
    pub emitted: usize,
    pub rank2: usize,
    pub rank3: usize,
    pub type24: usize,
    pub type222: usize,
    pub not_target: usize,
    pub out_of_scope: usize,
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "range {}..{} filter {}: scanned {}, emitted {}, rank2 {}, rank3 {}, (2,4) {}, (2,2,2) {}, not-target {}, out-of-scope {}",
            self.min,
            self.max,
            self.filter,
            self.scanned,
            self.emitted,
            self.rank2,
            self.rank3,
            self.type24,
            self.type222,
            self.not_target,
            self.out_of_scope
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutput {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

/// Classifies every odd square-free `d` in `[min, max]` in parallel. Records
/// come back ordered by `d`.
pub fn scan(ctx: &Context, registry: &RouteRegistry, opts: &ScanOptions) -> Result<ScanOutput> {
    if opts.min <= 1 || opts.min > opts.max {
        return precondition(format!("scan range needs 1 < min <= max, got {}..{}", opts.min, opts.max));
    }
    ctx.check_ceiling(opts.max)?;
    let ds: Vec<u64> = (opts.min..=opts.max).filter(|&d| d % 2 == 1 && is_squarefree(d)).collect();
    let verdicts: Vec<(Verdict, f64)> = ds
        .par_iter()
        .map(|&d| {
            let t = Instant::now();
            let v = classify_with(ctx, registry, d)?;
            Ok((v, t.elapsed().as_secs_f64() * 1e3))
        })
        .collect::<Result<_>>()?;

    let mut summary = ScanSummary {
        min: opts.min,
        max: opts.max,
        filter: opts.filter.to_string(),
        scanned: verdicts.len(),
        ..Default::default()
    };
    let mut records = Vec::new();
    for (v, ms) in &verdicts {
        match v.rank() {
            Some(2) => summary.rank2 += 1,
            Some(3) => summary.rank3 += 1,
            _ => {}
        }
        match v.group_type {
            GroupType::Type24 => summary.type24 += 1,
            GroupType::Type222 => summary.type222 += 1,
            GroupType::NotOfTargetType => summary.not_target += 1,
            GroupType::OutOfScope => summary.out_of_scope += 1,
        }
        if opts.filter.accepts(v) {
            let mut r = ScanRecord::from(v);
            if opts.timing {
                r.timing_ms = Some(*ms);
            }
            records.push(r);
        }
    }
    summary.emitted = records.len();
    Ok(ScanOutput { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(min: u64, max: u64, filter: ScanFilter) -> Result<ScanOutput> {
        let ctx = Context::default();
        scan(&ctx, &RouteRegistry::standard(), &ScanOptions { min, max, filter, timing: false })
    }

    #[test]
    fn known_examples_appear() {
        let out = run(3, 500, ScanFilter::Type24).unwrap();
        let ds: Vec<u64> = out.records.iter().map(|r| r.d).collect();
        assert!(ds.contains(&89) && ds.contains(&209));
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
        let out = run(3, 500, ScanFilter::Type222).unwrap();
        let ds: Vec<u64> = out.records.iter().map(|r| r.d).collect();
        assert!(ds.contains(&187) && ds.contains(&493));
        assert_eq!(out.summary.emitted, out.summary.type222);
    }

    #[test]
    fn singleton_and_bad_ranges() {
        let out = run(3, 3, ScanFilter::All).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].d, 3);
        assert!(matches!(run(1, 5, ScanFilter::All), Err(Error::Precondition(_))));
        assert!(matches!(run(9, 5, ScanFilter::All), Err(Error::Precondition(_))));
        assert!(matches!(run(3, 2_000_001, ScanFilter::All), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn filters_parse() {
        for s in ["24", "222", "rank2", "rank3", "all"] {
            assert_eq!(s.parse::<ScanFilter>().unwrap().to_string(), s);
        }
        assert!("2,4".parse::<ScanFilter>().is_err());
    }
}
