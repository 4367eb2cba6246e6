use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Finite abelian group by invariant factors `d1 | d2 | ... | dr`, each `> 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianStructure {
    invariants: Vec<u64>,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// From invariant factors; returns `None` unless each divides the next.
    pub fn from_invariants(mut invariants: Vec<u64>) -> Option<Self> {
        invariants.retain(|&d| d != 1);
        if invariants.contains(&0) || invariants.windows(2).any(|w| w[1] % w[0] != 0) {
            return None;
        }
        Some(AbelianStructure { invariants })
    }

    /// Assembles the invariant factors from per-prime cyclic exponents, i.e.
    /// `p -> [e1, e2, ...]` meaning `Z/p^e1 x Z/p^e2 x ...`.
    pub fn from_primary_parts(parts: &BTreeMap<u64, Vec<u32>>) -> Self {
        let rank = parts.values().map(Vec::len).max().unwrap_or(0);
        let mut invariants = vec![1u64; rank];
        for (&p, exps) in parts {
            let mut exps = exps.clone();
            exps.sort_unstable();
            // largest exponents go to the last (largest) invariant factors
            for (slot, e) in invariants.iter_mut().rev().zip(exps.iter().rev()) {
                *slot *= p.pow(*e);
            }
        }
        AbelianStructure::from_invariants(invariants).expect("primary decomposition yields a chain")
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn p_rank(&self, p: u64) -> usize {
        self.invariants.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn two_rank(&self) -> usize {
        self.p_rank(2)
    }

    /// Number of cyclic factors of order divisible by `2^l`.
    pub fn two_power_rank(&self, l: u32) -> usize {
        self.invariants.iter().filter(|&&d| d % (1 << l) == 0).count()
    }

    /// The 2-Sylow subgroup.
    pub fn two_part(&self) -> AbelianStructure {
        let inv = self.invariants.iter().map(|&d| 1u64 << d.trailing_zeros()).collect();
        AbelianStructure::from_invariants(inv).expect("2-parts of a chain form a chain")
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.invariants.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
