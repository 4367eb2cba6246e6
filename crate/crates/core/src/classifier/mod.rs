//! Rank case lists, the `(2,4)` and `(2,2,2)` criteria, and verdict assembly.

mod cases;
mod criteria;
mod verdict;

pub use cases::{rank2_case, rank3_case, RankCase};
pub use criteria::{criterion_222, criterion_24, Criterion};
pub use verdict::{classify, classify_222, classify_24, classify_with, GroupType, Verdict};
