use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{FactoredOdd, SymbolLog};
use crate::error::Result;

/// Which enumerated shape of `d` fixes the 2-rank of `Cl_2(L_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCase {
    pub rank: u8,
    pub case_id: u8,
    pub primes: Vec<u64>,
    pub witness: String,
}

impl fmt::Display for RankCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} case {}: {}", self.rank, self.case_id, self.witness)
    }
}

/// Primes of `d` ordered by residue mod 8, then by size.
fn by_residue(d: &FactoredOdd) -> (Vec<u8>, Vec<u64>) {
    let mut v: Vec<(u8, u64)> = d.factors().iter().map(|f| (f.mod8, f.prime)).collect();
    v.sort_unstable();
    v.into_iter().unzip()
}

fn case(rank: u8, case_id: u8, primes: Vec<u64>, witness: String) -> Option<RankCase> {
    Some(RankCase { rank, case_id, primes, witness })
}

/// The five shapes of `d` for which `Cl_2(L_d)` has rank 2:
///
/// 1. `q1 q2`, `q1 = q2 = 3 (mod 8)`
/// 2. `p1 p2`, `p1 = p2 = 5 (mod 8)`
/// 3. `q1 q2`, `q1 = 3`, `q2 = 7 (mod 8)`
/// 4. `p q`, `p = 5`, `q = 7 (mod 8)`
/// 5. `p = 1 (mod 8)` with `p = 9 (mod 16)` or `(2/p)_4 != (p/2)_4`
pub fn rank2_case(d: &FactoredOdd, log: &mut SymbolLog) -> Result<Option<RankCase>> {
    let (r, p) = by_residue(d);
    Ok(match r.as_slice() {
        [3, 3] => case(2, 1, p.clone(), format!("q1 = {}, q2 = {}, both = 3 (mod 8)", p[0], p[1])),
        [5, 5] => case(2, 2, p.clone(), format!("p1 = {}, p2 = {}, both = 5 (mod 8)", p[0], p[1])),
        [3, 7] => case(2, 3, p.clone(), format!("q1 = {} = 3, q2 = {} = 7 (mod 8)", p[0], p[1])),
        [5, 7] => case(2, 4, p.clone(), format!("p = {} = 5, q = {} = 7 (mod 8)", p[0], p[1])),
        [1] => {
            let q = p[0];
            let s2p = log.quartic(2, q)?;
            let sp2 = log.quartic_mod2(q as i64)?;
            if q % 16 == 9 {
                case(2, 5, p, format!("p = {q} = 9 (mod 16)"))
            } else if s2p != sp2 {
                case(2, 5, p, format!("p = {q}, (2/{q})_4 = {s2p} != ({q}/2)_4 = {sp2}"))
            } else {
                None
            }
        }
        _ => None,
    })
}

/// The six shapes of `d` for which `Cl_2(L_d)` has rank 3:
///
/// 1. `p = 1 (mod 8)`, `(2/p)_4 = (p/2)_4 = 1`
/// 2. `q1 q2`, `q1 = q2 = 7 (mod 8)`
/// 3. `q p`, `q = 3`, `p = 1 (mod 8)`, `(2/p)_4 = -1`
/// 4. `p1 p2`, `p1 = 5`, `p2 = 1 (mod 8)`, `(2/p2)_4 != (p2/2)_4`
/// 5. `q1 q2 p`, `q1 = q2 = 3`, `p = 5 (mod 8)`
/// 6. `q p1 p2`, `q = 3`, `p1 = p2 = 5 (mod 8)`
pub fn rank3_case(d: &FactoredOdd, log: &mut SymbolLog) -> Result<Option<RankCase>> {
    let (r, p) = by_residue(d);
    Ok(match r.as_slice() {
        [1] => {
            let q = p[0];
            let s2p = log.quartic(2, q)?;
            let sp2 = log.quartic_mod2(q as i64)?;
            if s2p.is_plus() && sp2.is_plus() {
                case(3, 1, p, format!("p = {q}, (2/{q})_4 = ({q}/2)_4 = 1"))
            } else {
                None
            }
        }
        [7, 7] => case(3, 2, p.clone(), format!("q1 = {}, q2 = {}, both = 7 (mod 8)", p[0], p[1])),
        [1, 3] => {
            let (pp, q) = (p[0], p[1]);
            let s = log.quartic(2, pp)?;
            if s.is_minus() {
                case(3, 3, vec![q, pp], format!("q = {q}, p = {pp}, (2/{pp})_4 = -1"))
            } else {
                None
            }
        }
        [1, 5] => {
            let (p2, p1) = (p[0], p[1]);
            let s2p = log.quartic(2, p2)?;
            let sp2 = log.quartic_mod2(p2 as i64)?;
            if s2p != sp2 {
                case(3, 4, vec![p1, p2], format!("p1 = {p1}, p2 = {p2}, (2/{p2})_4 = {s2p} != ({p2}/2)_4 = {sp2}"))
            } else {
                None
            }
        }
        [3, 3, 5] => case(3, 5, p.clone(), format!("q1 = {}, q2 = {}, p = {}", p[0], p[1], p[2])),
        [3, 5, 5] => case(3, 6, p.clone(), format!("q = {}, p1 = {}, p2 = {}", p[0], p[1], p[2])),
        _ => None,
    })
}
