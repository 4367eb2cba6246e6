use super::H2Result;
use crate::arith::{FactoredOdd, SymbolLog};
use crate::error::{Error, Result};

fn sorted_by_residue(d: &FactoredOdd) -> Vec<(u64, u8)> {
    let mut v: Vec<(u64, u8)> = d.factors().iter().map(|f| (f.prime, f.mod8)).collect();
    v.sort_by_key(|&(p, r)| (r, p));
    v
}

/// Power of 2 known to divide `h2(L_d)` from the shape of `d` alone.
///
/// | shape of `d` | side condition | bound |
/// |---|---|---|
/// | `p1 p2`, `p1 = p2 = 5 (mod 8)` | | 16 |
/// | `p = 1 (mod 8)` | `(2/p)_4 = (p/2)_4 = 1` | 16 |
/// | `p = 1 (mod 8)` | `(2/p)_4 = (p/2)_4 = -1` | 16 |
/// | `q1 q2`, `q1 = q2 = 7 (mod 8)` | | 32 |
/// | `p1 p2`, `p1 = 5`, `p2 = 1 (mod 8)` | `(p2/p1) = 1` | 32 |
/// | `q1 q2 p`, `q1 = q2 = 3`, `p = 5 (mod 8)` | | 32 |
/// | `q p1 p2`, `q = 3`, `p1 = p2 = 5 (mod 8)` | | 32 |
pub fn divisibility_certificate(d: &FactoredOdd, log: &mut SymbolLog) -> Result<H2Result> {
    let f = sorted_by_residue(d);
    let residues: Vec<u8> = f.iter().map(|&(_, r)| r).collect();
    let cert =
        |bound: u64, tag: &str, detail: String| Ok(H2Result::lower_bound(bound, format!("certificate:{tag}"), detail));
    match residues.as_slice() {
        [5, 5] => cert(16, "p1p2-5mod8", format!("d = {}*{}, both = 5 (mod 8)", f[0].0, f[1].0)),
        [1] => {
            let p = f[0].0;
            let s2p = log.quartic(2, p)?;
            let sp2 = log.quartic_mod2(p as i64)?;
            match (s2p.value(), sp2.value()) {
                (1, 1) => cert(16, "p-quartic-plus", format!("(2/{p})_4 = ({p}/2)_4 = 1")),
                (-1, -1) => cert(16, "p-quartic-minus", format!("(2/{p})_4 = ({p}/2)_4 = -1")),
                _ => Err(Error::NoCertificate(d.value())),
            }
        }
        [7, 7] => cert(32, "q1q2-7mod8", format!("d = {}*{}, both = 7 (mod 8)", f[0].0, f[1].0)),
        [1, 5] => {
            let (p2, p1) = (f[0].0, f[1].0);
            if log.jacobi(p2 as i64, p1)?.is_plus() {
                cert(32, "p1p2-5-1mod8", format!("p1 = {p1}, p2 = {p2}, ({p2}/{p1}) = 1"))
            } else {
                Err(Error::NoCertificate(d.value()))
            }
        }
        [3, 3, 5] => cert(32, "q1q2p", format!("q1 = {}, q2 = {}, p = {}", f[0].0, f[1].0, f[2].0)),
        [3, 5, 5] => cert(32, "qp1p2", format!("q = {}, p1 = {}, p2 = {}", f[0].0, f[1].0, f[2].0)),
        _ => Err(Error::NoCertificate(d.value())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_squarefree;

    fn bound(d: u64) -> Result<u64> {
        divisibility_certificate(&factor_squarefree(d).unwrap(), &mut SymbolLog::new()).map(|r| r.value)
    }

    #[test]
    fn known_bounds() {
        assert_eq!(bound(65).unwrap(), 16);
        assert_eq!(bound(1961).unwrap(), 16);
        assert_eq!(bound(161).unwrap(), 32);
        assert_eq!(bound(165).unwrap(), 32);
        assert_eq!(bound(429).unwrap(), 32);
        assert_eq!(bound(195).unwrap(), 32);
        assert_eq!(bound(435).unwrap(), 32);
        assert_eq!(bound(113).unwrap(), 16);
        assert_eq!(bound(337).unwrap(), 16);
    }

    #[test]
    fn no_certificate() {
        assert_eq!(bound(89), Err(Error::NoCertificate(89)));
        assert_eq!(bound(209), Err(Error::NoCertificate(209)));
        // (17/29) = -1
        assert_eq!(bound(493), Err(Error::NoCertificate(493)));
    }
}
