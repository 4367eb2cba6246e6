//! Class groups of imaginary quadratic fields by enumeration of reduced forms.

use std::collections::BTreeMap;

use num_integer::Roots;

use super::form::{power, FundamentalDiscriminant, QForm};
use super::structure::AbelianStructure;
use crate::arith::factor;
use crate::error::{precondition, Error, Result};

fn check_imaginary(d: FundamentalDiscriminant, limit: u64) -> Result<i64> {
    let disc = d.value();
    if disc >= 0 {
        return precondition(format!("{disc} is not an imaginary discriminant"));
    }
    if disc.unsigned_abs() > limit {
        return Err(Error::OutOfRange(format!("|D| = {} above enumeration bound {limit}", -disc)));
    }
    Ok(disc)
}

/// All reduced positive definite forms of discriminant `D`; one per class.
pub fn reduced_forms(d: FundamentalDiscriminant, limit: u64) -> Result<Vec<QForm>> {
    let disc = check_imaginary(d, limit)?;
    let amax = (disc.unsigned_abs() / 3).sqrt() as i64;
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in (-a + 1)..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let Some(f) = QForm::from_ab(a, b, disc) else { continue };
            if f.c < a || (f.c == a && b < 0) {
                continue;
            }
            out.push(f);
        }
    }
    Ok(out)
}

pub fn class_number(d: FundamentalDiscriminant, limit: u64) -> Result<u64> {
    Ok(reduced_forms(d, limit)?.len() as u64)
}

/// Order of `f` in a group of order `h` with factorization `h_factors`.
fn element_order(f: &QForm, h: u64, h_factors: &[(u64, u32)]) -> Result<u64> {
    let one = QForm::principal(f.discriminant());
    let mut ord = h;
    for &(p, e) in h_factors {
        for _ in 0..e {
            if power(f, ord / p)? == one {
                ord /= p;
            } else {
                break;
            }
        }
    }
    if power(f, ord)? != one {
        return Err(Error::Integrity(format!("{f}^{ord} is not principal; order does not divide h = {h}")));
    }
    Ok(ord)
}

/// Full invariant-factor structure of `Cl(D)`.
///
/// Each element order is computed by stripping prime factors of `h`; the
/// `p^k`-torsion counts `|G[p^k]|` then determine every primary component.
pub fn class_group(d: FundamentalDiscriminant, limit: u64) -> Result<AbelianStructure> {
    let forms = reduced_forms(d, limit)?;
    let h = forms.len() as u64;
    let h_factors = factor(h);
    let orders = forms.iter().map(|f| element_order(f, h, &h_factors)).collect::<Result<Vec<_>>>()?;
    let mut parts = BTreeMap::new();
    for &(p, e) in &h_factors {
        // p-adic valuation of each element order of p-power order
        let valuations: Vec<u32> = orders
            .iter()
            .filter_map(|&o| {
                let mut v = 0;
                let mut o = o;
                while o % p == 0 {
                    o /= p;
                    v += 1;
                }
                (o == 1).then_some(v)
            })
            .collect();
        // log_p |G[p^k]| for k = 0..=e
        let mut logs = vec![0u32];
        for k in 1..=e {
            let count = valuations.iter().filter(|&&v| v <= k).count() as u64;
            let mut lg = 0;
            let mut c = count;
            while c.is_multiple_of(p) {
                c /= p;
                lg += 1;
            }
            if c != 1 {
                return Err(Error::Integrity(format!("|G[{p}^{k}]| = {count} is not a power of {p}")));
            }
            logs.push(lg);
        }
        // factors of order >= p^k: logs[k] - logs[k-1]
        let mut exps = Vec::new();
        for k in 1..=e as usize {
            let at_least_k = logs[k] - logs[k - 1];
            let at_least_next = if k < e as usize { logs[k + 1] - logs[k] } else { 0 };
            for _ in 0..(at_least_k - at_least_next) {
                exps.push(k as u32);
            }
        }
        parts.insert(p, exps);
    }
    let g = AbelianStructure::from_primary_parts(&parts);
    if g.order() != h {
        return Err(Error::Integrity(format!("structure {g} has order {} but h = {h}", g.order())));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::form::{compose, reduce};

    const LIMIT: u64 = 10_000_000;

    fn disc(m: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::from_radicand(m).unwrap()
    }

    #[test]
    fn small_class_numbers() {
        // classical table
        for (m, h) in [(-1, 1), (-2, 1), (-3, 1), (-5, 2), (-23, 3), (-47, 5), (-163, 1), (-14, 4), (-89, 12)] {
            assert_eq!(class_number(disc(m), LIMIT).unwrap(), h, "m = {m}");
        }
    }

    #[test]
    fn structures() {
        assert!(class_group(disc(-1), LIMIT).unwrap().is_trivial());
        assert_eq!(class_group(disc(-21), LIMIT).unwrap().invariants(), &[2, 2]);
        assert_eq!(class_group(disc(-89), LIMIT).unwrap().invariants(), &[12]);
        // D = -1155 = -3 * 5 * 7 * 11
        let g = class_group(disc(-1155), LIMIT).unwrap();
        assert_eq!(g.two_rank(), 3);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(class_number(disc(-89), 100), Err(Error::OutOfRange(_))));
        assert!(class_number(disc(89), LIMIT).is_err());
    }

    #[test]
    fn every_form_reduces_into_the_enumeration() {
        let d = disc(-89);
        let forms = reduced_forms(d, LIMIT).unwrap();
        assert!(forms.iter().all(QForm::is_reduced_definite));
        for f in &forms {
            for g in &forms {
                let fg = compose(f, g).unwrap();
                assert!(forms.contains(&fg));
                assert_eq!(fg, compose(g, f).unwrap());
            }
            assert_eq!(reduce(*f).unwrap(), *f);
        }
    }

    #[test]
    fn lagrange_for_disc_minus_356() {
        let d = disc(-89);
        let h = class_number(d, LIMIT).unwrap();
        for f in reduced_forms(d, LIMIT).unwrap() {
            assert_eq!(power(&f, h).unwrap(), QForm::principal(d.value()));
        }
    }
}
