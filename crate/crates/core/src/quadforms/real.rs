//! Narrow class numbers of real quadratic fields from cycles of reduced
//! indefinite forms.

use std::collections::HashMap;

use num_integer::Roots;

use super::form::{FundamentalDiscriminant, QForm};
use crate::error::{precondition, Error, Result};

fn check_real(d: FundamentalDiscriminant, limit: u64) -> Result<i64> {
    let disc = d.value();
    if disc <= 0 {
        return precondition(format!("{disc} is not a real discriminant"));
    }
    if disc as u64 > limit {
        return Err(Error::OutOfRange(format!("D = {disc} above enumeration bound {limit}")));
    }
    Ok(disc)
}

/// All reduced indefinite forms of discriminant `D > 0`.
pub fn reduced_indefinite_forms(d: FundamentalDiscriminant, limit: u64) -> Result<Vec<QForm>> {
    let disc = check_real(d, limit)?;
    let r = disc.sqrt();
    let mut out = Vec::new();
    for b in 1..=r {
        if (b - disc).rem_euclid(2) != 0 {
            continue;
        }
        let n = (disc - b * b) / 4;
        // (sqrt D - b)/2 < A < (sqrt D + b)/2
        let lo = ((r - b) / 2).max(1);
        let hi = (r + b) / 2 + 1;
        for a_abs in lo..=hi {
            if n % a_abs != 0 {
                continue;
            }
            for a in [a_abs, -a_abs] {
                let f = QForm { a, b, c: -n / a };
                if f.is_reduced_indefinite() {
                    out.push(f);
                }
            }
        }
    }
    Ok(out)
}

/// The reduction operator `rho(a, b, c) = (c, b', *)` with `b' = -b (mod 2|c|)`
/// and `sqrt D - 2|c| < b' < sqrt D`. Maps reduced forms to reduced forms.
pub fn rho(f: &QForm) -> QForm {
    let disc = f.discriminant();
    let r = disc.sqrt();
    let two_c = 2 * f.c.abs();
    let b = r - (r + f.b).rem_euclid(two_c);
    QForm::from_ab(f.c, b, disc).expect("rho preserves the discriminant")
}

/// The cycles of reduced forms under `rho`, each listed from its first form in
/// enumeration order.
pub fn cycles(d: FundamentalDiscriminant, limit: u64) -> Result<Vec<Vec<QForm>>> {
    let forms = reduced_indefinite_forms(d, limit)?;
    let index: HashMap<QForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut seen = vec![false; forms.len()];
    let mut out = Vec::new();
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(forms[i]);
            let next = rho(&forms[i]);
            i = *index
                .get(&next)
                .ok_or_else(|| Error::Integrity(format!("rho({}) = {next} left the reduced set", forms[i])))?;
        }
        if i != start {
            return Err(Error::Integrity(format!("rho orbit from {} is not a cycle", forms[start])));
        }
        out.push(cycle);
    }
    Ok(out)
}

/// `h+(D)`, the number of proper equivalence classes of forms of discriminant `D`.
pub fn narrow_class_number(d: FundamentalDiscriminant, limit: u64) -> Result<u64> {
    Ok(cycles(d, limit)?.len() as u64)
}
