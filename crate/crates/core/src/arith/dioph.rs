//! Bounded Diophantine searches: `p = u^2 - 2v^2` and the five-parameter
//! representation `2 q2 = k^2 X^2 + 2 l X Y + 2 m Y^2`, `q1 = l^2 - 2 k^2 m`.

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use super::prime::is_prime;
use super::symbols::jacobi;
use crate::error::{precondition, Error, Result};

/// `p = u^2 - 2 v^2` with `u = 1 (mod 8)` and `v > 0` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UvRep {
    pub u: i64,
    pub v: u64,
    /// True when the positive square root had to be negated to reach `u = 1 (mod 8)`.
    pub u_negated: bool,
}

/// Smallest `v > 0` for which `p + 2v^2` is a square `u^2` with `u` or `-u`
/// congruent to 1 mod 8. Searches `v <= bound` (default `10 p`).
pub fn represent_u2_minus_2v2(p: u64, bound: Option<u64>) -> Result<UvRep> {
    if p % 8 != 1 || !is_prime(p) {
        return precondition(format!("u^2 - 2v^2 representation needs a prime p = 1 (mod 8), got {p}"));
    }
    let bound = bound.unwrap_or(10 * p);
    // v is even because p = 1 (mod 8)
    for v in (2..=bound).step_by(2) {
        let t = p as u128 + 2 * (v as u128) * (v as u128);
        let u = t.sqrt();
        if u * u != t {
            continue;
        }
        let u = i64::try_from(u).map_err(|_| Error::OutOfRange(format!("u = {u}")))?;
        match u.rem_euclid(8) {
            1 => return Ok(UvRep { u, v, u_negated: false }),
            7 => return Ok(UvRep { u: -u, v, u_negated: true }),
            _ => continue,
        }
    }
    Err(Error::SearchExhausted { what: format!("u^2 - 2v^2 = {p}"), bound })
}

/// Five integers with `2 q2 = k^2 X^2 + 2 l X Y + 2 m Y^2`, `q1 = l^2 - 2 k^2 m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KaplanParams {
    pub x: i64,
    pub y: i64,
    pub k: i64,
    pub l: i64,
    pub m: i64,
}

impl KaplanParams {
    /// `|k^2 X + l Y|`, the modulus of the (2,4) criterion.
    pub fn criterion_modulus(&self) -> u64 {
        (self.k * self.k * self.x + self.l * self.y).unsigned_abs()
    }

    pub fn satisfies(&self, q1: u64, q2: u64) -> bool {
        let (x, y, k, l, m) = (self.x as i128, self.y as i128, self.k as i128, self.l as i128, self.m as i128);
        2 * q2 as i128 == k * k * x * x + 2 * l * x * y + 2 * m * y * y && q1 as i128 == l * l - 2 * k * k * m
    }

    fn max_norm(&self) -> u64 {
        [self.x, self.y, self.k, self.l, self.m].iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }
}

/// `0, 1, -1, 2, -2, ...` up to absolute value `n`.
fn signed_range(n: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=n).flat_map(|v| [v, -v]))
}

/// Deterministic search for [`KaplanParams`] with `|k^2 X + l Y|` odd.
///
/// Candidates are visited shell by shell in `max(|k|,|l|,|m|,|X|,|Y|)`; inside
/// a shell the order is `k` ascending, then `l` and `Y` in `0, 1, -1, 2, ...`
/// order, then the larger root `X` first. `k` ranges over positive values only
/// since it enters through `k^2`. The default bound is `10 max(q1, q2)`.
pub fn kaplan_parameters(q1: u64, q2: u64, bound: Option<u64>) -> Result<KaplanParams> {
    let ok = q1 != q2 && q1 % 8 == 3 && q2 % 8 == 3 && is_prime(q1) && is_prime(q2) && jacobi(q1 as i64, q2)?.is_plus();
    if !ok {
        return precondition(format!("parameters need primes q1 = q2 = 3 (mod 8) with (q1/q2) = 1, got ({q1}, {q2})"));
    }
    let bound = bound.unwrap_or(10 * q1.max(q2));
    let (q1i, q2i) = (q1 as i128, q2 as i128);
    for n in 1..=bound as i64 {
        for k in 1..=n {
            let kk = (k * k) as i128;
            for l in signed_range(n) {
                let num = (l as i128) * (l as i128) - q1i;
                if num % (2 * kk) != 0 {
                    continue;
                }
                let m = num / (2 * kk);
                if m.unsigned_abs() > n as u128 {
                    continue;
                }
                for y in signed_range(n) {
                    let yi = y as i128;
                    // X = (-lY +- sqrt(q1 Y^2 + 2 k^2 q2)) / k^2
                    let disc = q1i * yi * yi + 2 * kk * q2i;
                    let s = disc.sqrt();
                    if s * s != disc {
                        continue;
                    }
                    for root in [s, -s] {
                        let xnum = -(l as i128) * yi + root;
                        if xnum % kk != 0 {
                            continue;
                        }
                        let x = xnum / kk;
                        if x.unsigned_abs() > n as u128 {
                            continue;
                        }
                        let cand = KaplanParams { x: x as i64, y, k, l, m: m as i64 };
                        if cand.max_norm() != n as u64 || cand.criterion_modulus().is_multiple_of(2) {
                            continue;
                        }
                        if !cand.satisfies(q1, q2) {
                            return Err(Error::Integrity(format!("{cand:?} fails re-substitution")));
                        }
                        return Ok(cand);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted { what: format!("Kaplan parameters for ({q1}, {q2})"), bound })
}

/// Enumerates every solution with max-norm at most `bound`, odd criterion
/// modulus or not. Used to probe whether downstream criteria depend on the
/// chosen solution.
pub fn kaplan_solutions(q1: u64, q2: u64, bound: i64) -> Vec<KaplanParams> {
    let mut out = Vec::new();
    let (q1i, q2i) = (q1 as i128, q2 as i128);
    for k in 1..=bound {
        let kk = (k * k) as i128;
        for l in -bound..=bound {
            let num = (l as i128) * (l as i128) - q1i;
            if num % (2 * kk) != 0 || (num / (2 * kk)).unsigned_abs() > bound as u128 {
                continue;
            }
            let m = (num / (2 * kk)) as i64;
            for y in -bound..=bound {
                let yi = y as i128;
                let disc = q1i * yi * yi + 2 * kk * q2i;
                let s = disc.sqrt();
                if s * s != disc {
                    continue;
                }
                let roots = if s == 0 { vec![0] } else { vec![s, -s] };
                for root in roots {
                    let xnum = -(l as i128) * yi + root;
                    if xnum % kk == 0 && (xnum / kk).unsigned_abs() <= bound as u128 {
                        out.push(KaplanParams { x: (xnum / kk) as i64, y, k, l, m });
                    }
                }
            }
        }
    }
    out
}
