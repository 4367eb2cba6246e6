use serde::{Deserialize, Serialize};

use crate::arith::{kaplan_parameters, represent_u2_minus_2v2, FactoredOdd, SymbolLog};
use crate::error::Result;
use crate::Context;

/// Outcome of a classification criterion on a `d` of the shape it addresses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub holds: bool,
    pub detail: String,
}

/// Orders two primes `= 3 (mod 4)` so that `(q1/q2) = 1`. Their symbols are
/// opposite, so exactly one order works.
fn oriented(a: u64, b: u64, log: &mut SymbolLog) -> Result<(u64, u64)> {
    if log.jacobi(a as i64, b)?.is_plus() {
        Ok((a, b))
    } else {
        log.jacobi(b as i64, a)?;
        Ok((b, a))
    }
}

/// The `(2,4)` criterion, for `d = p = 1 (mod 8)` or `d = q1 q2` with
/// `q1 = q2 = 3 (mod 8)`; `None` for other shapes.
///
/// - `p = 9 (mod 16)`, `(2/p)_4 != (p/2)_4` and `(u/p)_4 = -1`, where `p = u^2 - 2v^2`
/// - `(q1/q2) = 1` and `(-2/|k^2 X + l Y|) = -1`, where `q1 = l^2 - 2k^2 m`
///   and `2 q2 = k^2 X^2 + 2 l X Y + 2 m Y^2`
pub fn criterion_24(ctx: &Context, d: &FactoredOdd, log: &mut SymbolLog) -> Result<Option<Criterion>> {
    let bound = ctx.config().search_bound;
    let f = d.factors();
    match f {
        [p] if p.mod8 == 1 => {
            let p = p.prime;
            let s2p = log.quartic(2, p)?;
            let sp2 = log.quartic_mod2(p as i64)?;
            if p % 16 != 9 {
                return Ok(Some(Criterion { holds: false, detail: format!("p = {p} is not 9 (mod 16)") }));
            }
            if s2p == sp2 {
                return Ok(Some(Criterion { holds: false, detail: format!("(2/{p})_4 = ({p}/2)_4 = {s2p}") }));
            }
            let uv = represent_u2_minus_2v2(p, bound)?;
            let su = log.quartic(uv.u, p)?;
            let head =
                format!("p = {p} = 9 (mod 16), (2/{p})_4 = {s2p} != ({p}/2)_4 = {sp2}, u = {}, v = {}", uv.u, uv.v);
            Ok(Some(Criterion { holds: su.is_minus(), detail: format!("{head}, ({}/{p})_4 = {su}", uv.u) }))
        }
        [a, b] if a.mod8 == 3 && b.mod8 == 3 => {
            let (q1, q2) = oriented(a.prime, b.prime, log)?;
            let kp = kaplan_parameters(q1, q2, bound)?;
            let modulus = kp.criterion_modulus();
            let s = log.jacobi(-2, modulus)?;
            let detail = format!(
                "q1 = {q1}, q2 = {q2}, (q1/q2) = 1, (X, Y, k, l, m) = ({}, {}, {}, {}, {}), (-2/{modulus}) = {s}",
                kp.x, kp.y, kp.k, kp.l, kp.m
            );
            Ok(Some(Criterion { holds: s.is_minus(), detail }))
        }
        _ => Ok(None),
    }
}

/// The `(2,2,2)` criterion, for `d = p1 p2` with `p1 = 5`, `p2 = 1 (mod 8)`
/// or `d = q p` with `q = 3`, `p = 1 (mod 8)`; `None` for other shapes.
///
/// - `(2/p2)_4 != (p2/2)_4` and `(p2/p1) = -1`
/// - `(2/p)_4 = -1` and `(p/q) = -1`
pub fn criterion_222(_ctx: &Context, d: &FactoredOdd, log: &mut SymbolLog) -> Result<Option<Criterion>> {
    let mut f: Vec<(u8, u64)> = d.factors().iter().map(|f| (f.mod8, f.prime)).collect();
    f.sort_unstable();
    match f.as_slice() {
        [(1, p2), (5, p1)] => {
            let (p1, p2) = (*p1, *p2);
            let s2p = log.quartic(2, p2)?;
            let sp2 = log.quartic_mod2(p2 as i64)?;
            let leg = log.jacobi(p2 as i64, p1)?;
            let detail = format!("p1 = {p1}, p2 = {p2}, (2/{p2})_4 = {s2p}, ({p2}/2)_4 = {sp2}, ({p2}/{p1}) = {leg}");
            Ok(Some(Criterion { holds: s2p != sp2 && leg.is_minus(), detail }))
        }
        [(1, p), (3, q)] => {
            let (p, q) = (*p, *q);
            let s2p = log.quartic(2, p)?;
            let leg = log.jacobi(p as i64, q)?;
            let detail = format!("q = {q}, p = {p}, (2/{p})_4 = {s2p}, ({p}/{q}) = {leg}");
            Ok(Some(Criterion { holds: s2p.is_minus() && leg.is_minus(), detail }))
        }
        _ => Ok(None),
    }
}
