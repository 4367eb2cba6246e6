//! Squareness of unit products in real biquadratic fields and unit indices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::fundamental::{eps_decomposition, fundamental_unit, FundUnit};
use super::multiquad::{Elem, MultiQuad};
use crate::arith::{jacobi, FactoredOdd};
use crate::error::{precondition, Error, Result};
use crate::DEFAULT_PRECISION_CEILING;

/// `scalar * prod eps_m^e` over fundamental units of real quadratic subfields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitProduct {
    pub scalar: u32,
    pub factors: Vec<(i64, u32)>,
}

impl UnitProduct {
    pub fn unit(m: i64) -> Self {
        UnitProduct { scalar: 1, factors: vec![(m, 1)] }
    }

    pub fn product(ms: &[i64]) -> Self {
        UnitProduct { scalar: 1, factors: ms.iter().map(|&m| (m, 1)).collect() }
    }

    pub fn scaled(mut self, scalar: u32) -> Self {
        self.scalar *= scalar;
        self
    }
}

impl fmt::Display for UnitProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.scalar != 1 || self.factors.is_empty() {
            parts.push(self.scalar.to_string());
        }
        for &(m, e) in &self.factors {
            parts.push(if e == 1 { format!("eps_{m}") } else { format!("eps_{m}^{e}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A unit index together with the square roots that realize it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitIndex {
    pub value: u64,
    pub basis_tag: String,
}

fn squarefree_product(a: i64, b: i64) -> i64 {
    let g = a.gcd(&b);
    (a / g) * (b / g)
}

/// `sqrt(2 s)` as `k sqrt(t)` with `t` square-free, for square-free `s`.
fn sqrt_of_double(s: u64) -> (i64, i64) {
    if s.is_multiple_of(2) {
        (2, (s / 2) as i64)
    } else {
        (1, (2 * s) as i64)
    }
}

/// Square root of `scalar * eps` for a single unit of norm `+1` with integral
/// coordinates, read off from the kernels of `x +- 1`:
/// `sqrt(2 eps) = c+ sqrt(s+) + c- sqrt(s-)`. Returns `Ok(None)` when the
/// scalar is not 1 or 2, or the unit does not have the required shape.
fn fast_path(field: &MultiQuad, unit: &FundUnit, scalar: u32) -> Result<Option<Option<Elem>>> {
    if unit.norm != 1 || unit.denom != 1 || !(scalar == 1 || scalar == 2) {
        return Ok(None);
    }
    let dec = eps_decomposition(unit)?;
    let terms = if scalar == 2 {
        [(BigInt::from(1), dec.sf_plus as i64, &dec.cof_plus), (BigInt::from(1), dec.sf_minus as i64, &dec.cof_minus)]
    } else {
        let (kp, tp) = sqrt_of_double(dec.sf_plus);
        let (km, tm) = sqrt_of_double(dec.sf_minus);
        [(BigInt::from(kp), tp, &dec.cof_plus), (BigInt::from(km), tm, &dec.cof_minus)]
    };
    let half = if scalar == 2 { BigInt::from(1) } else { BigInt::from(2) };
    let mut beta = field.zero();
    for (k, t, c) in terms {
        let Some(_) = field.mask_of(t) else {
            // square roots of distinct square classes are linearly independent
            return Ok(Some(None));
        };
        let coeff = BigRational::new(k * c, half.clone());
        beta = field.add(&beta, &field.from_quadratic(t, BigRational::from_integer(0.into()), coeff)?);
    }
    Ok(Some(Some(beta)))
}

fn unit_elem(field: &MultiQuad, unit: &FundUnit) -> Result<Elem> {
    let d = BigInt::from(unit.denom);
    field.from_quadratic(unit.m, BigRational::new(unit.x.clone(), d.clone()), BigRational::new(unit.y.clone(), d))
}

/// Whether `candidate` is a square in `Q(sqrt m1, sqrt m2)`.
pub fn is_square_in_biquad(candidate: &UnitProduct, m1: i64, m2: i64) -> Result<bool> {
    is_square_in_biquad_with(candidate, m1, m2, DEFAULT_PRECISION_CEILING)
}

pub fn is_square_in_biquad_with(candidate: &UnitProduct, m1: i64, m2: i64, max_bits: u64) -> Result<bool> {
    if m1 == m2 {
        return precondition(format!("radicands must be distinct, got {m1} twice"));
    }
    let field = MultiQuad::new(&[m1, m2])?;
    let units =
        candidate.factors.iter().map(|&(m, e)| fundamental_unit(m).map(|u| (u, e))).collect::<Result<Vec<_>>>()?;
    is_square_in_field(&field, candidate.scalar, &units, max_bits)
}

fn is_square_in_field(field: &MultiQuad, scalar: u32, units: &[(FundUnit, u32)], max_bits: u64) -> Result<bool> {
    if scalar == 0 {
        return precondition("scalar must be positive");
    }
    let mut masks = Vec::with_capacity(units.len());
    for (u, _) in units {
        let mask = field.mask_of(u.m).ok_or_else(|| {
            Error::Precondition(format!("eps_{} does not lie in the field {:?}", u.m, field.radicands()))
        })?;
        masks.push(mask);
    }
    // eps > 0 always; its conjugate is negative exactly when the norm is -1
    for e in 0..field.degree() {
        let negative = units
            .iter()
            .zip(&masks)
            .filter(|((u, exp), &mask)| u.norm == -1 && exp % 2 == 1 && (mask & e).count_ones() % 2 == 1)
            .count();
        if negative % 2 == 1 {
            return Ok(false);
        }
    }
    if let [(unit, 1)] = units {
        if let Some(root) = fast_path(field, unit, scalar)? {
            return match root {
                None => Ok(false),
                Some(beta) => {
                    let target = field.mul(&field.from_integer(scalar), &unit_elem(field, unit)?);
                    if field.mul(&beta, &beta) != target {
                        return Err(Error::Integrity(format!(
                            "x +- 1 root of {scalar}*eps_{} does not square back",
                            unit.m
                        )));
                    }
                    Ok(true)
                }
            };
        }
    }
    let mut alpha = field.from_integer(scalar);
    for (u, e) in units {
        alpha = field.mul(&alpha, &field.pow(&unit_elem(field, u)?, *e));
    }
    Ok(field.sqrt(&alpha, max_bits)?.is_some())
}

/// Index of `<-1, eps_m1, eps_m2, eps_m3>` in the unit group of the real
/// biquadratic field `Q(sqrt m1, sqrt m2)`, where `m3` is the square-free part
/// of `m1 m2`. All seven nontrivial products of the three units are tested.
pub fn unit_index_biquad(m1: i64, m2: i64) -> Result<UnitIndex> {
    unit_index_biquad_with(m1, m2, DEFAULT_PRECISION_CEILING)
}

pub fn unit_index_biquad_with(m1: i64, m2: i64, max_bits: u64) -> Result<UnitIndex> {
    if m1 == m2 {
        return precondition(format!("radicands must be distinct, got {m1} twice"));
    }
    let field = MultiQuad::new(&[m1, m2])?;
    let ms = [m1, m2, squarefree_product(m1, m2)];
    let units = ms.iter().map(|&m| fundamental_unit(m)).collect::<Result<Vec<_>>>()?;
    let mut squares = vec![0usize];
    for mask in 1..8usize {
        let chosen: Vec<(FundUnit, u32)> =
            (0..3).filter(|i| mask >> i & 1 == 1).map(|i| (units[i].clone(), 1)).collect();
        if is_square_in_field(&field, 1, &chosen, max_bits)? {
            squares.push(mask);
        }
    }
    for &a in &squares {
        for &b in &squares {
            if !squares.contains(&(a ^ b)) {
                return Err(Error::Integrity(format!("square unit products of ({m1},{m2}) are not closed")));
            }
        }
    }
    // greedy basis of the square classes
    let mut span = vec![0usize];
    let mut tags = Vec::new();
    for &s in &squares {
        if span.contains(&s) {
            continue;
        }
        span = span.iter().flat_map(|&x| [x, x ^ s]).collect();
        let names: Vec<String> = (0..3).filter(|i| s >> i & 1 == 1).map(|i| format!("eps_{}", ms[i])).collect();
        tags.push(format!("sqrt({})", names.join("*")));
    }
    let basis_tag = if tags.is_empty() { "none".to_string() } else { tags.join(", ") };
    Ok(UnitIndex { value: squares.len() as u64, basis_tag })
}

fn two_primes(d: &FactoredOdd) -> Option<(u64, u64)> {
    match d.factors() {
        [a, b] => Some((a.prime, b.prime)),
        _ => None,
    }
}

/// Unit index `q(L_d)` of the octic field, in the cases where it is known.
///
/// - `d = q1 q2`, `q1 = q2 = 3 (mod 8)`: 4, adjoining `sqrt(eps_2d)`.
/// - `d = q1 q2`, `q1 = q2 = 7 (mod 8)`: 4, adjoining `sqrt(eps_2d)` or `sqrt(eps_d eps_2d)`.
/// - `d = q p`, `q = 3`, `p = 1 (mod 8)`, `(p/q) = -1`: 8, adjoining `sqrt(eps_d)` and `sqrt(eps_2d)`.
///
/// For two primes `= 3 (mod 4)` the symbols `(q1/q2)` and `(q2/q1)` are
/// opposite, so the normalization `(q1/q2) = 1` is always available.
pub fn q_index_ld(d: &FactoredOdd) -> Result<UnitIndex> {
    let v = d.value();
    let unknown = || Error::UnknownCase(format!("unit index of L_{v} is not pinned"));
    let (a, b) = two_primes(d).ok_or_else(unknown)?;
    let (ra, rb) = (a % 8, b % 8);
    match (ra, rb) {
        (3, 3) => Ok(UnitIndex { value: 4, basis_tag: format!("zeta_8, eps_2, eps_{v}, sqrt(eps_{})", 2 * v) }),
        (7, 7) => Ok(UnitIndex {
            value: 4,
            basis_tag: format!("zeta_8, eps_2, eps_{v}, sqrt(eps_{}) or sqrt(eps_{v}*eps_{})", 2 * v, 2 * v),
        }),
        (3, 1) | (1, 3) => {
            let (q, p) = if ra == 3 { (a, b) } else { (b, a) };
            if jacobi(p as i64, q)?.is_minus() {
                Ok(UnitIndex { value: 8, basis_tag: format!("zeta_8, eps_2, sqrt(eps_{v}), sqrt(eps_{})", 2 * v) })
            } else {
                Err(unknown())
            }
        }
        _ => Err(unknown()),
    }
}

/// Hasse unit index `Q` of `L_d` over its maximal real subfield, where known:
/// 1 for `d = p = 1 (mod 8)` prime, and for `d = q p` with `q = 3`,
/// `p = 1 (mod 8)` and `(p/q) = -1`.
pub fn hasse_q_ld(d: &FactoredOdd) -> Result<UnitIndex> {
    let v = d.value();
    let pinned = UnitIndex { value: 1, basis_tag: format!("E(L_{v}) = W E(L_{v}+)") };
    match d.factors() {
        [p] if p.mod8 == 1 => Ok(pinned),
        [_, _] if q_index_ld(d).map(|q| q.value == 8).unwrap_or(false) => Ok(pinned),
        _ => Err(Error::UnknownCase(format!("Hasse index of L_{v} is not pinned"))),
    }
}
