//! Fundamental units of real quadratic fields by continued fractions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_squarefree};
use crate::error::{precondition, Error, Result};

/// `eps = (x + y sqrt m) / denom > 1`, the fundamental unit of the maximal
/// order of `Q(sqrt m)`, with `x^2 - m y^2 = norm * denom^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundUnit {
    pub m: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub denom: u8,
    pub norm: i8,
}

impl FundUnit {
    pub fn satisfies_norm_equation(&self) -> bool {
        let d = BigInt::from(self.denom);
        &self.x * &self.x - BigInt::from(self.m) * &self.y * &self.y == BigInt::from(self.norm) * &d * &d
    }
}

impl fmt::Display for FundUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}+{}*sqrt({})", self.x, self.y, self.m)
        } else {
            write!(f, "({}+{}*sqrt({}))/{}", self.x, self.y, self.m, self.denom)
        }
    }
}

fn check_radicand(m: i64) -> Result<()> {
    if m <= 1 {
        return precondition(format!("real quadratic radicand must exceed 1, got {m}"));
    }
    if !is_squarefree(m as u64) {
        return Err(Error::NotSquarefree(m));
    }
    Ok(())
}

/// Walks the period of the continued fraction of `omega`, where `omega` is
/// `(1 + sqrt m)/2` for `m = 1 (mod 4)` and `sqrt m` otherwise, calling
/// `step(a)` for each partial quotient. Returns the period length.
///
/// Complete quotients are `(P + sqrt m)/Q`; the period closes the first time
/// `Q` returns to its initial value.
fn walk_period(m: i64, mut step: impl FnMut(i64)) -> usize {
    let (mut p, mut q) = if m % 4 == 1 { (1i64, 2i64) } else { (0, 1) };
    let q0 = q;
    let r = m.sqrt();
    let mut len = 0;
    loop {
        let a = Integer::div_floor(&(p + r), &q);
        step(a);
        len += 1;
        p = a * q - p;
        q = (m - p * p) / q;
        if q == q0 {
            return len;
        }
    }
}

/// Norm of the fundamental unit, from the parity of the period alone.
pub fn unit_norm(m: i64) -> Result<i8> {
    check_radicand(m)?;
    let len = walk_period(m, |_| {});
    Ok(if len % 2 == 0 { 1 } else { -1 })
}

pub fn fundamental_unit(m: i64) -> Result<FundUnit> {
    check_radicand(m)?;
    // convergents p/q of omega
    let (mut p0, mut p1) = (BigInt::one(), BigInt::zero());
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    let len = walk_period(m, |a| {
        let a = BigInt::from(a);
        let p2 = &a * &p0 + &p1;
        let q2 = &a * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p2);
        q1 = std::mem::replace(&mut q0, q2);
    });
    let norm = if len % 2 == 0 { 1 } else { -1 };
    // eps = p - q * conj(omega)
    let unit = if m % 4 == 1 {
        let x2 = BigInt::from(2) * &p0 - &q0;
        let y2 = q0;
        if x2.is_even() && y2.is_even() {
            FundUnit { m, x: x2 / 2, y: y2 / 2, denom: 1, norm }
        } else {
            FundUnit { m, x: x2, y: y2, denom: 2, norm }
        }
    } else {
        FundUnit { m, x: p0, y: q0, denom: 1, norm }
    };
    if !unit.satisfies_norm_equation() {
        return Err(Error::Integrity(format!("continued fraction of {m} produced a non-unit {unit}")));
    }
    Ok(unit)
}

/// Square-free kernels of `x + 1` and `x - 1` for a unit `x + y sqrt m` of norm `+1`.
///
/// Since `eps = ((sqrt(x+1) + sqrt(x-1)) / sqrt 2)^2`, the kernels decide in
/// which multiquadratic fields `sqrt(eps)` and `sqrt(2 eps)` lie.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsDecomposition {
    pub sf_plus: u64,
    pub cof_plus: BigInt,
    pub sf_minus: u64,
    pub cof_minus: BigInt,
}

/// Odd part of the kernel comes from primes of `m`: `(x+1)(x-1) = m y^2` and
/// `gcd(x+1, x-1) | 2`, so only the factorization of `m` is needed.
fn kernel_of(n: &BigInt, odd_primes_of_m: &[u64]) -> Result<(u64, BigInt)> {
    let two_adic = n.trailing_zeros().unwrap_or(0);
    let mut sf: u64 = if two_adic % 2 == 1 { 2 } else { 1 };
    for &p in odd_primes_of_m {
        if (n % BigInt::from(p)).is_zero() {
            sf *= p;
        }
    }
    let (q, r) = n.div_rem(&BigInt::from(sf));
    if !r.is_zero() {
        return Err(Error::Integrity(format!("kernel {sf} does not divide {n}")));
    }
    let c = q.sqrt();
    if &c * &c != q {
        return Err(Error::Integrity(format!("{n} / {sf} is not a square")));
    }
    Ok((sf, c))
}

pub fn eps_decomposition(unit: &FundUnit) -> Result<EpsDecomposition> {
    if unit.norm != 1 || unit.denom != 1 {
        return Err(Error::NotApplicable(format!(
            "x +- 1 decomposition needs norm +1 and integral coordinates, got {unit}"
        )));
    }
    if !unit.x.is_positive() {
        return Err(Error::Integrity(format!("unit {unit} has non-positive x")));
    }
    let odd: Vec<u64> = factor(unit.m as u64).into_iter().map(|(p, _)| p).filter(|&p| p != 2).collect();
    let (sf_plus, cof_plus) = kernel_of(&(&unit.x + 1), &odd)?;
    let (sf_minus, cof_minus) = kernel_of(&(&unit.x - 1), &odd)?;
    Ok(EpsDecomposition { sf_plus, cof_plus, sf_minus, cof_minus })
}
