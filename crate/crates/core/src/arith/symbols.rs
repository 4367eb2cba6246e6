//! Jacobi symbols and the rational quartic residue symbols `(a/p)_4`, `(a/2)_4`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::prime::{is_prime, pow_mod};
use crate::error::{precondition, Error, Result};

/// A residue-symbol value in `{-1, 0, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub struct SymbolValue(i8);

impl SymbolValue {
    pub const PLUS: SymbolValue = SymbolValue(1);
    pub const MINUS: SymbolValue = SymbolValue(-1);
    pub const ZERO: SymbolValue = SymbolValue(0);

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn is_plus(self) -> bool {
        self.0 == 1
    }

    pub fn is_minus(self) -> bool {
        self.0 == -1
    }
}

impl From<SymbolValue> for i8 {
    fn from(s: SymbolValue) -> i8 {
        s.0
    }
}

impl TryFrom<i8> for SymbolValue {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            -1..=1 => Ok(SymbolValue(v)),
            _ => Err(format!("symbol value {v} not in {{-1, 0, 1}}")),
        }
    }
}

impl Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        SymbolValue(self.0 * rhs.0)
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> Result<SymbolValue> {
    if n.is_multiple_of(2) {
        return precondition(format!("Jacobi modulus {n} must be odd and positive"));
    }
    let mut n = n;
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { SymbolValue(sign) } else { SymbolValue::ZERO })
}

/// Rational quartic residue symbol `(a/p)_4 = a^((p-1)/4) mod p` for a prime
/// `p = 1 (mod 4)` and a quadratic residue `a`.
pub fn quartic_symbol(a: i64, p: u64) -> Result<SymbolValue> {
    if p % 4 != 1 || !is_prime(p) {
        return precondition(format!("quartic symbol needs a prime p = 1 (mod 4), got {p}"));
    }
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 || pow_mod(r, (p - 1) / 2, p) != 1 {
        return Err(Error::NotQuadraticResidue { a, p });
    }
    match pow_mod(r, (p - 1) / 4, p) {
        1 => Ok(SymbolValue::PLUS),
        x if x == p - 1 => Ok(SymbolValue::MINUS),
        x => Err(Error::Integrity(format!("{a}^((p-1)/4) = {x} mod {p} is not +-1"))),
    }
}

/// `(a/2)_4` for `a = 1 (mod 8)`: `+1` when `a = 1 (mod 16)`, `-1` when `a = 9 (mod 16)`.
pub fn quartic_symbol_mod2(a: i64) -> Result<SymbolValue> {
    match a.rem_euclid(16) {
        1 => Ok(SymbolValue::PLUS),
        9 => Ok(SymbolValue::MINUS),
        _ => precondition(format!("(a/2)_4 needs a = 1 (mod 8), got {a}")),
    }
}

/// One evaluated symbol, kept for the audit trail of a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolRecord {
    pub symbol: String,
    pub value: SymbolValue,
}

/// Records every symbol evaluation that feeds a decision.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolLog {
    records: Vec<SymbolRecord>,
}

impl SymbolLog {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, symbol: String, value: SymbolValue) -> SymbolValue {
        if !self.records.iter().any(|r| r.symbol == symbol) {
            self.records.push(SymbolRecord { symbol, value });
        }
        value
    }

    pub fn jacobi(&mut self, a: i64, n: u64) -> Result<SymbolValue> {
        let v = jacobi(a, n)?;
        Ok(self.push(format!("({a}/{n})"), v))
    }

    pub fn quartic(&mut self, a: i64, p: u64) -> Result<SymbolValue> {
        let v = quartic_symbol(a, p)?;
        Ok(self.push(format!("({a}/{p})_4"), v))
    }

    pub fn quartic_mod2(&mut self, a: i64) -> Result<SymbolValue> {
        let v = quartic_symbol_mod2(a)?;
        Ok(self.push(format!("({a}/2)_4"), v))
    }

    pub fn records(&self) -> &[SymbolRecord] {
        &self.records
    }

    pub fn into_records(self) -> Vec<SymbolRecord> {
        self.records
    }
}
