use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::is_squarefree;
use crate::error::{precondition, Error, Result};

/// Discriminant of the maximal order of `Q(sqrt m)`: `m` if `m = 1 (mod 4)`, else `4m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub fn from_radicand(m: i64) -> Result<Self> {
        if m == 0 || m == 1 {
            return precondition(format!("radicand {m} does not define a quadratic field"));
        }
        if !is_squarefree(m.unsigned_abs()) {
            return Err(Error::NotSquarefree(m));
        }
        let d = if m.rem_euclid(4) == 1 { m } else { 4 * m };
        Ok(FundamentalDiscriminant(d))
    }

    /// Validates an explicit discriminant.
    pub fn new(d: i64) -> Result<Self> {
        let m = match d.rem_euclid(4) {
            1 => d,
            0 if matches!((d / 4).rem_euclid(4), 2 | 3) => d / 4,
            _ => return precondition(format!("{d} is not a fundamental discriminant")),
        };
        let f = Self::from_radicand(m)
            .map_err(|_| Error::Precondition(format!("{d} is not a fundamental discriminant")))?;
        debug_assert_eq!(f.0, d);
        Ok(f)
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// The square-free `m` with `Q(sqrt m)` of this discriminant.
    pub fn radicand(self) -> i64 {
        if self.0.rem_euclid(4) == 1 {
            self.0
        } else {
            self.0 / 4
        }
    }

    pub fn is_imaginary(self) -> bool {
        self.0 < 0
    }

    /// Number of distinct primes dividing the discriminant.
    pub fn prime_divisor_count(self) -> usize {
        crate::arith::factor(self.0.unsigned_abs()).len()
    }
}

impl fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QForm { a, b, c }
    }

    /// Builds `(a, b, (b^2 - D) / 4a)`; `None` if the division is inexact.
    pub fn from_ab(a: i64, b: i64, disc: i64) -> Option<Self> {
        let num = b as i128 * b as i128 - disc as i128;
        let den = 4 * a as i128;
        if den == 0 || num % den != 0 {
            return None;
        }
        Some(QForm { a, b, c: i64::try_from(num / den).ok()? })
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `x^2 + b x y + c y^2` with `b` the parity of `D`.
    pub fn principal(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        QForm::from_ab(1, b, disc).expect("principal form exists for every discriminant")
    }

    pub fn inverse(&self) -> Self {
        QForm { a: self.a, b: -self.b, c: self.c }
    }

    /// Gauss-reduced for definite forms: `|b| <= a <= c`, `b >= 0` if `|b| = a` or `a = c`.
    pub fn is_reduced_definite(&self) -> bool {
        self.a > 0
            && self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    /// Reduced indefinite: `0 < b < sqrt D` and `sqrt D - b < 2|a| < sqrt D + b`.
    pub fn is_reduced_indefinite(&self) -> bool {
        let d = self.discriminant() as i128;
        let (a, b) = (self.a.unsigned_abs() as i128, self.b as i128);
        d > 0 && b > 0 && b * b < d && (2 * a + b) * (2 * a + b) > d && (2 * a <= b || (2 * a - b).pow(2) < d)
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Reduction of a positive definite form to the unique reduced form in its class.
pub fn reduce(f: QForm) -> Result<QForm> {
    let disc = f.discriminant();
    if disc >= 0 || f.a <= 0 {
        return precondition(format!(
            "{f} is not positive definite; indefinite classes are handled by the cycle operator"
        ));
    }
    let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
    let d = disc as i128;
    let normalize = |a: i128, b: i128| -> (i128, i128) {
        // b into (-a, a]
        let r = Integer::div_floor(&(a - b), &(2 * a));
        let b2 = b + 2 * a * r;
        (b2, (b2 * b2 - d) / (4 * a))
    };
    if !(-a < b && b <= a) {
        (b, c) = normalize(a, b);
    }
    while a > c {
        (a, b) = (c, -b);
        (b, c) = normalize(a, b);
    }
    if a == c && b < 0 {
        b = -b;
    }
    Ok(QForm { a: a as i64, b: b as i64, c: c as i64 })
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Composition of two positive definite forms of equal discriminant, reduced.
///
/// With `e = gcd(a1, a2, (b1 + b2)/2) = x a1 + y a2 + z (b1 + b2)/2` the product
/// class is `(a1 a2 / e^2, B, *)` where
/// `B = (x a1 b2 + y a2 b1 + z (b1 b2 + D)/2) / e`.
pub fn compose(f: &QForm, g: &QForm) -> Result<QForm> {
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return Err(Error::DiscriminantMismatch(disc, g.discriminant()));
    }
    if disc >= 0 || f.a <= 0 || g.a <= 0 {
        return precondition("composition is implemented for positive definite forms");
    }
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2) = (g.a as i128, g.b as i128);
    let d = disc as i128;
    let s = (b1 + b2) / 2;
    let (g1, x1, y1) = ext_gcd(a1, a2);
    let (e, u, z) = ext_gcd(g1, s);
    let (x, y) = (x1 * u, y1 * u);
    let num = x * a1 * b2 + y * a2 * b1 + z * (b1 * b2 + d) / 2;
    if num % e != 0 {
        return Err(Error::Integrity(format!("composition of {f} and {g}: inexact B")));
    }
    let a3 = a1 * a2 / (e * e);
    let b3 = (num / e).rem_euclid(2 * a3);
    let c_num = b3 * b3 - d;
    if c_num % (4 * a3) != 0 {
        return Err(Error::Integrity(format!("composition of {f} and {g}: B^2 != D mod 4A")));
    }
    let c3 = c_num / (4 * a3);
    let to64 = |v: i128| i64::try_from(v).map_err(|_| Error::OutOfRange(format!("coefficient {v}")));
    reduce(QForm { a: to64(a3)?, b: to64(b3)?, c: to64(c3)? })
}

/// `f^n` in the class group, reduced.
pub fn power(f: &QForm, mut n: u64) -> Result<QForm> {
    let mut acc = QForm::principal(f.discriminant());
    let mut base = reduce(*f)?;
    while n > 0 {
        if n & 1 == 1 {
            acc = compose(&acc, &base)?;
        }
        n >>= 1;
        if n > 0 {
            base = compose(&base, &base)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(FundamentalDiscriminant::from_radicand(-1).unwrap().value(), -4);
        assert_eq!(FundamentalDiscriminant::from_radicand(33).unwrap().value(), 33);
        assert_eq!(FundamentalDiscriminant::from_radicand(-89).unwrap().value(), -356);
        assert_eq!(FundamentalDiscriminant::from_radicand(2).unwrap().value(), 8);
        assert_eq!(FundamentalDiscriminant::from_radicand(-18), Err(Error::NotSquarefree(-18)));
        assert!(FundamentalDiscriminant::from_radicand(1).is_err());
        assert_eq!(FundamentalDiscriminant::new(-356).unwrap().radicand(), -89);
        assert!(FundamentalDiscriminant::new(-36).is_err());
        assert!(FundamentalDiscriminant::new(12).is_ok());
        assert!(FundamentalDiscriminant::new(16).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(QForm::new(1, 0, 1)).unwrap(), QForm::new(1, 0, 1));
        assert_eq!(reduce(QForm::new(2, 2, 3)).unwrap(), QForm::new(2, 2, 3));
        assert_eq!(reduce(QForm::new(3, -2, 3)).unwrap(), QForm::new(3, 2, 3));
        // (7, 9, 3) has disc 81 - 84 = -3
        assert_eq!(reduce(QForm::new(7, 9, 3)).unwrap(), QForm::new(1, 1, 1));
        assert!(reduce(QForm::new(1, 3, 1)).is_err());
        assert!(reduce(QForm::new(-1, 0, -1)).is_err());
    }

    #[test]
    fn reduce_is_idempotent_and_reduced() {
        for a in 1..30i64 {
            for b in -40..40i64 {
                for c in 1..30i64 {
                    let f = QForm::new(a, b, c);
                    if f.discriminant() >= 0 {
                        continue;
                    }
                    let r = reduce(f).unwrap();
                    assert!(r.is_reduced_definite(), "{f} -> {r}");
                    assert_eq!(r.discriminant(), f.discriminant());
                    assert_eq!(reduce(r).unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn compose_identity_and_inverse() {
        let d = -356;
        let f = reduce(QForm::from_ab(3, 2, d).unwrap()).unwrap();
        let one = QForm::principal(d);
        assert_eq!(compose(&one, &f).unwrap(), f);
        assert_eq!(compose(&f, &f.inverse()).unwrap(), one);
        assert!(compose(&f, &QForm::principal(-4)).is_err());
    }
}
