//! Exact arithmetic in real multiquadratic fields `Q(sqrt r1, ..., sqrt rn)` and
//! square roots by numeric recovery plus exact verification.
//!
//! Elements are coordinate vectors over the basis `sqrt(s_mask)`, where
//! `s_mask` is the square-free part of the product of the radicands selected
//! by the bits of `mask`. The embedding indexed by `e` flips the sign of
//! `sqrt r_k` for each bit `k` set in `e`, so it sends `sqrt(s_mask)` to
//! `(-1)^popcount(mask & e) sqrt(s_mask)`.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::is_squarefree;
use crate::error::{precondition, Error, Result};

fn chi(mask: usize, embedding: usize) -> bool {
    (mask & embedding).count_ones() % 2 == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiQuad {
    radicands: Vec<i64>,
    sq: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    coords: Vec<BigRational>,
}

impl Elem {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl MultiQuad {
    /// The field generated by the square roots of the given positive square-free
    /// integers, which must be multiplicatively independent modulo squares.
    pub fn new(radicands: &[i64]) -> Result<Self> {
        if radicands.is_empty() || radicands.len() > 6 {
            return precondition(format!("unsupported number of radicands: {}", radicands.len()));
        }
        for &r in radicands {
            if r <= 1 || !is_squarefree(r as u64) {
                return precondition(format!("radicand {r} is not a square-free integer > 1"));
            }
        }
        let n = 1usize << radicands.len();
        let mut sq = vec![1i64; n];
        for mask in 1..n {
            let k = mask.trailing_zeros() as usize;
            let rest = sq[mask & (mask - 1)];
            let g = rest.gcd(&radicands[k]);
            sq[mask] = (rest / g)
                .checked_mul(radicands[k] / g)
                .ok_or_else(|| Error::OutOfRange("radicand product overflows i64".into()))?;
        }
        if sq[1..].contains(&1) {
            return precondition(format!("radicands {radicands:?} are dependent modulo squares"));
        }
        Ok(MultiQuad { radicands: radicands.to_vec(), sq })
    }

    pub fn radicands(&self) -> &[i64] {
        &self.radicands
    }

    pub fn degree(&self) -> usize {
        self.sq.len()
    }

    pub fn basis_radicand(&self, mask: usize) -> i64 {
        self.sq[mask]
    }

    /// Basis index of `sqrt s` for a square-free `s`, if it lies in the field.
    pub fn mask_of(&self, s: i64) -> Option<usize> {
        self.sq.iter().position(|&x| x == s)
    }

    pub fn zero(&self) -> Elem {
        Elem { coords: vec![BigRational::zero(); self.degree()] }
    }

    pub fn from_integer(&self, n: impl Into<BigInt>) -> Elem {
        let mut e = self.zero();
        e.coords[0] = BigRational::from_integer(n.into());
        e
    }

    /// `a + b sqrt s` for a square-free `s` whose root lies in the field.
    pub fn from_quadratic(&self, s: i64, a: BigRational, b: BigRational) -> Result<Elem> {
        let mask = self.mask_of(s).ok_or_else(|| {
            Error::Precondition(format!("sqrt {s} is not in the field with radicands {:?}", self.radicands))
        })?;
        let mut e = self.zero();
        e.coords[0] += a;
        e.coords[mask] += b;
        Ok(e)
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        Elem { coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = self.zero();
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // sqrt(s_i) sqrt(s_j) = gcd(s_i, s_j) sqrt(s_{i^j})
                let g = BigInt::from(self.sq[i].gcd(&self.sq[j]));
                out.coords[i ^ j] += a * b * BigRational::from_integer(g);
            }
        }
        out
    }

    pub fn pow(&self, x: &Elem, mut e: u32) -> Elem {
        let mut base = x.clone();
        let mut acc = self.from_integer(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `floor(sqrt(s_mask) * 2^prec)` for every basis element.
    fn fixed_roots(&self, prec: u64) -> Vec<BigInt> {
        self.sq.iter().map(|&s| (BigInt::from(s) << (2 * prec)).sqrt()).collect()
    }

    /// Fixed-point values of all embeddings of `x`, each within `err` units
    /// in the last place of the truth.
    fn embeddings(&self, x: &Elem, prec: u64) -> (Vec<BigInt>, BigInt) {
        let roots = self.fixed_roots(prec);
        let terms: Vec<BigInt> =
            x.coords.iter().zip(&roots).map(|(c, r)| (c.numer() * r).div_floor(c.denom())).collect();
        let mut err = BigInt::one();
        for c in &x.coords {
            if !c.is_zero() {
                err += c.abs().ceil().to_integer() + 1;
            }
        }
        let vals = (0..self.degree())
            .map(|e| {
                terms
                    .iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (mask, t)| if chi(mask, e) { acc - t } else { acc + t })
            })
            .collect();
        (vals, err)
    }

    fn magnitude_bits(&self, x: &Elem) -> u64 {
        let coord_bits = x.coords.iter().map(|c| c.abs().ceil().to_integer().bits()).max().unwrap_or(0);
        let sq_bits = self.sq.iter().map(|&s| 64 - s.leading_zeros() as u64).max().unwrap_or(0);
        coord_bits + sq_bits + self.radicands.len() as u64
    }

    /// Signs of all embeddings of `x`, raising the precision until each is
    /// decided. Zero coordinates in every embedding mean `x = 0`.
    pub fn embedding_signs(&self, x: &Elem, max_bits: u64) -> Result<Vec<Sign>> {
        if x.is_zero() {
            return Ok(vec![Sign::NoSign; self.degree()]);
        }
        let mut prec = (2 * self.magnitude_bits(x) + 64).min(max_bits);
        loop {
            let (vals, err) = self.embeddings(x, prec);
            if vals.iter().all(|v| v.abs() > err) {
                return Ok(vals.iter().map(BigInt::sign).collect());
            }
            if prec >= max_bits {
                return Err(Error::Inconclusive { bits: prec });
            }
            prec = (2 * prec).min(max_bits);
        }
    }

    /// A square root of an algebraic integer `x` in this field, or `None` when
    /// `x` is not a square.
    ///
    /// Every candidate root `beta` is recovered from the numeric square roots
    /// of the embeddings of `x` under one of the `2^(N-1)` sign patterns (the
    /// first embedding is taken positive), and accepted only after `beta^2 = x`
    /// holds exactly. For integral `beta` the quantities
    /// `N c_mask s_mask = sum_e chi(mask, e) sigma_e(beta) sqrt(s_mask)` are
    /// rational integers, so once the numeric error is below `1/8` the true
    /// pattern always rounds to the true coordinates: a `None` answer is
    /// never a numeric accident. If the working precision reaches `max_bits`
    /// before that error bound holds, the result is `Inconclusive`.
    pub fn sqrt(&self, x: &Elem, max_bits: u64) -> Result<Option<Elem>> {
        if x.is_zero() {
            return Ok(Some(self.zero()));
        }
        let n = self.degree();
        let n_big = BigInt::from(n as u64);
        let mut prec = (2 * self.magnitude_bits(x) + 64).min(max_bits);
        'ladder: loop {
            let (vals, err) = self.embeddings(x, prec);
            let mut undecided = false;
            for v in &vals {
                if v <= &-&err {
                    return Ok(None);
                }
                if v.abs() <= err {
                    undecided = true;
                }
            }
            if !undecided {
                let one = BigInt::one() << prec;
                let roots: Vec<BigInt> = vals.iter().map(|v| (v << prec).sqrt()).collect();
                let root_err = (&err << prec).sqrt() + 2;
                let fixed = self.fixed_roots(prec);
                let tolerance = &one >> 3;
                for pattern in 0..(1usize << (n - 1)) {
                    let mut coords = Vec::with_capacity(n);
                    for (mask, fixed_root) in fixed.iter().enumerate() {
                        let mut t = BigInt::zero();
                        for (e, r) in roots.iter().enumerate() {
                            let negative = chi(mask, e) ^ (e > 0 && (pattern >> (e - 1)) & 1 == 1);
                            if negative {
                                t -= r;
                            } else {
                                t += r;
                            }
                        }
                        let v = (&t * fixed_root) >> prec;
                        let s_root = BigInt::from(self.sq[mask].sqrt() + 2);
                        let v_err = &n_big * &root_err * s_root + (t.abs() >> prec) + 2;
                        if v_err >= tolerance {
                            if prec >= max_bits {
                                return Err(Error::Inconclusive { bits: prec });
                            }
                            prec = (2 * prec).min(max_bits);
                            continue 'ladder;
                        }
                        let (k, r): (BigInt, BigInt) = Integer::div_mod_floor(&(&v + (&one >> 1)), &one);
                        let dist: BigInt = (r - (&one >> 1u32)).abs();
                        if dist > (&one >> 2) {
                            break;
                        }
                        coords.push(BigRational::new(k, &n_big * BigInt::from(self.sq[mask])));
                    }
                    if coords.len() == n {
                        let beta = Elem { coords };
                        if &self.mul(&beta, &beta) == x {
                            return Ok(Some(beta));
                        }
                    }
                }
                return Ok(None);
            }
            if prec >= max_bits {
                return Err(Error::Inconclusive { bits: prec });
            }
            prec = (2 * prec).min(max_bits);
        }
    }

    /// Approximate value of the identity embedding, for display.
    pub fn approx(&self, x: &Elem) -> f64 {
        x.coords.iter().zip(&self.sq).map(|(c, &s)| c.to_f64().unwrap_or(f64::NAN) * (s as f64).sqrt()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    const BITS: u64 = 1 << 16;

    #[test]
    fn basis_and_products() {
        let k = MultiQuad::new(&[6, 10]).unwrap();
        assert_eq!(k.basis_radicand(3), 15);
        let a = k.from_quadratic(6, q(0), q(1)).unwrap();
        let b = k.from_quadratic(10, q(0), q(1)).unwrap();
        // sqrt 6 * sqrt 10 = 2 sqrt 15
        let ab = k.mul(&a, &b);
        assert_eq!(ab.coords()[3], q(2));
        assert!(MultiQuad::new(&[2, 3, 6]).is_err());
        assert!(MultiQuad::new(&[4]).is_err());
    }

    #[test]
    fn recovers_roots() {
        let k = MultiQuad::new(&[2, 3]).unwrap();
        // (1 + sqrt 2 + sqrt 3)^2
        let mut beta = k.from_integer(1);
        beta = k.add(&beta, &k.from_quadratic(2, q(0), q(1)).unwrap());
        beta = k.add(&beta, &k.from_quadratic(3, q(0), q(1)).unwrap());
        let x = k.mul(&beta, &beta);
        let root = k.sqrt(&x, BITS).unwrap().unwrap();
        assert_eq!(k.mul(&root, &root), x);
        // 5 + 2 sqrt 6 = (sqrt 2 + sqrt 3)^2
        let eps6 = k.from_quadratic(6, q(5), q(2)).unwrap();
        assert!(k.sqrt(&eps6, BITS).unwrap().is_some());
        // 2 + sqrt 3 = ((sqrt 2 + sqrt 6)/2)^2 has half-integral root coordinates
        let eps3 = k.from_quadratic(3, q(2), q(1)).unwrap();
        let r = k.sqrt(&eps3, BITS).unwrap().unwrap();
        assert_eq!(k.mul(&r, &r), eps3);
        // 1 + sqrt 2 has a negative conjugate
        let eps2 = k.from_quadratic(2, q(1), q(1)).unwrap();
        assert_eq!(k.sqrt(&eps2, BITS).unwrap(), None);
        assert_eq!(k.sqrt(&k.from_integer(5), BITS).unwrap(), None);
        assert!(k.sqrt(&k.from_integer(3), BITS).unwrap().is_some());
        assert!(k.sqrt(&k.from_integer(9), BITS).unwrap().is_some());
    }

    #[test]
    fn signs() {
        let k = MultiQuad::new(&[2, 3]).unwrap();
        let eps2 = k.from_quadratic(2, q(1), q(1)).unwrap();
        let s = k.embedding_signs(&eps2, BITS).unwrap();
        assert_eq!(s, vec![Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn tiny_ceiling_is_inconclusive() {
        let k = MultiQuad::new(&[2, 3]).unwrap();
        // 1 - sqrt 2 + ... close to zero in one embedding: (1+sqrt2)^-20 scale
        let e = k.pow(&k.from_quadratic(2, q(1), q(1)).unwrap(), 40);
        let x = k.mul(&e, &k.from_quadratic(3, q(2), q(1)).unwrap());
        assert!(matches!(k.sqrt(&x, 64), Err(Error::Inconclusive { .. })));
    }
}
