//! Deterministic primality and desk-scale factorization over `u64`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};

/// Miller-Rabin witnesses that are deterministic for every `n < 3.3 * 10^24`,
/// which covers the whole `u64` range.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Trial division is used for divisors below this bound before switching to rho.
pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 12;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for inputs wider than the supported arithmetic width.
pub fn is_prime_wide(n: u128) -> Result<bool> {
    let n = u64::try_from(n).map_err(|_| Error::OutOfRange(format!("{n} exceeds 64 bits")))?;
    Ok(is_prime(n))
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
/// composite `n`.
fn rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let f = rho(n);
    split_into(f, out);
    split_into(n / f, out);
}

/// Prime factorization as `(prime, exponent)` pairs in ascending order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    if n == 0 {
        return Vec::new();
    }
    for p in (2..DEFAULT_TRIAL_BOUND).filter(|&p| p == 2 || p % 2 == 1) {
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    if n > 1 {
        split_into(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// Square-free kernel `s` and cofactor `c` with `n = s * c^2`.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    let (mut s, mut c) = (1u64, 1u64);
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            s *= p;
        }
        c *= p.pow(e / 2);
    }
    (s, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactor {
    pub prime: u64,
    pub mod8: u8,
    pub mod16: u8,
}

impl PrimeFactor {
    fn new(prime: u64) -> Self {
        PrimeFactor { prime, mod8: (prime % 8) as u8, mod16: (prime % 16) as u8 }
    }
}

/// An odd square-free integer `> 1` together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredOdd {
    value: u64,
    factors: Vec<PrimeFactor>,
}

impl FactoredOdd {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[PrimeFactor] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.prime)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Residues mod 8 of the prime factors, sorted ascending.
    pub fn residues8(&self) -> Vec<u8> {
        let mut r: Vec<u8> = self.factors.iter().map(|f| f.mod8).collect();
        r.sort_unstable();
        r
    }

    /// Prime factors with the given residue mod 8, ascending.
    pub fn with_residue8(&self, r: u8) -> Vec<u64> {
        self.factors.iter().filter(|f| f.mod8 == r).map(|f| f.prime).collect()
    }
}

pub fn factor_squarefree(n: u64) -> Result<FactoredOdd> {
    if n.is_multiple_of(2) {
        return precondition(format!("{n} is even"));
    }
    if n <= 1 {
        return precondition(format!("{n} must exceed 1"));
    }
    let mut factors = Vec::new();
    for (p, e) in factor(n) {
        if e > 1 {
            return Err(Error::NotSquarefree(n as i64));
        }
        factors.push(PrimeFactor::new(p));
    }
    Ok(FactoredOdd { value: n, factors })
}
