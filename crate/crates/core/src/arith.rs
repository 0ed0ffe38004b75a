//! Exact integer helpers: primality, valuations, prime factorization and CRT.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; nothing
//! here ever rounds. Primality and factorization are deterministic for
//! values that fit in 64 bits (after trial division); larger cofactors are
//! rejected with [`Error::OutOfRange`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt as Int;
pub use num_rational::BigRational as Rat;

const TRIAL_LIMIT: u64 = 1_000_000;

/// A validated prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(BigInt);

impl Prime {
    pub fn new(p: BigInt) -> Result<Self> {
        if is_prime(&p)? {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigInt::from(p))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    /// Largest `e` with `p^e | x`. Zero has infinite valuation.
    pub fn valuation(&self, x: &BigInt) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::InfiniteValuation);
        }
        Ok(self.valuation_nonzero(x))
    }

    /// Valuation with zero mapped to `None` (infinity).
    pub fn valuation_or_inf(&self, x: &BigInt) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.valuation_nonzero(x))
        }
    }

    fn valuation_nonzero(&self, x: &BigInt) -> u32 {
        let mut e = 0;
        let mut q = x.clone();
        loop {
            let (quo, rem) = q.div_rem(&self.0);
            if !rem.is_zero() {
                return e;
            }
            q = quo;
            e += 1;
        }
    }

    pub fn pow(&self, e: u32) -> BigInt {
        num_traits::pow(self.0.clone(), e as usize)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `prime^exponent`, one entry of a factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: BigInt,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> BigInt {
        num_traits::pow(self.prime.clone(), self.exponent as usize)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.prime)
        } else {
            write!(f, "{}^{}", self.prime, self.exponent)
        }
    }
}

/// Deterministic primality for integers below 2^64.
pub fn is_prime(n: &BigInt) -> Result<bool> {
    if n <= &BigInt::one() {
        return Ok(false);
    }
    match n.to_u64() {
        Some(v) => Ok(is_prime_u64(v)),
        None => Err(Error::OutOfRange(n.clone())),
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
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

/// Largest `e` with `p^e | x`.
pub fn valuation(p: &BigInt, x: &BigInt) -> Result<u32> {
    Prime::new(p.clone())?.valuation(x)
}

/// `w_p(d)`: the highest power of `p` dividing `d`, as a value.
pub fn w(p: &BigInt, d: &BigInt) -> Result<BigInt> {
    let prime = Prime::new(p.clone())?;
    let e = prime.valuation(d)?;
    Ok(prime.pow(e))
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor of the
/// composite `n`, or `None` if every seed fails.
fn pollard_rho(n: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut g = 1;
        let mut r = 1u64;
        let mut ys = 0;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            r *= 2;
            if r > 1 << 26 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

fn split_u64(n: u64, out: &mut Vec<u64>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_u64(n) {
        out.push(n);
        return Ok(());
    }
    let f = pollard_rho(n).ok_or_else(|| Error::FactorizationFailed(BigInt::from(n)))?;
    split_u64(f, out)?;
    split_u64(n / f, out)
}

/// Prime factorization of `|d|`, primes strictly increasing.
pub fn factorize(d: &BigInt) -> Result<Vec<PrimePower>> {
    if d.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut rest = d.abs();
    let mut found: Vec<(u64, u32)> = Vec::new();

    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        if let Some(small) = rest.to_u64() {
            if p.saturating_mul(p) > small {
                break;
            }
        }
        let bp = BigInt::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            found.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }

    if !rest.is_one() {
        let small = rest.to_u64().ok_or_else(|| Error::OutOfRange(rest.clone()))?;
        let mut primes = Vec::new();
        split_u64(small, &mut primes)?;
        for q in primes {
            match found.iter_mut().find(|(p, _)| *p == q) {
                Some(entry) => entry.1 += 1,
                None => found.push((q, 1)),
            }
        }
    }
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|(p, e)| PrimePower {
            prime: BigInt::from(p),
            exponent: e,
        })
        .collect())
}

/// Primes dividing `d`, increasing.
pub fn prime_divisors(d: &BigInt) -> Result<Vec<Prime>> {
    Ok(factorize(d)?
        .into_iter()
        .map(|pp| Prime(pp.prime))
        .collect())
}

/// Least non-negative residue.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Solve `x ≡ value (mod modulus)` for every pair. Moduli must be pairwise
/// coprime and greater than one; the least non-negative solution is returned.
pub fn crt_solve(residues: &[(BigInt, BigInt)]) -> Result<BigInt> {
    for (_, m) in residues {
        if m <= &BigInt::one() {
            return Err(Error::InvalidModulus(m.clone()));
        }
    }
    for (i, (ai, mi)) in residues.iter().enumerate() {
        for (aj, mj) in &residues[i + 1..] {
            let g = mi.gcd(mj);
            if !g.is_one() {
                return Err(if (ai - aj).mod_floor(&g).is_zero() {
                    Error::NonCoprimeModuli(mi.clone(), mj.clone())
                } else {
                    Error::InconsistentCongruences(mi.clone(), mj.clone())
                });
            }
        }
    }
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (a, m) in residues {
        // x' = x + modulus * t with t ≡ (a - x) * modulus^{-1} (mod m)
        let inv = mod_inverse(&modulus, m).expect("coprime moduli");
        let t = ((a - &x) * inv).mod_floor(m);
        x += &modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok(x)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
