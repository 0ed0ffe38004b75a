//! Polynomial arithmetic and factorization over F_p for word-sized odd p.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::mod_floor;

pub(crate) type PPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    fn mulm(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn subm(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    pub fn reduce(self, f: &[BigInt]) -> PPoly {
        let p = BigInt::from(self.p);
        trim(f.iter()
            .map(|c| mod_floor(c, &p).to_u64().expect("reduced"))
            .collect())
    }

    pub fn mul(self, a: &[u64], b: &[u64]) -> PPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        let p = self.p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128) % p;
            }
        }
        trim(out.into_iter().map(|v| v as u64).collect())
    }

    pub fn sub(self, a: &[u64], b: &[u64]) -> PPoly {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| self.subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect())
    }

    pub fn scale(self, a: &[u64], k: u64) -> PPoly {
        trim(a.iter().map(|&c| self.mulm(c, k)).collect())
    }

    pub fn monic(self, a: &[u64]) -> PPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn divrem(self, a: &[u64], b: &[u64]) -> (PPoly, PPoly) {
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mulm(r[i + db], inv);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &bc) in b.iter().enumerate() {
                r[i + j] = self.subm(r[i + j], self.mulm(c, bc));
            }
        }
        (trim(q), trim(r))
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> PPoly {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(self, a: &[u64], b: &[u64]) -> PPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (PPoly, PPoly, PPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("nonzero"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(self, a: &[u64]) -> PPoly {
        trim(a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
            .collect())
    }

    fn powmod(self, base: &[u64], exp: &BigUint, m: &[u64]) -> PPoly {
        let mut result: PPoly = vec![1];
        let b = self.rem(base, m);
        for i in (0..exp.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if exp.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
        }
        result
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all degree-d irreducible factors, d)`.
    pub fn ddf(self, f: &[u64]) -> Vec<(PPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: PPoly = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 1;
        while f.len() > 2 * d {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus) of a monic product of
    /// irreducibles of degree `d`.
    pub fn edf(self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a: PPoly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod(&a, &exp, f);
            let g = self.gcd(&self.sub(&b, &[1]), f);
            if g.len() > 1 && g.len() < f.len() {
                let other = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&other, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<PPoly> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }

    pub fn is_squarefree(self, f: &[u64]) -> bool {
        let g = self.gcd(f, &self.derivative(f));
        g.len() == 1
    }
}

pub(crate) fn trim(mut a: PPoly) -> PPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn to_bigint(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Coefficients reduced into `(-m/2, m/2]`.
pub(crate) fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    super::upoly::trim(
        a.iter()
            .map(|c| {
                let r = mod_floor(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_over_f7() {
        let fp = Fp::new(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^4 - 1 = (x-1)(x+1)(x^2+1) over F_7 (x^2+1 irreducible: -1 is a non-residue)
        let f = vec![6, 0, 0, 0, 1];
        let fs = fp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![1, 1], vec![6, 1]]);
        let prod = fs.iter().fold(vec![1], |acc, g| fp.mul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn ext_gcd_identity() {
        let fp = Fp::new(11);
        let a = vec![3, 0, 1];
        let b = vec![5, 1];
        let (g, s, t) = fp.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        let lhs = trim(
            fp.mul(&s, &a)
                .iter()
                .zip(fp.mul(&t, &b).iter().chain(std::iter::repeat(&0)))
                .map(|(x, y)| (x + y) % 11)
                .collect(),
        );
        assert_eq!(lhs, vec![1]);
    }
}
