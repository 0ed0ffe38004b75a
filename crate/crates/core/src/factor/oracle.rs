//! Independent reference factorizer for tests: uniform Kronecker radix,
//! Berlekamp's algorithm modulo one large prime (no lifting), exhaustive
//! recombination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::{self, UPoly};
use super::{factor_cmp, Factorization};
use crate::arith::{mod_floor, mod_inverse};
use crate::monomial::Monomial;
use crate::poly::IntPoly;

fn large_primes() -> Vec<BigInt> {
    let two = BigInt::from(2);
    let p = |e: u32| two.pow(e);
    vec![
        p(61) - 1,
        p(89) - 1,
        p(127) - 1,
        p(192) - p(64) - 1,
        p(255) - 19,
        p(521) - 1,
        p(607) - 1,
    ]
}

struct Field {
    p: BigInt,
}

impl Field {
    fn red(&self, a: &[BigInt]) -> UPoly {
        upoly::trim(a.iter().map(|c| mod_floor(c, &self.p)).collect())
    }

    fn monic(&self, a: &[BigInt]) -> UPoly {
        let inv = mod_inverse(upoly::lc(a), &self.p).expect("unit");
        self.red(&upoly::scale(a, &inv))
    }

    fn rem(&self, a: &[BigInt], b: &[BigInt]) -> UPoly {
        let b = self.monic(b);
        let db = b.len() - 1;
        let mut r = self.red(a);
        while r.len() > db {
            let top = r.len() - 1;
            let c = r[top].clone();
            for (j, bc) in b.iter().enumerate() {
                r[top - db + j] -= &c * bc;
            }
            r = self.red(&r);
        }
        r
    }

    fn div(&self, a: &[BigInt], b: &[BigInt]) -> UPoly {
        let inv = mod_inverse(upoly::lc(b), &self.p).expect("unit");
        let db = b.len() - 1;
        let mut r = self.red(a);
        let mut q = vec![BigInt::zero(); r.len().saturating_sub(db)];
        while r.len() > db {
            let top = r.len() - 1;
            let c = mod_floor(&(&r[top] * &inv), &self.p);
            for (j, bc) in b.iter().enumerate() {
                r[top - db + j] -= &c * bc;
            }
            q[top - db] = c;
            r = self.red(&r);
        }
        self.red(&q)
    }

    fn mulmod(&self, a: &[BigInt], b: &[BigInt], m: &[BigInt]) -> UPoly {
        self.rem(&upoly::mul(a, b), m)
    }

    fn gcd(&self, a: &[BigInt], b: &[BigInt]) -> UPoly {
        let mut x = self.red(a);
        let mut y = self.red(b);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        if x.is_empty() {
            x
        } else {
            self.monic(&x)
        }
    }

    fn powmod(&self, a: &[BigInt], e: &BigInt, m: &[BigInt]) -> UPoly {
        let mut result = vec![BigInt::one()];
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            result = self.mulmod(&result, &result, m);
            if e.bit(i) {
                result = self.mulmod(&result, &base, m);
            }
        }
        result
    }

    /// Basis of the Berlekamp subalgebra of a monic squarefree `f`.
    fn berlekamp_basis(&self, f: &[BigInt]) -> Vec<UPoly> {
        let n = f.len() - 1;
        let xp = self.powmod(&[BigInt::zero(), BigInt::one()], &self.p, f);
        // rows[i] = x^(i p) mod f - x^i
        let mut rows = Vec::with_capacity(n);
        let mut cur = vec![BigInt::one()];
        for i in 0..n {
            let mut row = vec![BigInt::zero(); n];
            for (j, c) in cur.iter().enumerate() {
                row[j] = c.clone();
            }
            row[i] -= 1;
            rows.push(row.iter().map(|c| mod_floor(c, &self.p)).collect::<Vec<_>>());
            cur = self.mulmod(&cur, &xp, f);
        }
        // left null space: v with Σ v_i rows[i] = 0, via column echelon of rows^T
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|i| rows[i][j].clone()).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(pr) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, pr);
            let inv = mod_inverse(&m[r][c], &self.p).expect("unit");
            for v in m[r].iter_mut() {
                *v = mod_floor(&(&*v * &inv), &self.p);
            }
            for i in 0..n {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in 0..n {
                        let t = &m[r][j] * &factor;
                        m[i][j] = mod_floor(&(&m[i][j] - t), &self.p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![BigInt::zero(); n];
                v[fc] = BigInt::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = mod_floor(&-&m[row][fc], &self.p);
                }
                upoly::trim(v)
            })
            .collect()
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    fn factor(&self, f: &[BigInt], rng: &mut ChaCha8Rng) -> Vec<UPoly> {
        let basis = self.berlekamp_basis(f);
        let r = basis.len();
        let mut parts = vec![f.to_vec()];
        let half = (&self.p - 1) >> 1;
        while parts.len() < r {
            let mut v: UPoly = Vec::new();
            for b in &basis {
                let k = BigInt::from(rng.gen::<u64>());
                v = upoly::add(&v, &upoly::scale(b, &k));
            }
            let mut next = Vec::new();
            for u in parts {
                if u.len() <= 2 {
                    next.push(u);
                    continue;
                }
                let w = self.powmod(&v, &half, &u);
                let g = self.gcd(&u, &upoly::sub(&w, &[BigInt::one()]));
                if g.len() > 1 && g.len() < u.len() {
                    next.push(self.div(&u, &g));
                    next.push(g);
                } else {
                    next.push(u);
                }
            }
            parts = next;
        }
        parts
    }
}

/// Irreducible factors over ℤ (with repetition) of a primitive univariate
/// polynomial with positive leading coefficient.
fn factor_univariate(f: &[BigInt], rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    if f.len() <= 2 {
        return if f.len() == 2 { vec![f.to_vec()] } else { Vec::new() };
    }
    let g = upoly::gcd(f, &upoly::derivative(f));
    let sqf = upoly::div_exact(f, &g).expect("divides");
    let n = sqf.len() - 1;
    let lc = upoly::lc(&sqf).abs();
    let bound = (BigInt::one() << n) * upoly::norm2_ceil(&sqf) * &lc * 2;
    let field = large_primes()
        .into_iter()
        .map(|p| Field { p })
        .find(|fl| {
            fl.p > bound
                && !mod_floor(&lc, &fl.p).is_zero()
                && fl.gcd(&sqf, &upoly::derivative(&sqf)).len() == 1
        })
        .expect("prime large enough");
    let modular = field.factor(&field.monic(&sqf), rng);
    // exhaustive recombination over all subsets, smallest first
    let r = modular.len();
    let mut remaining: Vec<usize> = (0..r).collect();
    let mut current = sqf.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while size <= remaining.len() {
        for mask in 0u64..(1 << remaining.len()) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let chosen: Vec<usize> = (0..remaining.len()).filter(|i| mask >> i & 1 == 1).map(|i| remaining[i]).collect();
            let prod = chosen.iter().fold(vec![upoly::lc(&current).clone()], |a, &i| upoly::mul(&a, &modular[i]));
            let half = &field.p >> 1;
            let sym: UPoly = upoly::trim(
                prod.iter()
                    .map(|c| {
                        let c = mod_floor(c, &field.p);
                        if c > half { c - &field.p } else { c }
                    })
                    .collect(),
            );
            let cand = upoly::primitive_part(&sym);
            if let Some(q) = upoly::div_exact(&current, &cand) {
                found.push(cand);
                current = q;
                remaining.retain(|i| !chosen.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.len() > 1 {
        found.push(upoly::primitive_part(&current));
    }
    // multiplicities by repeated division of f
    let mut out = Vec::new();
    for h in found {
        let mut rest = f.to_vec();
        while let Some(q) = upoly::div_exact(&rest, &h) {
            out.push(h.clone());
            rest = q;
        }
    }
    out
}

fn to_uni(p: &IntPoly, d: u64) -> UPoly {
    let mut out = vec![BigInt::zero(); (d.pow(p.nvars() as u32)) as usize];
    for (m, c) in p.terms() {
        let mut e = 0u64;
        for &x in m.exponents().iter().rev() {
            e = e * d + x as u64;
        }
        out[e as usize] += c;
    }
    upoly::trim(out)
}

fn from_uni(u: &[BigInt], d: u64, n: usize) -> IntPoly {
    IntPoly::from_terms(
        n,
        u.iter().enumerate().map(|(e, c)| {
            let mut e = e as u64;
            let exps = (0..n)
                .map(|_| {
                    let x = e % d;
                    e /= d;
                    x as u32
                })
                .collect();
            (Monomial::new(exps), c.clone())
        }),
    )
}

fn split_primitive(p: &IntPoly, rng: &mut ChaCha8Rng) -> Vec<IntPoly> {
    if p.is_constant() {
        return Vec::new();
    }
    let d = *p.partial_degrees().iter().max().unwrap() as u64 + 1;
    let image = upoly::primitive_part(&to_uni(p, d));
    let uni = factor_univariate(&image, rng);
    let k = uni.len();
    let mut masks: Vec<u64> = (1..(1u64 << k) - 1).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let cand = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .fold(vec![BigInt::one()], |a, i| upoly::mul(&a, &uni[i]));
        let h = from_uni(&cand, d, p.nvars());
        if h.is_constant() {
            continue;
        }
        if let Some(q) = p.div_exact(&h) {
            if !q.is_constant() {
                let mut out = split_primitive(&h.normalize_sign().0, rng);
                out.extend(split_primitive(&q.normalize_sign().0, rng));
                return out;
            }
        }
    }
    vec![p.clone()]
}

/// Reference factorization, in the same normal form as [`super::factor`].
pub(crate) fn factor(g: &IntPoly) -> Factorization {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let content = g.content().unwrap();
    let (prim, unit) = g.primitive_part().unwrap().normalize_sign();
    let mut all = split_primitive(&prim, &mut rng);
    all.sort_by(factor_cmp);
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for f in all {
        match factors.last_mut() {
            Some((last, e)) if *last == f => *e += 1,
            _ => factors.push((f, 1)),
        }
    }
    Factorization {
        nvars: g.nvars(),
        unit,
        content,
        factors,
    }
}

/// True when `g` has no factor `a + b·x + c·y + …` with coefficients in
/// `[-bound, bound]`, by trial division.
pub(crate) fn no_linear_factor(g: &IntPoly, bound: i64) -> bool {
    let n = g.nvars();
    let mut coeffs = vec![-bound; n + 1];
    loop {
        let lin = IntPoly::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, &c)| {
                let m = if i == 0 { Monomial::one(n) } else { Monomial::var(n, i - 1) };
                (m, BigInt::from(c))
            }),
        );
        if !lin.is_constant() && g.div_exact(&lin).is_some() {
            return false;
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return true;
            }
            if coeffs[i] < bound {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -bound;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::testing::{example_numerator, f1, f2};

    #[test]
    fn oracle_factors_example() {
        let f = factor(&example_numerator());
        assert_eq!(f.factors, vec![(f1(), 1), (f2(), 1)]);
    }

    #[test]
    fn big_prime_berlekamp_counts_factors() {
        let field = Field { p: BigInt::from(2).pow(61) - 1 };
        // (x-1)(x-2)(x^2+1)
        let f = upoly::mul(
            &upoly::mul(&upoly::from_i64(&[-1, 1]), &upoly::from_i64(&[-2, 1])),
            &upoly::from_i64(&[1, 0, 1]),
        );
        assert_eq!(field.berlekamp_basis(&f).len(), 3);
    }
}
