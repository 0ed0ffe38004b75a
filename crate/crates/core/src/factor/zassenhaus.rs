//! Univariate factorization over ℤ: modular factorization, Hensel lifting
//! and subset recombination.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hensel::lift;
use super::modp::{symmetric, Fp, PPoly};
use super::upoly::{self, UPoly};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// Upper limit on recombination subsets tried.
pub const MAX_SUBSETS: usize = 1 << 15;

const PRIME_CANDIDATES: usize = 3;
const PRIME_SEARCH_LIMIT: u64 = 1 << 20;

fn good_prime(f: &[BigInt], p: u64) -> Option<PPoly> {
    let fp = Fp::new(p);
    let red = fp.reduce(f);
    if red.len() != f.len() || !fp.is_squarefree(&red) {
        return None;
    }
    Some(fp.monic(&red))
}

/// Picks the prime giving the fewest modular factors among the first few
/// good primes, and returns it with those factors.
fn choose_prime(f: &[BigInt], rng: &mut ChaCha8Rng) -> Result<(Fp, Vec<PPoly>)> {
    let mut best: Option<(Fp, Vec<PPoly>)> = None;
    let mut seen = 0;
    let mut p = 3;
    while seen < PRIME_CANDIDATES && p < PRIME_SEARCH_LIMIT {
        if is_prime_u64(p) {
            if let Some(monic) = good_prime(f, p) {
                seen += 1;
                let fp = Fp::new(p);
                let facs = fp.factor_squarefree(&monic, rng);
                if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
                    best = Some((fp, facs));
                }
            }
        }
        p += 2;
    }
    best.ok_or_else(|| Error::FactorizationFailed(BigInt::from(p)))
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        // advance to the next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Irreducible factors of a squarefree primitive polynomial with positive
/// leading coefficient and degree at least one.
pub(crate) fn factor_squarefree(f: &[BigInt], rng: &mut ChaCha8Rng) -> Result<Vec<UPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let (fp, modular) = choose_prime(f, rng)?;
    let r = modular.len();
    if r == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let lc = upoly::lc(f).clone();
    let bound = (BigInt::one() << n) * upoly::norm2_ceil(f) * lc.abs();
    let (m, mut remaining) = lift(f, &modular, fp, &(bound * 2 + 1));

    let mut current = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    let mut tested = 0usize;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            tested += 1;
            if tested > MAX_SUBSETS {
                return Err(Error::RecombinationLimit(r));
            }
            let lcc = upoly::lc(&current).clone();
            let prod = subset
                .iter()
                .fold(vec![lcc], |acc, &i| upoly::mul(&acc, &remaining[i]));
            let cand = upoly::primitive_part(&symmetric(&prod, &m));
            if let Some(q) = upoly::div_exact(&current, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                out.push(cand);
                current = q;
                for &i in subset.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => size += 1,
        }
    }
    out.push(upoly::primitive_part(&current));
    Ok(out)
}

/// Complete factorization of a primitive polynomial with positive leading
/// coefficient: irreducible factors with multiplicities.
pub(crate) fn factor_primitive(f: &[BigInt]) -> Result<Vec<(UPoly, u32)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1f2e3d4c);
    if upoly::degree(f).unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    debug_assert!(upoly::lc(f).is_positive());
    let parts = squarefree_parts(f);
    let mut out = Vec::new();
    for (part, mult) in parts {
        for g in factor_squarefree(&part, &mut rng)? {
            out.push((g, mult));
        }
    }
    Ok(out)
}

fn squarefree_parts(f: &[BigInt]) -> Vec<(UPoly, u32)> {
    // a squarefree reduction modulo a prime not dividing lc(f) certifies
    // that f is squarefree
    let mut p = 3;
    while p < 200 {
        if is_prime_u64(p) && good_prime(f, p).is_some() {
            return vec![(f.to_vec(), 1)];
        }
        p += 2;
    }
    upoly::squarefree_decomposition(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::upoly::from_i64;

    fn product(fs: &[UPoly]) -> UPoly {
        fs.iter().fold(vec![BigInt::one()], |a, b| upoly::mul(&a, b))
    }

    #[test]
    fn swinnerton_dyer_like_quartic_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime
        let f = from_i64(&[1, 0, -10, 0, 1]);
        let fs = factor_primitive(&f).unwrap();
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn factors_with_leading_coefficient() {
        let a = from_i64(&[3, 0, 2]); // 2x^2 + 3
        let b = from_i64(&[-5, 7]); // 7x - 5
        let c = from_i64(&[1, 1, 1]); // x^2 + x + 1
        let f = product(&[a.clone(), b.clone(), c.clone()]);
        let mut fs: Vec<UPoly> = factor_primitive(&f).unwrap().into_iter().map(|(g, _)| g).collect();
        fs.sort();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(fs, want);
    }

    #[test]
    fn repeated_factors() {
        let a = from_i64(&[1, 1]);
        let b = from_i64(&[-2, 0, 1]);
        let f = product(&[a.clone(), a.clone(), a.clone(), b.clone()]);
        let mut fs = factor_primitive(&f).unwrap();
        fs.sort();
        let mut want = vec![(a, 3), (b, 1)];
        want.sort();
        assert_eq!(fs, want);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 has six cyclotomic factors
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fs = factor_primitive(&from_i64(&c)).unwrap();
        assert_eq!(fs.len(), 6);
        let prod = product(&fs.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>());
        assert_eq!(prod, from_i64(&c));
    }

    #[test]
    fn combinations_enumerate_all() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
