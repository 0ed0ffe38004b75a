//! Dense univariate polynomials over ℤ, coefficients stored low degree first.
//! The zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type UPoly = Vec<BigInt>;

pub(crate) fn trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[BigInt]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn lc(a: &[BigInt]) -> &BigInt {
    a.last().expect("nonzero polynomial")
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect())
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect())
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[BigInt], k: &BigInt) -> UPoly {
    trim(a.iter().map(|c| c * k).collect())
}

pub(crate) fn derivative(a: &[BigInt]) -> UPoly {
    trim(a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect())
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive_part(a: &[BigInt]) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if lc(a).is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Quotient `a / b` if it exists in ℤ[x].
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<UPoly> {
    let db = degree(b)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(a)?;
    if da < db {
        return None;
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    let lb = lc(b);
    for i in (0..=da - db).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let (qc, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &qc * bc;
        }
        q[i] = qc;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(q))
}

/// Pseudo-remainder of `a` by `b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let db = degree(b).expect("nonzero divisor");
    let mut r = a.to_vec();
    let lb = lc(b).clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let top = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &top * bc;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd with positive leading coefficient (gcd of contents dropped).
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    x
}

/// Squarefree decomposition of a primitive polynomial with positive leading
/// coefficient: pairs `(s_i, i)` with `f = Π s_i^i`, each `s_i` squarefree,
/// pairwise coprime and nonconstant.
pub(crate) fn squarefree_decomposition(f: &[BigInt]) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if degree(f).unwrap_or(0) == 0 {
        return out;
    }
    let mut g = gcd(f, &derivative(f));
    let mut w = div_exact(f, &g).expect("gcd divides");
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(&w, &g);
        let part = div_exact(&w, &y).expect("gcd divides");
        if degree(&part).unwrap_or(0) > 0 {
            out.push((part, i));
        }
        g = div_exact(&g, &y).expect("gcd divides");
        w = y;
        i += 1;
    }
    out
}

/// Euclidean norm rounded up.
pub(crate) fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + BigInt::one()
    }
}

#[cfg(test)]
pub(crate) fn from_i64(c: &[i64]) -> UPoly {
    trim(c.iter().map(|&v| BigInt::from(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        // (x+1)(x-2) and (x+1)(3x+5)
        let a = mul(&from_i64(&[1, 1]), &from_i64(&[-2, 1]));
        let b = mul(&from_i64(&[1, 1]), &from_i64(&[5, 3]));
        assert_eq!(gcd(&a, &b), from_i64(&[1, 1]));
        assert_eq!(div_exact(&a, &from_i64(&[-2, 1])), Some(from_i64(&[1, 1])));
        assert_eq!(div_exact(&a, &from_i64(&[0, 2])), None);
        assert_eq!(gcd(&from_i64(&[3, 6]), &from_i64(&[2, 4])), from_i64(&[1, 2]));
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^3 (x+2)^2 (2x+1)
        let p1 = from_i64(&[-1, 1]);
        let p2 = from_i64(&[2, 1]);
        let p3 = from_i64(&[1, 2]);
        let mut f = p3.clone();
        for _ in 0..3 {
            f = mul(&f, &p1);
        }
        for _ in 0..2 {
            f = mul(&f, &p2);
        }
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(p3, 1), (p2, 2), (p1, 3)]);
    }

    #[test]
    fn norm_rounds_up() {
        assert_eq!(norm2_ceil(&from_i64(&[3, 4])), BigInt::from(5));
        assert_eq!(norm2_ceil(&from_i64(&[1, 1])), BigInt::from(2));
    }
}
