//! Kronecker substitution `x_i -> t^(w_i)` with mixed radix
//! `w_1 = 1`, `w_{i+1} = w_i · (deg_{x_i} + 1)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::upoly::{self, UPoly};
use crate::monomial::Monomial;
use crate::poly::IntPoly;

/// Digit bases `D_i = deg_{x_i}(p) + 1`.
pub(crate) fn radix(p: &IntPoly) -> Vec<u64> {
    p.partial_degrees().iter().map(|&d| d as u64 + 1).collect()
}

fn weights(radix: &[u64]) -> Vec<u64> {
    let mut w = Vec::with_capacity(radix.len());
    let mut acc = 1u64;
    for &d in radix {
        w.push(acc);
        acc = acc.checked_mul(d).expect("Kronecker degree overflow");
    }
    w
}

pub(crate) fn image_degree(radix: &[u64]) -> u64 {
    radix.iter().product::<u64>() - 1
}

pub(crate) fn to_univariate(p: &IntPoly, radix: &[u64]) -> UPoly {
    let w = weights(radix);
    let mut out = vec![BigInt::zero(); image_degree(radix) as usize + 1];
    for (m, c) in p.terms() {
        let e: u64 = m.exponents().iter().zip(&w).map(|(&a, &b)| a as u64 * b).sum();
        out[e as usize] += c;
    }
    upoly::trim(out)
}

/// Inverse substitution by digit decomposition of each exponent.
pub(crate) fn from_univariate(u: &[BigInt], radix: &[u64]) -> IntPoly {
    let n = radix.len();
    IntPoly::from_terms(
        n,
        u.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
            let mut rest = e as u64;
            let exps = radix
                .iter()
                .map(|&d| {
                    let digit = rest % d;
                    rest /= d;
                    digit as u32
                })
                .collect::<Vec<_>>();
            let mut exps = exps;
            // exponents beyond the top digit fold into the last variable
            exps[n - 1] += (rest * radix[n - 1]) as u32;
            (Monomial::new(exps), c.clone())
        }),
    )
}
