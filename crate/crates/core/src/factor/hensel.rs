//! Quadratic Hensel lifting of a modular factorization.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modp::{to_bigint, Fp, PPoly};
use super::upoly::{self, UPoly};
use crate::arith::mod_floor;

fn reduce(a: &[BigInt], m: &BigInt) -> UPoly {
    upoly::trim(a.iter().map(|c| mod_floor(c, m)).collect())
}

fn mulm(a: &[BigInt], b: &[BigInt], m: &BigInt) -> UPoly {
    reduce(&upoly::mul(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (UPoly, UPoly) {
    let db = b.len() - 1;
    let mut r = reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mod_floor(&r[i + db], m);
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    (reduce(&q, m), reduce(&r, m))
}

/// One quadratic step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` to the
/// same relations modulo `m²`, with `h` monic.
fn step(
    f: &[BigInt],
    g: &mut UPoly,
    h: &mut UPoly,
    s: &mut UPoly,
    t: &mut UPoly,
    m2: &BigInt,
) {
    let e = reduce(&upoly::sub(f, &upoly::mul(g, h)), m2);
    let (q, r) = divrem_monic(&mulm(s, &e, m2), h, m2);
    let g_new = reduce(&upoly::add(&upoly::add(g, &upoly::mul(t, &e)), &upoly::mul(&q, g)), m2);
    let h_new = reduce(&upoly::add(h, &r), m2);
    let b = reduce(
        &upoly::sub(
            &upoly::add(&upoly::mul(s, &g_new), &upoly::mul(t, &h_new)),
            &[BigInt::one()],
        ),
        m2,
    );
    let (c, d) = divrem_monic(&mulm(s, &b, m2), &h_new, m2);
    let s_new = reduce(&upoly::sub(s, &d), m2);
    let t_new = reduce(
        &upoly::sub(&upoly::sub(t, &upoly::mul(t, &b)), &upoly::mul(&c, &g_new)),
        m2,
    );
    *g = g_new;
    *h = h_new;
    *s = s_new;
    *t = t_new;
}

/// Lifts `f ≡ lc(f)·Π factors (mod p)` (monic, pairwise coprime factors) to
/// a modulus `p^(2^j) >= min_modulus`. Returns the modulus and the lifted
/// monic factors.
pub(crate) fn lift(
    f: &[BigInt],
    factors: &[PPoly],
    fp: Fp,
    min_modulus: &BigInt,
) -> (BigInt, Vec<UPoly>) {
    let p = BigInt::from(fp.p);
    let mut steps = Vec::new();
    let mut m = p.clone();
    while &m < min_modulus {
        m = &m * &m;
        steps.push(m.clone());
    }
    let mut target = reduce(f, &m);
    let mut out = Vec::with_capacity(factors.len());
    for (i, hp) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            // the remaining target is lc·h; make it monic
            let lcinv = crate::arith::mod_inverse(upoly::lc(&target), &m).expect("unit");
            out.push(reduce(&upoly::scale(&target, &lcinv), &m));
            break;
        }
        let gp = factors[i + 1..]
            .iter()
            .fold(vec![fp.reduce(&[upoly::lc(&target).clone()])[0]], |acc, q| fp.mul(&acc, q));
        let (one, sp, tp) = fp.ext_gcd(&gp, hp);
        debug_assert_eq!(one, vec![1]);
        let mut g = to_bigint(&gp);
        let mut h = to_bigint(hp);
        let mut s = to_bigint(&sp);
        let mut t = to_bigint(&tp);
        for m2 in &steps {
            step(&reduce(&target, m2), &mut g, &mut h, &mut s, &mut t, m2);
        }
        out.push(h);
        target = g;
    }
    (m, out)
}
