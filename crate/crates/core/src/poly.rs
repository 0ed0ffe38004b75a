//! Sparse multivariate polynomials over ℤ and ℚ.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], so iteration follows the
//! fixed graded order and the last entry is the leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, Mul, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{variable_names, Monomial};

/// Coefficient ring of a [`SparsePoly`].
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + From<BigInt>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
{
    fn is_negative_coeff(&self) -> bool;
}

impl Coeff for BigInt {
    fn is_negative_coeff(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coeff for BigRational {
    fn is_negative_coeff(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// A point of ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint(pub Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial over ℚ.
pub type MultiPoly = SparsePoly<BigRational>;
/// Polynomial over ℤ.
pub type IntPoly = SparsePoly<BigInt>;

impl<C: Coeff> SparsePoly<C> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(nvars, i), C::one())])
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn partial_degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars];
        for m in self.terms.keys() {
            for (di, &e) in d.iter_mut().zip(m.exponents()) {
                *di = (*di).max(e);
            }
        }
        d
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        self.partial_degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::ArityMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut c = ca.clone();
                c *= cb;
                out.add_term(ma.mul(mb), &c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut c = c.clone();
                c *= k;
                (m.clone(), c)
            })
            .collect();
        SparsePoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> SparsePoly<D> {
        SparsePoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, point: &[BigInt]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, point.len()));
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = C::from(m.eval(point));
            term *= c;
            acc += &term;
        }
        Ok(acc)
    }

    pub fn evaluate_at(&self, point: &LatticePoint) -> Result<C> {
        self.evaluate(&point.0)
    }

    /// Same polynomial viewed in `nvars >= self.nvars()` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        if nvars < self.nvars {
            return Err(Error::ArityMismatch(self.nvars, nvars));
        }
        Ok(SparsePoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(nvars, 0);
                (Monomial::new(e), c.clone())
            }),
        ))
    }

    /// Formats with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }
}

struct DisplayWith<'a, C> {
    poly: &'a SparsePoly<C>,
    names: &'a [String],
}

impl<C: Coeff> fmt::Display for DisplayWith<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative_coeff();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(f, self.names)?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.nvars);
        let shown = self.display_with(&names);
        write!(f, "{shown}")
    }
}

impl<C: Coeff> Mul for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    /// Panics on arity mismatch; use [`SparsePoly::try_mul`] to get an error.
    fn mul(self, rhs: Self) -> SparsePoly<C> {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl<C: Coeff> std::ops::Add for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn add(self, rhs: Self) -> SparsePoly<C> {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<C: Coeff> std::ops::Sub for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn sub(self, rhs: Self) -> SparsePoly<C> {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl<C: Coeff> Neg for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn neg(self) -> SparsePoly<C> {
        self.scale(&-C::one())
    }
}

impl IntPoly {
    /// Gcd of the coefficients, positive.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c)))
    }

    /// `self / content`, sign unchanged.
    pub fn primitive_part(&self) -> Result<IntPoly> {
        let c = self.content()?;
        Ok(self.map_coeffs(|x| x / &c))
    }

    /// Divides every coefficient by `k`, if exact.
    pub fn div_scalar(&self, k: &BigInt) -> Option<IntPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(SparsePoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Exact quotient `self / divisor` in ℤ[x], or `None` if it does not exist.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        let (lm, lc) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(IntPoly::zero(self.nvars));
        }
        let dd = divisor.partial_degrees();
        let mut rem = self.clone();
        let mut quo = IntPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = lm.div_into(m)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            // cheap rejection: a quotient term must keep partial degrees in range
            let rd = rem.partial_degrees();
            if qm.exponents().iter().zip(&dd).zip(&rd).any(|((q, d), r)| q + d > *r) {
                return None;
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), &-(dc * &qc));
            }
            quo.add_term(qm, &qc);
        }
        Some(quo)
    }

    pub fn to_rational(&self) -> MultiPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> IntPoly {
        SparsePoly::from_terms(
            self.nvars,
            self.terms.iter().filter_map(|(m, c)| {
                let e = m.exponents()[i];
                (e > 0).then(|| {
                    let mut ex = m.exponents().to_vec();
                    ex[i] -= 1;
                    (Monomial::new(ex), c * BigInt::from(e))
                })
            }),
        )
    }

    /// Multiplies by `sign` so the leading coefficient is positive; returns
    /// the polynomial and the sign used.
    pub fn normalize_sign(&self) -> (IntPoly, i32) {
        if self.leading_coeff().is_negative() {
            (-self, -1)
        } else {
            (self.clone(), 1)
        }
    }
}

/// Canonical form `f = g / d`: `g` integral, `d > 0` minimal, `gcd(content(g), d) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalIvp {
    pub g: IntPoly,
    pub d: BigInt,
}

impl CanonicalIvp {
    /// Wraps an integer polynomial and a positive denominator, reducing them.
    pub fn new(g: IntPoly, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let f = g.to_rational().scale(&BigRational::new(BigInt::one(), d));
        canonicalize(&f)
    }

    pub fn nvars(&self) -> usize {
        self.g.nvars()
    }

    pub fn to_poly(&self) -> MultiPoly {
        self.g
            .to_rational()
            .scale(&BigRational::new(BigInt::one(), self.d.clone()))
    }

    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigRational> {
        Ok(BigRational::new(self.g.evaluate(point)?, self.d.clone()))
    }

    pub fn is_constant(&self) -> bool {
        self.g.is_constant()
    }
}

impl fmt::Display for CanonicalIvp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d.is_one() {
            write!(f, "{}", self.g)
        } else {
            write!(f, "({})/{}", self.g, self.d)
        }
    }
}

/// Canonical `g / d` form of a nonzero rational polynomial.
pub fn canonicalize(f: &MultiPoly) -> Result<CanonicalIvp> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let denom = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let g0: IntPoly = f.map_coeffs(|c| (c * BigRational::from_integer(denom.clone())).to_integer());
    let common = g0.content()?.gcd(&denom);
    Ok(CanonicalIvp {
        g: g0.div_scalar(&common).expect("common divisor"),
        d: denom / common,
    })
}

/// Gcd of the coefficients of an integer polynomial.
pub fn content(g: &IntPoly) -> Result<BigInt> {
    g.content()
}


#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn ring_arithmetic() {
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let prod = &(&x + &y) * &(&x - &y);
        assert_eq!(prod, &(&x * &x) - &(&y * &y));
        assert_eq!(&f1() * &IntPoly::one(2), f1());
        assert_eq!(&f1() * &f2(), example_numerator());
        assert_eq!(
            x.try_add(&IntPoly::var(3, 0)),
            Err(Error::ArityMismatch(2, 3))
        );
    }

    #[test]
    fn evaluation() {
        let origin = [big(0), big(0)];
        assert_eq!(f1().evaluate(&origin).unwrap(), big(4));
        assert_eq!(f2().evaluate(&origin).unwrap(), big(1));
        assert_eq!(example_numerator().evaluate(&[big(1), big(0)]).unwrap(), big(6));
        assert!(f1().evaluate(&[big(0)]).is_err());
    }

    #[test]
    fn content_examples() {
        let a = ipoly(2, &[(2, &[1, 0]), (4, &[0, 1])]);
        assert_eq!(a.content().unwrap(), big(2));
        let b = ipoly(2, &[(1, &[1, 0]), (1, &[0, 1])]);
        assert_eq!(b.content().unwrap(), big(1));
        let c = ipoly(2, &[(6, &[2, 0]), (-9, &[1, 1]), (12, &[0, 0])]);
        assert_eq!(c.content().unwrap(), big(3));
        assert_eq!(IntPoly::zero(2).content(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn canonical_forms() {
        let f = example_numerator().to_rational().scale(&rat(1, 4));
        let c = canonicalize(&f).unwrap();
        assert_eq!(c.g, example_numerator());
        assert_eq!(c.d, big(4));

        let x = MultiPoly::var(1, 0);
        let half_x = x.scale(&rat(1, 2));
        let c = canonicalize(&(&half_x + &half_x)).unwrap();
        assert_eq!(c.g, IntPoly::var(1, 0));
        assert_eq!(c.d, big(1));

        let f = (&x.scale(&rat(2, 1)) + &MultiPoly::constant(1, rat(2, 1))).scale(&rat(1, 4));
        let c = canonicalize(&f).unwrap();
        assert_eq!(c.g, ipoly(1, &[(1, &[1]), (1, &[0])]));
        assert_eq!(c.d, big(2));

        assert_eq!(canonicalize(&MultiPoly::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let n = example_numerator();
        assert_eq!(n.div_exact(&f1()).unwrap(), f2());
        assert_eq!(n.div_exact(&f2()).unwrap(), f1());
        assert!(n.div_exact(&IntPoly::var(2, 0)).is_none());
        assert!(f2().div_exact(&f1()).is_none());
        let two = IntPoly::constant(2, big(2));
        assert!(f2().div_exact(&two).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(f2().to_string(), "y^2 + 2*x*y + 1");
        let neg = ipoly(2, &[(-1, &[2, 0]), (3, &[0, 0])]);
        assert_eq!(neg.to_string(), "-x^2 + 3");
        assert_eq!(IntPoly::zero(1).to_string(), "0");
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(
            (-5i64..=5, prop::collection::vec(0u32..3, nvars)),
            0..6,
        )
        .prop_map(move |terms| {
            IntPoly::from_terms(
                nvars,
                terms.into_iter().map(|(c, e)| (Monomial::new(e), big(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative(a in small_poly(2), b in small_poly(2), x in -6i64..6, y in -6i64..6) {
            let p = [big(x), big(y)];
            let ab = &a * &b;
            prop_assert_eq!(ab.evaluate(&p).unwrap(), a.evaluate(&p).unwrap() * b.evaluate(&p).unwrap());
        }

        #[test]
        fn gauss_lemma(a in small_poly(2), b in small_poly(2)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ab = &a * &b;
            prop_assert_eq!(ab.content().unwrap(), a.content().unwrap() * b.content().unwrap());
        }

        #[test]
        fn canonicalize_is_idempotent_and_value_preserving(a in small_poly(2), d in 1i64..30, pts in prop::collection::vec((-20i64..20, -20i64..20), 10)) {
            prop_assume!(!a.is_zero());
            let f = a.to_rational().scale(&rat(1, d));
            let c = canonicalize(&f).unwrap();
            prop_assert_eq!(canonicalize(&c.to_poly()).unwrap(), c.clone());
            prop_assert!(c.d > BigInt::zero());
            prop_assert!(c.g.content().unwrap().gcd(&c.d).is_one());
            for (x, y) in pts {
                let p = [big(x), big(y)];
                prop_assert_eq!(c.evaluate(&p).unwrap(), f.evaluate(&p).unwrap());
            }
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(2), b in small_poly(2)) {
            prop_assume!(!b.is_zero());
            let ab = &a * &b;
            prop_assert_eq!(ab.div_exact(&b), Some(a));
        }
    }
}
