//! Monomials under the fixed graded order, degree vectors and the
//! m-restricted monomial basis.
//!
//! The order is compatible with the total degree: lower total degree always
//! comes first, and within one total degree the exponent of `x_1` decreases,
//! then that of `x_2`, and so on. For two variables this gives
//! `1, x, y, x^2, xy, y^2, x^3, x^2y, xy^2, y^3, ...`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::SparsePoly;

/// Exponent vector of a unitary monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self | other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::one();
        for (x, &e) in point.iter().zip(&self.0) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        acc
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0) {
                    match b.cmp(a) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &variable_names(self.nvars()))
    }
}

/// Default variable names: `x, y, z` for up to three variables, otherwise
/// `x1, ..., xn`.
pub fn variable_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

/// Bound on one component of a degree vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegreeBound {
    Finite(u32),
    /// "Sufficiently large": the component removes nothing from the basis.
    Large,
}

impl DegreeBound {
    pub fn allows(self, e: u32) -> bool {
        match self {
            DegreeBound::Finite(m) => e <= m,
            DegreeBound::Large => true,
        }
    }
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeBound::Finite(m) => write!(f, "{m}"),
            DegreeBound::Large => write!(f, "inf"),
        }
    }
}

/// Per-variable degree bound `m = (m_1, ..., m_n)`, `x_1` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeVector(Vec<DegreeBound>);

impl DegreeVector {
    pub fn new(bounds: Vec<DegreeBound>) -> Self {
        DegreeVector(bounds)
    }

    pub fn finite(degrees: &[u32]) -> Self {
        DegreeVector(degrees.iter().map(|&m| DegreeBound::Finite(m)).collect())
    }

    pub fn large(nvars: usize) -> Self {
        DegreeVector(vec![DegreeBound::Large; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn bounds(&self) -> &[DegreeBound] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|b| matches!(b, DegreeBound::Finite(_)))
    }

    pub fn allows(&self, m: &Monomial) -> bool {
        self.0.iter().zip(m.exponents()).all(|(b, &e)| b.allows(e))
    }

    /// Number of monomials in the restricted basis, `None` when infinite.
    pub fn basis_size(&self) -> Option<u64> {
        self.0.iter().try_fold(1u64, |acc, b| match b {
            DegreeBound::Finite(m) => Some(acc * (*m as u64 + 1)),
            DegreeBound::Large => None,
        })
    }

    fn max_total(&self) -> Option<u32> {
        self.0.iter().try_fold(0u32, |acc, b| match b {
            DegreeBound::Finite(m) => Some(acc + m),
            DegreeBound::Large => None,
        })
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// How many basis monomials to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisCount {
    All,
    First(usize),
}

/// Iterator over the m-restricted basis in the fixed order.
pub struct BasisIter {
    m: DegreeVector,
    max_total: Option<u32>,
    degree: u32,
    pending: std::vec::IntoIter<Monomial>,
}

impl BasisIter {
    pub fn new(m: &DegreeVector, total_bound: Option<u32>) -> Self {
        let max_total = match (m.max_total(), total_bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        BasisIter {
            m: m.clone(),
            max_total,
            degree: 0,
            pending: Vec::new().into_iter(),
        }
    }
}

impl Iterator for BasisIter {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        loop {
            if let Some(next) = self.pending.next() {
                return Some(next);
            }
            if self.max_total.is_some_and(|t| self.degree > t) {
                return None;
            }
            let mut layer = Vec::new();
            let mut exps = vec![0; self.m.nvars()];
            compositions(self.degree, 0, &mut exps, &self.m, &mut layer);
            self.degree += 1;
            self.pending = layer.into_iter();
        }
    }
}

/// Exponent vectors of total degree `rest` over variables `i..`, `x_i`
/// exponent descending.
fn compositions(
    rest: u32,
    i: usize,
    exps: &mut Vec<u32>,
    m: &DegreeVector,
    out: &mut Vec<Monomial>,
) {
    let n = exps.len();
    if i + 1 == n {
        if m.0[i].allows(rest) {
            exps[i] = rest;
            out.push(Monomial(exps.clone()));
        }
        return;
    }
    for e in (0..=rest).rev() {
        if !m.0[i].allows(e) {
            continue;
        }
        exps[i] = e;
        compositions(rest - e, i + 1, exps, m, out);
    }
    exps[i] = 0;
}

/// Monomials `α <= m` with `|α| <= k` in the fixed order.
pub fn enumerate_basis(
    m: &DegreeVector,
    total_bound: Option<u32>,
    count: BasisCount,
) -> Result<Vec<Monomial>> {
    if m.nvars() == 0 {
        return Err(Error::InvalidInput("need at least one variable".into()));
    }
    let iter = BasisIter::new(m, total_bound);
    match count {
        BasisCount::All => {
            if iter.max_total.is_none() {
                return Err(Error::UnboundedBasis);
            }
            Ok(iter.collect())
        }
        BasisCount::First(c) => Ok(iter.take(c).collect()),
    }
}

/// `l_{m,k}`: number of exponent vectors `α <= m` with `|α| <= k`.
pub fn l_count(m: &DegreeVector, k: u32) -> u64 {
    // ways[t] = number of vectors over the processed variables with sum t
    let mut ways = vec![0u64; k as usize + 1];
    ways[0] = 1;
    for b in m.bounds() {
        let cap = match b {
            DegreeBound::Finite(c) => (*c).min(k),
            DegreeBound::Large => k,
        } as usize;
        let mut next = vec![0u64; k as usize + 1];
        for (t, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 0..=cap {
                if t + e > k as usize {
                    break;
                }
                next[t + e] += w;
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Type `(m, k)` of a nonzero polynomial: partial degrees and total degree.
pub fn type_of<C: crate::poly::Coeff>(f: &SparsePoly<C>) -> Result<(DegreeVector, u32)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok((DegreeVector::finite(&f.partial_degrees()), f.total_degree()))
}

/// `l(f)` for a nonzero polynomial.
pub fn l_of<C: crate::poly::Coeff>(f: &SparsePoly<C>) -> Result<u64> {
    let (m, k) = type_of(f)?;
    Ok(l_count(&m, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn bivariate_order_up_to_degree_three() {
        let b = enumerate_basis(&DegreeVector::large(2), Some(3), BasisCount::All).unwrap();
        let shown: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            shown,
            ["1", "x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"]
        );
    }

    #[test]
    fn finite_degree_vector_basis() {
        let b = enumerate_basis(&DegreeVector::finite(&[2, 2]), None, BasisCount::All).unwrap();
        let expected = [
            [0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2], [2, 1], [1, 2], [2, 2],
        ];
        assert_eq!(b, expected.iter().map(|e| mono(e)).collect::<Vec<_>>());
        let c = enumerate_basis(&DegreeVector::finite(&[0, 0]), Some(7), BasisCount::All).unwrap();
        assert_eq!(c, vec![mono(&[0, 0])]);
    }

    #[test]
    fn unbounded_all_is_an_error() {
        assert_eq!(
            enumerate_basis(&DegreeVector::large(2), None, BasisCount::All),
            Err(Error::UnboundedBasis)
        );
        let mixed = DegreeVector::new(vec![DegreeBound::Finite(1), DegreeBound::Large]);
        let first = enumerate_basis(&mixed, None, BasisCount::First(5)).unwrap();
        assert_eq!(
            first,
            vec![mono(&[0, 0]), mono(&[1, 0]), mono(&[0, 1]), mono(&[1, 1]), mono(&[0, 2])]
        );
    }

    #[test]
    fn l_count_examples() {
        assert_eq!(l_count(&DegreeVector::finite(&[1, 2]), 2), 5);
        assert_eq!(l_count(&DegreeVector::large(2), 3), 10);
        assert_eq!(l_count(&DegreeVector::finite(&[0, 0]), 7), 1);
        assert_eq!(l_count(&DegreeVector::finite(&[2, 4]), 4), 12);
    }

    #[test]
    fn l_count_matches_enumeration_and_binomials() {
        for n in 1..=3usize {
            for k in 0..=5u32 {
                assert_eq!(
                    l_count(&DegreeVector::large(n), k),
                    binomial(n as u64 + k as u64, n as u64)
                );
                for m0 in 0..=3 {
                    let m = DegreeVector::finite(&vec![m0; n]);
                    let listed = enumerate_basis(&m, Some(k), BasisCount::All).unwrap();
                    assert_eq!(listed.len() as u64, l_count(&m, k));
                }
            }
        }
    }

    #[test]
    fn l_count_is_monotone() {
        for a in 0..4 {
            for b in 0..4 {
                for k in 0..6 {
                    let here = l_count(&DegreeVector::finite(&[a, b]), k);
                    assert!(here <= l_count(&DegreeVector::finite(&[a + 1, b]), k));
                    assert!(here <= l_count(&DegreeVector::finite(&[a, b + 1]), k));
                    assert!(here <= l_count(&DegreeVector::finite(&[a, b]), k + 1));
                }
            }
        }
    }

    #[test]
    fn order_is_graded_and_strict() {
        for n in 1..=3 {
            let all: Vec<Monomial> = BasisIter::new(&DegreeVector::large(n), Some(6)).collect();
            for w in all.windows(2) {
                assert!(w[0] < w[1]);
            }
            for a in &all {
                for b in &all {
                    if a.total_degree() < b.total_degree() {
                        assert!(a < b);
                    }
                }
            }
        }
    }

    #[test]
    fn order_is_multiplicative() {
        let all: Vec<Monomial> = BasisIter::new(&DegreeVector::large(3), Some(3)).collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    assert_eq!(a.cmp(b), a.mul(c).cmp(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn basis_is_downward_closed() {
        let m = DegreeVector::finite(&[2, 3]);
        let b = enumerate_basis(&m, Some(4), BasisCount::All).unwrap();
        for x in &b {
            for y in BasisIter::new(&DegreeVector::large(2), Some(4)) {
                if y.divides(x) {
                    assert!(b.contains(&y), "{y} divides {x} but is missing");
                }
            }
        }
    }
}
