//! Factorization of multivariate integer polynomials into irreducibles.
//!
//! Univariate inputs go through squarefree decomposition, modular
//! factorization, Hensel lifting and recombination. Multivariate inputs are
//! mapped to one variable by Kronecker substitution; products of the
//! univariate factors are mapped back and kept when they divide exactly.

mod hensel;
mod kronecker;
mod modp;
#[cfg(test)]
pub(crate) mod oracle;
mod upoly;
mod zassenhaus;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::IntPoly;

pub use zassenhaus::MAX_SUBSETS;

/// `unit · content · Π factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub nvars: usize,
    /// `1` or `-1`.
    pub unit: i32,
    pub content: BigInt,
    /// Distinct primitive irreducible factors with positive leading
    /// coefficient, in a fixed order.
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Multiplies everything back out.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.nvars, &self.content * BigInt::from(self.unit));
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// True for a single irreducible factor of multiplicity one and unit content.
    pub fn is_irreducible(&self) -> bool {
        self.content.is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let c = &self.content * BigInt::from(self.unit);
        if !c.is_one() || self.factors.is_empty() {
            parts.push(c.to_string());
        }
        for (g, e) in &self.factors {
            let s = if g.num_terms() > 1 {
                format!("({g})")
            } else {
                g.to_string()
            };
            parts.push(if *e > 1 { format!("{s}^{e}") } else { s });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

/// Fixed order on factors: total degree, partial degrees, then terms from
/// the leading one down, a higher monomial first, then smaller coefficient.
pub fn factor_cmp(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.partial_degrees().cmp(&b.partial_degrees()))
        .then_with(|| {
            let mut ta = a.terms().rev();
            let mut tb = b.terms().rev();
            loop {
                match (ta.next(), tb.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some((ma, ca)), Some((mb, cb))) => {
                        let ord = mb.cmp(ma).then_with(|| ca.cmp(cb));
                        if ord != Ordering::Equal {
                            return ord;
                        }
                    }
                }
            }
        })
}

fn positive(p: IntPoly) -> IntPoly {
    p.normalize_sign().0
}

/// Extracts the univariate dense form in variable `var`.
fn dense_in(p: &IntPoly, var: usize) -> Vec<BigInt> {
    let deg = p.partial_degrees()[var] as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.exponents()[var] as usize] += c;
    }
    out
}

fn from_dense(u: &[BigInt], nvars: usize, var: usize) -> IntPoly {
    IntPoly::from_terms(
        nvars,
        u.iter().enumerate().map(|(e, c)| {
            let mut exps = vec![0; nvars];
            exps[var] = e as u32;
            (Monomial::new(exps), c.clone())
        }),
    )
}

/// Irreducible factors (with repetition) of a primitive polynomial with
/// positive leading coefficient and no monomial factor.
fn factor_primitive(p: &IntPoly) -> Result<Vec<IntPoly>> {
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let n = p.nvars();
    let vars = p.support_vars();
    if vars.len() == 1 {
        let var = vars[0];
        let mut out = Vec::new();
        for (g, e) in zassenhaus::factor_primitive(&dense_in(p, var))? {
            let h = positive(from_dense(&g, n, var));
            out.extend(std::iter::repeat_n(h, e as usize));
        }
        return Ok(out);
    }
    let radix = kronecker::radix(p);
    let image = upoly::primitive_part(&kronecker::to_univariate(p, &radix));
    let uni = zassenhaus::factor_primitive(&image)?;
    let total: u32 = uni.iter().map(|(_, e)| e).sum();
    let space: u128 = uni.iter().map(|(_, e)| *e as u128 + 1).product();
    if space > MAX_SUBSETS as u128 {
        return Err(Error::RecombinationLimit(total as usize));
    }
    for size in 1..=total / 2 {
        for counts in count_vectors(&uni.iter().map(|(_, e)| *e).collect::<Vec<_>>(), size) {
            let cand = uni
                .iter()
                .zip(&counts)
                .fold(vec![BigInt::one()], |acc, ((g, _), &c)| {
                    (0..c).fold(acc, |a, _| upoly::mul(&a, g))
                });
            let h = kronecker::from_univariate(&cand, &radix);
            if h.is_constant() {
                continue;
            }
            if let Some(q) = p.div_exact(&h) {
                if q.is_constant() {
                    continue;
                }
                let mut out = factor_primitive(&positive(h))?;
                out.extend(factor_primitive(&positive(q))?);
                return Ok(out);
            }
        }
    }
    Ok(vec![p.clone()])
}

/// All vectors `c` with `0 <= c_i <= bounds_i` and `Σ c_i = total`, in
/// lexicographic order.
fn count_vectors(bounds: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(bounds: &[u32], i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == bounds.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=bounds[i].min(rest) {
            cur.push(c);
            rec(bounds, i + 1, rest - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(bounds, 0, total, &mut Vec::new(), &mut out);
    out
}

/// Complete factorization of a nonzero integer polynomial.
pub fn factor(g: &IntPoly) -> Result<Factorization> {
    let content = g.content()?;
    let (prim, unit) = g.primitive_part()?.normalize_sign();
    let n = g.nvars();
    let mut irreducibles: Vec<IntPoly> = Vec::new();

    // monomial factors x_i^e
    let mut rest = prim;
    let mut min_exp = vec![u32::MAX; n];
    for (m, _) in rest.terms() {
        for (me, &e) in min_exp.iter_mut().zip(m.exponents()) {
            *me = (*me).min(e);
        }
    }
    if min_exp.iter().any(|&e| e > 0) {
        let mono = IntPoly::from_terms(n, [(Monomial::new(min_exp.clone()), BigInt::one())]);
        rest = rest.div_exact(&mono).expect("monomial divides");
        for (i, &e) in min_exp.iter().enumerate() {
            irreducibles.extend(std::iter::repeat_n(IntPoly::var(n, i), e as usize));
        }
    }
    irreducibles.extend(factor_primitive(&rest)?);

    irreducibles.sort_by(factor_cmp);
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for f in irreducibles {
        match factors.last_mut() {
            Some((last, e)) if *last == f => *e += 1,
            _ => factors.push((f, 1)),
        }
    }
    Ok(Factorization {
        nvars: n,
        unit,
        content,
        factors,
    })
}

/// Irreducibility over ℤ: one factor, multiplicity one, content one.
pub fn is_irreducible_z(g: &IntPoly) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(factor(g)?.is_irreducible())
}

/// An unordered split of the nonconstant part into two nonconstant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub g1: IntPoly,
    pub g2: IntPoly,
    /// Multiplicity of each factor of the factorization taken into `g1`.
    pub counts: Vec<u32>,
}

/// All unordered two-way splits of the factor multiset into nonconstant
/// parts. Content and unit are left out of both.
pub fn splits(f: &Factorization) -> Vec<Split> {
    let bounds: Vec<u32> = f.factors.iter().map(|(_, e)| *e).collect();
    let total: u32 = bounds.iter().sum();
    let mut out = Vec::new();
    for size in 1..total {
        for counts in count_vectors(&bounds, size) {
            let comp: Vec<u32> = bounds.iter().zip(&counts).map(|(b, c)| b - c).collect();
            // keep one orientation of each pair
            if counts < comp {
                continue;
            }
            if counts == comp && out.iter().any(|s: &Split| s.counts == counts) {
                continue;
            }
            let build = |cs: &[u32]| {
                f.factors
                    .iter()
                    .zip(cs)
                    .fold(IntPoly::one(f.nvars), |acc, ((g, _), &c)| &acc * &g.pow(c))
            };
            out.push(Split {
                g1: build(&counts),
                g2: build(&comp),
                counts,
            });
        }
    }
    out
}
