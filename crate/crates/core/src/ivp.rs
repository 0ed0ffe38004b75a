//! Membership in Int(S, ℤ), fixed divisors, image primitivity and the
//! irreducibility criterion, plus a brute-force reference decision.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factorize, prime_divisors, Prime};
use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible_z, splits, Factorization};
use crate::monomial::{l_of, type_of, DegreeVector};
use crate::pointset::{Axis, PointSet};
use crate::poly::{CanonicalIvp, IntPoly, LatticePoint};
use crate::sequence::{build_d_sequence, gcd_of_values, build_pi_sequence, build_unisolvent_sequence, DSequence};

/// Where the evaluation points of a check came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSource {
    /// `d = 1`: nothing to check.
    Trivial,
    /// The first `l` points of a d_m-sequence.
    Sequence,
    /// Every point of a finite set.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub is_member: bool,
    pub checked_points: Vec<LatticePoint>,
    /// First checked point with a non-integer value.
    pub witness: Option<(LatticePoint, BigRational)>,
    pub source: PointSource,
}

/// Builds and caches d_m-sequences for one set and one `d`.
struct SequenceCache<'a> {
    set: &'a PointSet,
    d: BigInt,
    seqs: HashMap<(DegreeVector, usize), DSequence>,
}

impl<'a> SequenceCache<'a> {
    fn new(set: &'a PointSet, d: &BigInt) -> Self {
        SequenceCache {
            set,
            d: d.clone(),
            seqs: HashMap::new(),
        }
    }

    /// Points on which `g`'s values decide everything: the first `l(g)`
    /// points of the d_m-sequence with `m = deg g`, or all of a finite set
    /// when that sequence is unavailable.
    fn points_for(&mut self, g: &IntPoly) -> Result<(Vec<LatticePoint>, PointSource)> {
        let (m, _) = type_of(g)?;
        let l = l_of(g)? as usize;
        if let Some(all) = self.set.points() {
            if all.len() < l {
                return Ok((all.to_vec(), PointSource::Direct));
            }
        }
        let key = (m.clone(), l);
        if !self.seqs.contains_key(&key) {
            let s = build_d_sequence(self.set, &self.d, &m, l)?;
            self.seqs.insert(key.clone(), s);
        }
        let seq = &self.seqs[&key];
        if seq.len() >= l {
            return Ok((seq.points[..l].to_vec(), PointSource::Sequence));
        }
        match self.set.points() {
            Some(all) => Ok((all.to_vec(), PointSource::Direct)),
            None => Err(Error::SequenceExhausted {
                needed: l,
                got: seq.len(),
            }),
        }
    }

    fn into_sequences(self) -> Vec<DSequence> {
        let mut v: Vec<_> = self.seqs.into_values().collect();
        v.sort_by_key(|s| (s.target_length, s.m.to_string()));
        v
    }
}

fn check_arity(f: &CanonicalIvp, set: &PointSet) -> Result<()> {
    if f.nvars() != set.nvars() {
        return Err(Error::ArityMismatch(f.nvars(), set.nvars()));
    }
    Ok(())
}

fn membership_with(f: &CanonicalIvp, cache: &mut SequenceCache) -> Result<MembershipReport> {
    if f.d.is_one() {
        return Ok(MembershipReport {
            is_member: true,
            checked_points: Vec::new(),
            witness: None,
            source: PointSource::Trivial,
        });
    }
    let (points, source) = cache.points_for(&f.g)?;
    let mut witness = None;
    for p in &points {
        let v = f.g.evaluate(p.coords())?;
        if !v.is_multiple_of(&f.d) {
            witness = Some((p.clone(), BigRational::new(v, f.d.clone())));
            break;
        }
    }
    Ok(MembershipReport {
        is_member: witness.is_none(),
        checked_points: points,
        witness,
        source,
    })
}

/// Decides `f ∈ Int(S, ℤ)` from the values of `f` on the first `l(f)`
/// points of a d_m-sequence (`m = deg g`). Finite sets too small for the
/// sequence are checked point by point.
pub fn is_integer_valued(f: &CanonicalIvp, set: &PointSet) -> Result<MembershipReport> {
    check_arity(f, set)?;
    membership_with(f, &mut SequenceCache::new(set, &f.d))
}

fn require_member(f: &CanonicalIvp, cache: &mut SequenceCache) -> Result<()> {
    let report = membership_with(f, cache)?;
    match report.witness {
        None => Ok(()),
        Some((p, v)) => Err(Error::NotMember {
            point: p.to_string(),
            value: v.to_string(),
        }),
    }
}

/// `min v_π(g(u_i))` over the first `l(g)` points of a π_m-sequence
/// (`m = deg g`), or over all of a finite set when the sequence stops early.
fn min_valuation(g: &IntPoly, prime: &Prime, set: &PointSet) -> Result<Option<u32>> {
    let (m, _) = type_of(g)?;
    let l = l_of(g)? as usize;
    let seq = build_pi_sequence(set, prime, &m, l)?;
    let points: &[LatticePoint] = if seq.len() >= l {
        &seq.points[..l]
    } else {
        match set.points() {
            Some(all) => all,
            None => {
                return Err(Error::SequenceExhausted {
                    needed: l,
                    got: seq.len(),
                })
            }
        }
    };
    let mut best: Option<u32> = None;
    for p in points {
        if let Some(v) = prime.valuation_or_inf(&g.evaluate(p.coords())?) {
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    Ok(best)
}

/// The fixed divisor `d(S, g)`: the gcd of all values of `g` on `S`.
///
/// Candidate primes divide the gcd over `l(g)` unisolvent points; each
/// prime's exponent is the minimal valuation over a π_m-sequence.
pub fn fixed_divisor(g: &IntPoly, set: &PointSet) -> Result<BigInt> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.nvars() != set.nvars() {
        return Err(Error::ArityMismatch(g.nvars(), set.nvars()));
    }
    let (m, _) = type_of(g)?;
    let l = l_of(g)? as usize;
    let probe = build_unisolvent_sequence(set, &m, l)?;
    let probe_gcd = if probe.len() >= l {
        gcd_of_values(g, &probe.points[..l])?
    } else {
        match set.points() {
            Some(all) => return direct_fixed_divisor(g, all),
            None => {
                return Err(Error::SequenceExhausted {
                    needed: l,
                    got: probe.len(),
                })
            }
        }
    };
    if probe_gcd.is_zero() {
        return Err(Error::ZeroFixedDivisor);
    }
    let mut out = BigInt::one();
    for p in prime_divisors(&probe_gcd)? {
        let e = min_valuation(g, &p, set)?.ok_or(Error::ZeroFixedDivisor)?;
        out *= p.pow(e);
    }
    Ok(out)
}

fn direct_fixed_divisor(g: &IntPoly, points: &[LatticePoint]) -> Result<BigInt> {
    let v = gcd_of_values(g, points)?;
    if v.is_zero() {
        Err(Error::ZeroFixedDivisor)
    } else {
        Ok(v)
    }
}

/// True iff no prime divides every value of `f` on `S`, i.e. the fixed
/// divisor of the numerator equals the denominator.
pub fn is_image_primitive(f: &CanonicalIvp, set: &PointSet) -> Result<bool> {
    check_arity(f, set)?;
    require_member(f, &mut SequenceCache::new(set, &f.d))?;
    Ok(fixed_divisor(&f.g, set)? == f.d)
}

/// Per-prime data for one split `g = g1·g2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAnalysis {
    pub prime: BigInt,
    /// `v_π(d)`.
    pub d_valuation: u32,
    /// `min v_π(g1(a_i))` over the test points of `g1`.
    pub e1: u32,
    /// `min v_π(g2(b_j))` over the test points of `g2`.
    pub e2: u32,
    /// `w_π(d / π^e1)` (one when `e1 >= v_π(d)`).
    pub power: BigInt,
    /// First index `j`, its point and `g2` value with `power ∤ g2(b_j)`.
    pub witness: Option<(usize, LatticePoint, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAnalysis {
    pub g1: IntPoly,
    pub g2: IntPoly,
    pub g1_points: Vec<LatticePoint>,
    pub g2_points: Vec<LatticePoint>,
    pub primes: Vec<PrimeAnalysis>,
    /// No prime has a witness: `e1 + e2 >= v_π(d)` for every `π | d`.
    pub realizes_reducibility: bool,
}

/// `f = (g1/d1)·(g2/d2)` with both factors in Int(S, ℤ) and non-units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibleSplit {
    pub g1: IntPoly,
    pub d1: BigInt,
    pub g2: IntPoly,
    pub d2: BigInt,
}

impl ReducibleSplit {
    pub fn factors(&self) -> Result<(CanonicalIvp, CanonicalIvp)> {
        Ok((
            CanonicalIvp::new(self.g1.clone(), self.d1.clone())?,
            CanonicalIvp::new(self.g2.clone(), self.d2.clone())?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictReason {
    /// `d = 1` and `g` is irreducible over ℤ.
    IrreducibleOverZ,
    /// `d = 1` and `g` factors over ℤ.
    ReducibleOverZ,
    /// `d > 1`: every split has a prime with a witness.
    NoSplitRealizes,
    /// `d > 1`: some split has no witness for any prime.
    SplitRealizes,
    /// Some prime divides every value: `f = c · (g / (c·d))`.
    NotImagePrimitive { fixed_divisor: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub irreducible: bool,
    pub reason: VerdictReason,
    pub d: BigInt,
    pub factorization: Option<Factorization>,
    pub analysis: Vec<SplitAnalysis>,
    pub split: Option<ReducibleSplit>,
    pub sequences: Vec<DSequence>,
}

fn analyze_with(
    g1: &IntPoly,
    g2: &IntPoly,
    d: &BigInt,
    cache: &mut SequenceCache,
) -> Result<SplitAnalysis> {
    let (p1, _) = cache.points_for(g1)?;
    let (p2, _) = cache.points_for(g2)?;
    let v1: Vec<BigInt> = p1.iter().map(|p| g1.evaluate(p.coords())).collect::<Result<_>>()?;
    let v2: Vec<BigInt> = p2.iter().map(|p| g2.evaluate(p.coords())).collect::<Result<_>>()?;
    let min_val = |prime: &Prime, vals: &[BigInt], cap: u32| {
        vals.iter()
            .map(|v| prime.valuation_or_inf(v).unwrap_or(u32::MAX))
            .min()
            .unwrap_or(u32::MAX)
            .min(cap)
    };
    let mut primes = Vec::new();
    for pp in factorize(d)? {
        let prime = Prime::new(pp.prime.clone())?;
        let vd = pp.exponent;
        // values agree with values on S only modulo π^(v_π(d)+1)
        let e1 = min_val(&prime, &v1, vd + 1);
        let e2 = min_val(&prime, &v2, vd + 1);
        let power = prime.pow(vd.saturating_sub(e1));
        let witness = v2
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_multiple_of(&power))
            .map(|(j, v)| (j, p2[j].clone(), v.clone()));
        primes.push(PrimeAnalysis {
            prime: pp.prime,
            d_valuation: vd,
            e1,
            e2,
            power,
            witness,
        });
    }
    let realizes = primes.iter().all(|p| p.witness.is_none());
    Ok(SplitAnalysis {
        g1: g1.clone(),
        g2: g2.clone(),
        g1_points: p1,
        g2_points: p2,
        primes,
        realizes_reducibility: realizes,
    })
}

/// Runs the per-prime witness search for one split `g = g1·g2` against
/// denominator `d`, without any membership precondition.
pub fn analyze_split(
    g1: &IntPoly,
    g2: &IntPoly,
    d: &BigInt,
    set: &PointSet,
) -> Result<SplitAnalysis> {
    if g1.nvars() != set.nvars() || g2.nvars() != set.nvars() {
        return Err(Error::ArityMismatch(g1.nvars(), set.nvars()));
    }
    analyze_with(g1, g2, d, &mut SequenceCache::new(set, d))
}

fn realized_split(unit_content: &BigInt, a: &SplitAnalysis, d: &BigInt) -> ReducibleSplit {
    let d1 = a
        .primes
        .iter()
        .fold(BigInt::one(), |acc, p| {
            acc * p.prime.pow(p.e1.min(p.d_valuation))
        });
    ReducibleSplit {
        g1: a.g1.scale(unit_content),
        d2: d / &d1,
        d1,
        g2: a.g2.clone(),
    }
}

/// Decides irreducibility of `f` in Int(S, ℤ).
///
/// Requires `f` nonconstant and integer-valued. A non-image-primitive `f` is
/// reported reducible with the constant split. Otherwise, with `d = 1` the
/// answer is irreducibility over ℤ; with `d > 1` every two-way split of the
/// numerator is tested prime by prime.
pub fn is_irreducible(f: &CanonicalIvp, set: &PointSet) -> Result<Verdict> {
    check_arity(f, set)?;
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut cache = SequenceCache::new(set, &f.d);
    require_member(f, &mut cache)?;
    let fd = fixed_divisor(&f.g, set)?;
    if fd != f.d {
        let c = &fd / &f.d;
        return Ok(Verdict {
            irreducible: false,
            reason: VerdictReason::NotImagePrimitive {
                fixed_divisor: fd.clone(),
            },
            d: f.d.clone(),
            factorization: None,
            analysis: Vec::new(),
            split: Some(ReducibleSplit {
                g1: IntPoly::constant(f.nvars(), c),
                d1: BigInt::one(),
                g2: f.g.clone(),
                d2: fd,
            }),
            sequences: cache.into_sequences(),
        });
    }
    let fac = factor(&f.g)?;
    let unit_content = &fac.content * BigInt::from(fac.unit);
    if f.d.is_one() {
        let irreducible = is_irreducible_z(&f.g)?;
        let split = if irreducible {
            None
        } else {
            splits(&fac).first().map(|s| ReducibleSplit {
                g1: s.g1.scale(&unit_content),
                d1: BigInt::one(),
                g2: s.g2.clone(),
                d2: BigInt::one(),
            })
        };
        return Ok(Verdict {
            irreducible,
            reason: if irreducible {
                VerdictReason::IrreducibleOverZ
            } else {
                VerdictReason::ReducibleOverZ
            },
            d: f.d.clone(),
            factorization: Some(fac),
            analysis: Vec::new(),
            split,
            sequences: cache.into_sequences(),
        });
    }
    let mut analysis = Vec::new();
    for s in splits(&fac) {
        analysis.push(analyze_with(&s.g1, &s.g2, &f.d, &mut cache)?);
    }
    let split = analysis
        .iter()
        .find(|a| a.realizes_reducibility)
        .map(|a| realized_split(&unit_content, a, &f.d));
    Ok(Verdict {
        irreducible: split.is_none(),
        reason: if split.is_none() {
            VerdictReason::NoSplitRealizes
        } else {
            VerdictReason::SplitRealizes
        },
        d: f.d.clone(),
        factorization: Some(fac),
        analysis,
        split,
        sequences: cache.into_sequences(),
    })
}

/// Membership by exhaustive residues: `h/e ∈ Int(S, ℤ)` iff `e` divides
/// `h` on every point of `S` with ℤ-coordinates in `[0, e)`, since `h mod e`
/// only depends on coordinates mod `e`.
fn residue_member(h: &IntPoly, e: &BigInt, set: &PointSet) -> Result<bool> {
    if e.is_one() {
        return Ok(true);
    }
    let check = |p: &[BigInt]| -> Result<bool> { Ok(h.evaluate(p)?.is_multiple_of(e)) };
    if let Some(all) = set.points() {
        for p in all {
            if !check(p.coords())? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let axes = match set {
        PointSet::Lattice { nvars, .. } => vec![Axis::Integers; *nvars],
        PointSet::Product { axes, .. } => axes.clone(),
        PointSet::Finite(_) => unreachable!(),
    };
    let values: Vec<Vec<BigInt>> = axes
        .iter()
        .map(|a| match a {
            Axis::Integers => num_iter(e),
            Axis::Values(v) => v.clone(),
        })
        .collect();
    let mut idx = vec![0usize; values.len()];
    loop {
        let p: Vec<BigInt> = idx.iter().zip(&values).map(|(&i, v)| v[i].clone()).collect();
        if !check(&p)? {
            return Ok(false);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(true);
            }
            idx[k] += 1;
            if idx[k] < values[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn num_iter(e: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::zero();
    while &i < e {
        out.push(i.clone());
        i += 1;
    }
    out
}

fn divisors(d: &BigInt) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::one()];
    for pp in factorize(d)? {
        let prev = out.clone();
        let mut pk = BigInt::one();
        for _ in 0..pp.exponent {
            pk *= &pp.prime;
            out.extend(prev.iter().map(|x| x * &pk));
        }
    }
    out.sort();
    Ok(out)
}

/// Reference decision by definition: `f` is reducible iff
/// `f = (g1/d1)·(g2/d2)` with both factors non-unit members of Int(S, ℤ).
/// Intended for small instances.
pub fn oracle_is_irreducible(f: &CanonicalIvp, set: &PointSet) -> Result<bool> {
    check_arity(f, set)?;
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !residue_member(&f.g, &f.d, set)? {
        return Err(Error::NotMember {
            point: "(residue check)".into(),
            value: format!("{}", f),
        });
    }
    // constant factors: a prime π with d·π dividing every value
    let probe = match set.points() {
        Some(all) => gcd_of_values(&f.g, all)?,
        None => {
            let side = BigInt::from(f.g.total_degree() + 2);
            let probe_set = match set {
                PointSet::Product { axes, .. } => axes
                    .iter()
                    .map(|a| match a {
                        Axis::Integers => num_iter(&side),
                        Axis::Values(v) => v.clone(),
                    })
                    .collect::<Vec<_>>(),
                _ => vec![num_iter(&side); f.nvars()],
            };
            let pts = grid_points(&probe_set);
            gcd_of_values(&f.g, &pts)?
        }
    };
    if probe.is_zero() {
        return Err(Error::ZeroFixedDivisor);
    }
    let extra = &probe / &f.d;
    for p in prime_divisors(&extra)? {
        if residue_member(&f.g, &(&f.d * p.value()), set)? {
            return Ok(false);
        }
    }
    // nonconstant factors
    let fac = factor(&f.g)?;
    let bounds: Vec<u32> = fac.factors.iter().map(|(_, e)| *e).collect();
    let total: u32 = bounds.iter().sum();
    let unit_content = IntPoly::constant(f.nvars(), &fac.content * BigInt::from(fac.unit));
    let ds = divisors(&f.d)?;
    let mut counts = vec![0u32; bounds.len()];
    loop {
        let size: u32 = counts.iter().sum();
        if size > 0 && size < total {
            let g1 = fac
                .factors
                .iter()
                .zip(&counts)
                .fold(unit_content.clone(), |acc, ((h, _), &c)| &acc * &h.pow(c));
            let g2 = fac
                .factors
                .iter()
                .zip(&counts)
                .fold(IntPoly::one(f.nvars()), |acc, ((h, e), &c)| &acc * &h.pow(e - c));
            for d1 in &ds {
                let d2 = &f.d / d1;
                if residue_member(&g1, d1, set)? && residue_member(&g2, &d2, set)? {
                    return Ok(false);
                }
            }
        }
        let mut k = 0;
        loop {
            if k == counts.len() {
                return Ok(true);
            }
            if counts[k] < bounds[k] {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
    }
}

fn grid_points(values: &[Vec<BigInt>]) -> Vec<LatticePoint> {
    let mut out = vec![Vec::new()];
    for v in values {
        out = out
            .into_iter()
            .flat_map(|p: Vec<BigInt>| {
                v.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(LatticePoint::new).collect()
}
