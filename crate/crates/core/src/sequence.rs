//! Generalized Vandermonde determinants, π_m-sequences and d_m-sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{crt_solve, factorize, mod_floor, Prime};
use crate::error::{Error, Result};
use crate::matrix::{det_bareiss, solve_rational};
use crate::monomial::{enumerate_basis, BasisCount, DegreeVector, Monomial};
use crate::pointset::{canonical_cmp, PointSet};
use crate::poly::{IntPoly, LatticePoint};

/// Largest candidate grid scanned in one greedy step.
pub const MAX_CANDIDATES: u128 = 1 << 22;

fn basis_prefix(m: &DegreeVector, len: usize) -> Result<Vec<Monomial>> {
    enumerate_basis(m, None, BasisCount::First(len))
}

fn check_points(m: &DegreeVector, points: &[LatticePoint]) -> Result<()> {
    for p in points {
        if p.nvars() != m.nvars() {
            return Err(Error::ArityMismatch(m.nvars(), p.nvars()));
        }
    }
    Ok(())
}

/// `Δ_m(a_0, …, a_r)`: determinant of `[p_j(a_i)]` over the first `r+1`
/// monomials of the m-restricted basis.
pub fn delta(m: &DegreeVector, points: &[LatticePoint]) -> Result<BigInt> {
    check_points(m, points)?;
    let basis = basis_prefix(m, points.len())?;
    if basis.len() < points.len() {
        return Err(Error::BasisExhausted {
            points: points.len(),
            basis: basis.len(),
        });
    }
    let rows = points
        .iter()
        .map(|p| basis.iter().map(|b| b.eval(p.coords())).collect())
        .collect();
    Ok(det_bareiss(rows))
}

/// The polynomial `x ↦ Δ_m(u_0, …, u_{k-1}, x)` as an integer polynomial.
///
/// Returns `None` when the basis has fewer than `k + 1` monomials.
pub fn step_polynomial(m: &DegreeVector, prefix: &[LatticePoint]) -> Result<Option<IntPoly>> {
    check_points(m, prefix)?;
    let k = prefix.len();
    let basis = basis_prefix(m, k + 1)?;
    if basis.len() <= k {
        return Ok(None);
    }
    let n = m.nvars();
    let rows: Vec<Vec<BigInt>> = prefix
        .iter()
        .map(|p| basis[..k].iter().map(|b| b.eval(p.coords())).collect())
        .collect();
    let rhs: Vec<BigInt> = prefix.iter().map(|p| basis[k].eval(p.coords())).collect();
    let det = det_bareiss(rows.clone());
    if det.is_zero() {
        return Err(Error::InvalidInput(
            "prefix points are not unisolvent (zero determinant)".into(),
        ));
    }
    let coeffs = solve_rational(&rows, &rhs).expect("nonsingular");
    let mut terms = vec![(basis[k].clone(), det.clone())];
    for (b, c) in basis[..k].iter().zip(coeffs) {
        let scaled = c * num_rational::BigRational::from_integer(det.clone());
        debug_assert!(scaled.is_integer());
        terms.push((b.clone(), -scaled.to_integer()));
    }
    Ok(Some(IntPoly::from_terms(n, terms)))
}

/// Why a sequence stopped before the requested length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    /// The m-restricted basis has only `basis_size` monomials.
    Basis { basis_size: usize },
    /// Every remaining point of the set gives a zero determinant.
    Set,
}

/// Search record for one greedy step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCertificate {
    pub step: usize,
    /// Minimal valuation (0 when no prime is used).
    pub min_valuation: u32,
    /// Half-width of the final search box; `None` for finite sets.
    pub box_bound: Option<u64>,
    /// Number of candidates scored in the final round.
    pub candidates: u64,
    /// For infinite sets: the box contains a full residue system modulo
    /// `π^min_valuation`, so the minimum is global.
    pub residue_complete: bool,
}

/// A greedy valuation-minimizing sequence. With `prime == None` each step
/// takes the first point giving a nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSequence {
    pub prime: Option<Prime>,
    pub m: DegreeVector,
    pub points: Vec<LatticePoint>,
    /// Entry `k` is `v_π(Δ_m(u_0, …, u_k))` (all zero without a prime).
    pub step_valuations: Vec<u32>,
    /// Entry `k` is `Δ_m(u_0, …, u_k)`.
    pub deltas: Vec<BigInt>,
    pub requested: usize,
    pub exhausted: Option<Exhaustion>,
    pub certificates: Vec<StepCertificate>,
}

impl PiSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.points.len() >= self.requested
    }
}

fn score(prime: Option<&Prime>, v: &BigInt) -> Option<u32> {
    if v.is_zero() {
        return None;
    }
    Some(match prime {
        Some(p) => p.valuation(v).expect("nonzero"),
        None => 0,
    })
}

type Best = (u32, Vec<BigInt>, BigInt);

fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            let ord = a.0.cmp(&b.0).then_with(|| canonical_cmp(&a.1, &b.1));
            Some(if ord.is_le() { a } else { b })
        }
    }
}

enum StepOutcome {
    Chosen {
        point: LatticePoint,
        value: BigInt,
        cert: StepCertificate,
    },
    Exhausted,
}

fn search_step(
    set: &PointSet,
    prime: Option<&Prime>,
    f: &IntPoly,
    step: usize,
) -> Result<StepOutcome> {
    if let Some(points) = set.points() {
        let best = points
            .par_iter()
            .map(|p| {
                let v = f.evaluate(p.coords()).expect("arity");
                score(prime, &v).map(|s| (s, p.coords().to_vec(), v))
            })
            .reduce(|| None, better);
        return Ok(match best {
            None => StepOutcome::Exhausted,
            Some((s, p, value)) => StepOutcome::Chosen {
                point: LatticePoint::new(p),
                value,
                cert: StepCertificate {
                    step,
                    min_valuation: s,
                    box_bound: None,
                    candidates: points.len() as u64,
                    residue_complete: true,
                },
            },
        });
    }

    let degrees = f.partial_degrees();
    // valuations below v(content) + e only depend on s mod π^e
    let content_val = match prime {
        Some(p) => p.valuation(&f.content()?)?,
        None => 0,
    };
    let axes = set.axes().expect("infinite set");
    let mut b = set.box_bound().expect("infinite set");
    loop {
        let grid = set.grid(b).expect("infinite set");
        let total = grid.len();
        if total > MAX_CANDIDATES {
            return Err(Error::SearchInconclusive { step, bound: b });
        }
        let best = (0..total as u64)
            .into_par_iter()
            .map(|i| {
                let p = grid.point(i);
                let v = f.evaluate(&p).expect("arity");
                score(prime, &v).map(|s| (s, p, v))
            })
            .reduce(|| None, better);
        let width = BigInt::from(2 * b + 1);
        match best {
            None => {
                // f vanishes on the grid; once the grid is wider than f's
                // degree on every ℤ-axis, f vanishes on the whole set
                let wide = axes.iter().zip(&degrees).all(|(a, &d)| {
                    matches!(a, crate::pointset::Axis::Values(_)) || width > BigInt::from(d)
                });
                if wide {
                    return Ok(StepOutcome::Exhausted);
                }
            }
            Some((s, p, value)) => {
                let residue_complete = match prime {
                    None => true,
                    Some(pr) => pr.pow(s - content_val.min(s)) <= width,
                };
                if residue_complete && set.predecessors_within(&p, b) {
                    return Ok(StepOutcome::Chosen {
                        point: LatticePoint::new(p),
                        value,
                        cert: StepCertificate {
                            step,
                            min_valuation: s,
                            box_bound: Some(b),
                            candidates: total as u64,
                            residue_complete,
                        },
                    });
                }
            }
        }
        b = b.checked_mul(2).ok_or(Error::SearchInconclusive { step, bound: b })?;
    }
}

fn build_greedy(
    set: &PointSet,
    prime: Option<&Prime>,
    m: &DegreeVector,
    count: usize,
) -> Result<PiSequence> {
    if m.nvars() != set.nvars() {
        return Err(Error::ArityMismatch(m.nvars(), set.nvars()));
    }
    if count == 0 {
        return Err(Error::InvalidInput("sequence length must be at least 1".into()));
    }
    let mut seq = PiSequence {
        prime: prime.cloned(),
        m: m.clone(),
        points: vec![set.first_point()],
        step_valuations: vec![0],
        deltas: vec![BigInt::one()],
        requested: count,
        exhausted: None,
        certificates: vec![StepCertificate {
            step: 0,
            min_valuation: 0,
            box_bound: set.box_bound(),
            candidates: 1,
            residue_complete: true,
        }],
    };
    while seq.points.len() < count {
        let k = seq.points.len();
        let Some(f) = step_polynomial(m, &seq.points)? else {
            seq.exhausted = Some(Exhaustion::Basis { basis_size: k });
            break;
        };
        match search_step(set, prime, &f, k)? {
            StepOutcome::Exhausted => {
                seq.exhausted = Some(Exhaustion::Set);
                break;
            }
            StepOutcome::Chosen { point, value, cert } => {
                seq.points.push(point);
                seq.step_valuations.push(cert.min_valuation);
                seq.deltas.push(value);
                seq.certificates.push(cert);
            }
        }
    }
    Ok(seq)
}

/// Greedy π_m-sequence of up to `count` points of `set`.
pub fn build_pi_sequence(
    set: &PointSet,
    prime: &Prime,
    m: &DegreeVector,
    count: usize,
) -> Result<PiSequence> {
    build_greedy(set, Some(prime), m, count)
}

/// Sequence without a prime: each step takes the canonically first point
/// with nonzero determinant.
pub fn build_unisolvent_sequence(
    set: &PointSet,
    m: &DegreeVector,
    count: usize,
) -> Result<PiSequence> {
    build_greedy(set, None, m, count)
}

/// Result of checking the π_m-sequence inequality on a candidate set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceCheck {
    pub valid: bool,
    /// Per step `k`: `v_π(Δ_m(u_0, …, u_k))`.
    pub step_valuations: Vec<u32>,
    /// Candidates examined per step.
    pub candidates: u64,
    /// First violation: step, offending point and its valuation.
    pub violation: Option<(usize, LatticePoint, u32)>,
}

/// Checks that `points` is a π_m-sequence on `candidates`: every prefix has
/// nonzero `Δ_m`, and for each step `k` and candidate `s`,
/// `v_π(Δ_m(u_0, …, u_{k-1}, s)) >= v_π(Δ_m(u_0, …, u_k))`.
///
/// Each determinant is recomputed from scratch with [`delta`].
pub fn certify_pi_sequence(
    prime: &Prime,
    m: &DegreeVector,
    points: &[LatticePoint],
    candidates: &[LatticePoint],
) -> Result<SequenceCheck> {
    let mut check = SequenceCheck {
        valid: true,
        step_valuations: Vec::new(),
        candidates: candidates.len() as u64,
        violation: None,
    };
    for k in 0..points.len() {
        let dk = delta(m, &points[..=k])?;
        if dk.is_zero() {
            check.valid = false;
            check.violation = Some((k, points[k].clone(), u32::MAX));
            return Ok(check);
        }
        let ek = prime.valuation(&dk)?;
        check.step_valuations.push(ek);
        let bad = candidates
            .par_iter()
            .filter_map(|s| {
                let mut rows = points[..k].to_vec();
                rows.push(s.clone());
                let v = delta(m, &rows).expect("checked arity");
                let e = prime.valuation_or_inf(&v)?;
                (e < ek).then(|| (s.clone(), e))
            })
            .min_by(|a, b| canonical_cmp(a.0.coords(), b.0.coords()));
        if let Some((s, e)) = bad {
            check.valid = false;
            check.violation = Some((k, s, e));
            return Ok(check);
        }
    }
    Ok(check)
}

/// All points of ℤⁿ in `[-b, b]ⁿ`.
pub fn box_points(nvars: usize, b: u64) -> Vec<LatticePoint> {
    let g = PointSet::lattice(nvars, b.max(1))
        .expect("valid")
        .grid(b)
        .expect("lattice");
    (0..g.len() as u64).map(|i| LatticePoint::new(g.point(i))).collect()
}

/// A d_m-sequence assembled from one π_m-sequence per prime divisor of `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSequence {
    pub d: BigInt,
    pub m: DegreeVector,
    pub points: Vec<LatticePoint>,
    /// Whether point `i` was taken directly because all sources agree.
    pub shared: Vec<bool>,
    /// One sequence per prime divisor of `d`, or a single prime-free
    /// sequence when `d = ±1`.
    pub sources: Vec<PiSequence>,
    /// Per prime: `(π_j, e_kj, exponent of the CRT modulus)`.
    pub moduli: Vec<(Prime, u32, u32)>,
    pub target_length: usize,
    pub exhausted: Option<Exhaustion>,
}

fn ordinal(n: usize) -> String {
    const WORDS: [&str; 21] = [
        "zeroth", "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth",
        "ninth", "tenth", "eleventh", "twelfth", "thirteenth", "fourteenth", "fifteenth",
        "sixteenth", "seventeenth", "eighteenth", "nineteenth", "twentieth",
    ];
    if let Some(w) = WORDS.get(n) {
        return w.to_string();
    }
    let suffix = match (n % 10, n % 100) {
        (1, r) if r != 11 => "st",
        (2, r) if r != 12 => "nd",
        (3, r) if r != 13 => "rd",
        _ => "th",
    };
    format!("{n}{suffix}")
}

impl DSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Human-readable exhaustion note naming the missing term (terms are
    /// numbered from zero).
    pub fn exhaustion_message(&self) -> Option<String> {
        let kind = self.exhausted.as_ref()?;
        let why = match kind {
            Exhaustion::Basis { basis_size } => {
                format!("the {}-restricted basis has only {basis_size} monomials", self.m)
            }
            Exhaustion::Set => "every remaining point gives a zero determinant".to_string(),
        };
        Some(format!(
            "the {} term of the d_{}-sequence does not exist ({why})",
            ordinal(self.points.len()),
            self.m
        ))
    }

    /// Re-checks the congruences `point_i ≡ u_ij (mod π_j^{exp_j})`.
    pub fn verify_congruences(&self) -> bool {
        self.moduli.iter().zip(&self.sources).all(|((p, _, exp), src)| {
            let q = p.pow(*exp);
            self.points.iter().zip(&src.points).all(|(a, u)| {
                a.coords()
                    .iter()
                    .zip(u.coords())
                    .all(|(x, y)| mod_floor(&(x - y), &q).is_zero())
            })
        })
    }
}

/// d_m-sequence of up to `count` points.
///
/// For each prime `π_j | d` a π_m-sequence is built; point `i` solves
/// `x ≡ u_ij (mod π_j^{t_j})` coordinate-wise with
/// `t_j = max(e_kj, v_{π_j}(d)) + 1`, where `e_kj` is the valuation of the
/// full sequence's determinant. When every source has the same point at
/// index `i`, that point is used as is.
pub fn build_d_sequence(
    set: &PointSet,
    d: &BigInt,
    m: &DegreeVector,
    count: usize,
) -> Result<DSequence> {
    if d.is_zero() {
        return Err(Error::InvalidInput("d must be nonzero".into()));
    }
    let primes: Vec<(Prime, u32)> = factorize(d)?
        .into_iter()
        .map(|pp| (Prime::new(pp.prime).expect("prime"), pp.exponent))
        .collect();
    let sources: Vec<PiSequence> = if primes.is_empty() {
        vec![build_unisolvent_sequence(set, m, count)?]
    } else {
        primes
            .iter()
            .map(|(p, _)| build_pi_sequence(set, p, m, count))
            .collect::<Result<_>>()?
    };
    let len = sources.iter().map(PiSequence::len).min().unwrap_or(0);
    let exhausted = sources
        .iter()
        .find(|s| s.len() == len)
        .and_then(|s| s.exhausted.clone());
    let moduli: Vec<(Prime, u32, u32)> = primes
        .iter()
        .zip(&sources)
        .map(|((p, vd), s)| {
            let e = s.step_valuations[len - 1];
            (p.clone(), e, e.max(*vd) + 1)
        })
        .collect();
    let mut points = Vec::with_capacity(len);
    let mut shared = Vec::with_capacity(len);
    for i in 0..len {
        let first = &sources[0].points[i];
        if sources.iter().all(|s| &s.points[i] == first) {
            points.push(first.clone());
            shared.push(true);
            continue;
        }
        let coords = (0..m.nvars())
            .map(|c| {
                let system: Vec<(BigInt, BigInt)> = moduli
                    .iter()
                    .zip(&sources)
                    .map(|((p, _, t), s)| (s.points[i].coords()[c].clone(), p.pow(*t)))
                    .collect();
                crt_solve(&system)
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(LatticePoint::new(coords));
        shared.push(false);
    }
    Ok(DSequence {
        d: d.abs(),
        m: m.clone(),
        points,
        shared,
        sources,
        moduli,
        target_length: count,
        exhausted,
    })
}

impl fmt::Display for PiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Gcd of `g` over `points`.
pub(crate) fn gcd_of_values(g: &IntPoly, points: &[LatticePoint]) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for p in points {
        acc = acc.gcd(&g.evaluate(p.coords())?);
    }
    Ok(acc)
}
