//! Subsets of ℤⁿ and their canonical enumeration order.
//!
//! Points are compared by: points with a negative coordinate after all
//! non-negative ones, then by L1 norm, then coordinate by coordinate with
//! larger absolute value first and positive before negative. On ℕⁿ this is
//! the same graded order used for monomials.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::LatticePoint;

/// Default half-width of the search box for infinite sets.
pub const DEFAULT_BOX: u64 = 32;

/// One coordinate factor of a product set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    /// A finite set of integers, kept in canonical order.
    Values(Vec<BigInt>),
    /// All of ℤ.
    Integers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    /// Distinct points, sorted canonically.
    Finite(Vec<LatticePoint>),
    /// ℤⁿ, searched in boxes starting at half-width `box_bound`.
    Lattice { nvars: usize, box_bound: u64 },
    /// A product of finite sets and copies of ℤ (at least one ℤ).
    Product { axes: Vec<Axis>, box_bound: u64 },
}

/// Canonical order on points of ℤⁿ.
pub fn canonical_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    let neg = |p: &[BigInt]| p.iter().any(Signed::is_negative);
    let l1 = |p: &[BigInt]| p.iter().map(|c| c.abs()).sum::<BigInt>();
    neg(a)
        .cmp(&neg(b))
        .then_with(|| l1(a).cmp(&l1(b)))
        .then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let ord = y
                    .abs()
                    .cmp(&x.abs())
                    .then_with(|| x.is_negative().cmp(&y.is_negative()));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
}

fn scalar_cmp(a: &BigInt, b: &BigInt) -> Ordering {
    canonical_cmp(std::slice::from_ref(a), std::slice::from_ref(b))
}

impl PointSet {
    /// A finite set; rejects empty input, mixed arity and duplicates.
    pub fn finite(points: Vec<LatticePoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?;
        let n = first.nvars();
        if n == 0 {
            return Err(Error::InvalidInput("points need at least one coordinate".into()));
        }
        let mut seen = HashSet::new();
        for p in &points {
            if p.nvars() != n {
                return Err(Error::ArityMismatch(n, p.nvars()));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint(p.to_string()));
            }
        }
        let mut points = points;
        points.sort_by(|a, b| canonical_cmp(a.coords(), b.coords()));
        Ok(PointSet::Finite(points))
    }

    pub fn lattice(nvars: usize, box_bound: u64) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidInput("Z^n needs n >= 1".into()));
        }
        if box_bound == 0 {
            return Err(Error::InvalidInput("search box must be positive".into()));
        }
        Ok(PointSet::Lattice { nvars, box_bound })
    }

    /// A product set; all-finite products become [`PointSet::Finite`].
    pub fn product(axes: Vec<Axis>, box_bound: u64) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidInput("a product needs at least one axis".into()));
        }
        if box_bound == 0 {
            return Err(Error::InvalidInput("search box must be positive".into()));
        }
        let mut norm = Vec::with_capacity(axes.len());
        for a in axes {
            match a {
                Axis::Integers => norm.push(Axis::Integers),
                Axis::Values(mut v) => {
                    if v.is_empty() {
                        return Err(Error::EmptySet);
                    }
                    v.sort_by(scalar_cmp);
                    v.dedup();
                    norm.push(Axis::Values(v));
                }
            }
        }
        if norm.iter().all(|a| matches!(a, Axis::Values(_))) {
            let mut points = vec![Vec::new()];
            for a in &norm {
                let Axis::Values(vals) = a else { unreachable!() };
                points = points
                    .into_iter()
                    .flat_map(|p| {
                        vals.iter().map(move |v| {
                            let mut q = p.clone();
                            q.push(v.clone());
                            q
                        })
                    })
                    .collect();
            }
            return PointSet::finite(points.into_iter().map(LatticePoint::new).collect());
        }
        if norm.iter().all(|a| matches!(a, Axis::Integers)) {
            return PointSet::lattice(norm.len(), box_bound);
        }
        Ok(PointSet::Product {
            axes: norm,
            box_bound,
        })
    }

    pub fn nvars(&self) -> usize {
        match self {
            PointSet::Finite(p) => p[0].nvars(),
            PointSet::Lattice { nvars, .. } => *nvars,
            PointSet::Product { axes, .. } => axes.len(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PointSet::Finite(_))
    }

    pub fn points(&self) -> Option<&[LatticePoint]> {
        match self {
            PointSet::Finite(p) => Some(p),
            _ => None,
        }
    }

    /// Initial search half-width, `None` for finite sets.
    pub fn box_bound(&self) -> Option<u64> {
        match self {
            PointSet::Finite(_) => None,
            PointSet::Lattice { box_bound, .. } | PointSet::Product { box_bound, .. } => {
                Some(*box_bound)
            }
        }
    }

    pub fn with_box(&self, b: u64) -> Self {
        match self {
            PointSet::Finite(_) => self.clone(),
            PointSet::Lattice { nvars, .. } => PointSet::Lattice {
                nvars: *nvars,
                box_bound: b,
            },
            PointSet::Product { axes, .. } => PointSet::Product {
                axes: axes.clone(),
                box_bound: b,
            },
        }
    }

    /// Coordinate factors; a lattice is a product of copies of ℤ.
    pub(crate) fn axes(&self) -> Option<Vec<Axis>> {
        match self {
            PointSet::Finite(_) => None,
            PointSet::Lattice { nvars, .. } => Some(vec![Axis::Integers; *nvars]),
            PointSet::Product { axes, .. } => Some(axes.clone()),
        }
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        if p.len() != self.nvars() {
            return false;
        }
        match self {
            PointSet::Finite(pts) => pts.iter().any(|q| q.coords() == p),
            PointSet::Lattice { .. } => true,
            PointSet::Product { axes, .. } => axes.iter().zip(p).all(|(a, c)| match a {
                Axis::Integers => true,
                Axis::Values(v) => v.contains(c),
            }),
        }
    }

    /// The first point in canonical order.
    pub fn first_point(&self) -> LatticePoint {
        match self {
            PointSet::Finite(p) => p[0].clone(),
            _ => {
                let axes = self.axes().expect("infinite set");
                LatticePoint::new(
                    axes.iter()
                        .map(|a| match a {
                            Axis::Integers => BigInt::zero(),
                            Axis::Values(v) => v[0].clone(),
                        })
                        .collect(),
                )
            }
        }
    }

    /// The finite candidate grid for half-width `b`: every point of the set
    /// whose ℤ-coordinates lie in `[-b, b]`.
    pub(crate) fn grid(&self, b: u64) -> Option<Grid> {
        let axes = self.axes()?;
        let lo = -(b as i64);
        let values: Vec<Vec<BigInt>> = axes
            .iter()
            .map(|a| match a {
                Axis::Integers => (lo..=b as i64).map(BigInt::from).collect(),
                Axis::Values(v) => v.clone(),
            })
            .collect();
        Some(Grid { values })
    }

    /// Whether some non-negative point exists.
    pub(crate) fn has_nonnegative_point(&self) -> bool {
        match self {
            PointSet::Finite(p) => p.iter().any(|q| !q.coords().iter().any(Signed::is_negative)),
            PointSet::Lattice { .. } => true,
            PointSet::Product { axes, .. } => axes.iter().all(|a| match a {
                Axis::Integers => true,
                Axis::Values(v) => v.iter().any(|c| !c.is_negative()),
            }),
        }
    }

    /// True when every point of the set that precedes `p` canonically has
    /// all ℤ-coordinates within `[-b, b]`.
    pub(crate) fn predecessors_within(&self, p: &[BigInt], b: u64) -> bool {
        let negative = p.iter().any(Signed::is_negative);
        if negative && self.has_nonnegative_point() && !self.is_finite() {
            // infinitely many non-negative points precede p
            return false;
        }
        let l1: BigInt = p.iter().map(|c| c.abs()).sum();
        l1.to_u64().is_some_and(|v| v <= b)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSet::Finite(p) => {
                write!(f, "{{")?;
                for (i, q) in p.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{q}")?;
                }
                write!(f, "}}")
            }
            PointSet::Lattice { nvars, box_bound } => write!(f, "Z^{nvars} box={box_bound}"),
            PointSet::Product { axes, box_bound } => {
                for (i, a) in axes.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    match a {
                        Axis::Integers => write!(f, "Z")?,
                        Axis::Values(v) => {
                            write!(f, "{{")?;
                            for (j, c) in v.iter().enumerate() {
                                if j > 0 {
                                    write!(f, ",")?;
                                }
                                write!(f, "{c}")?;
                            }
                            write!(f, "}}")?;
                        }
                    }
                }
                write!(f, " box={box_bound}")
            }
        }
    }
}

/// A finite rectangular grid of candidate points, indexed in mixed radix.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    values: Vec<Vec<BigInt>>,
}

impl Grid {
    pub fn len(&self) -> u128 {
        self.values.iter().map(|v| v.len() as u128).product()
    }

    pub fn point(&self, mut idx: u64) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.values.len());
        for v in self.values.iter().rev() {
            let len = v.len() as u64;
            out.push(v[(idx % len) as usize].clone());
            idx /= len;
        }
        out.reverse();
        out
    }
}
