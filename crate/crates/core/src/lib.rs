pub mod arith;
pub mod error;
pub mod factor;
pub mod ivp;
pub mod matrix;
pub mod monomial;
pub mod pointset;
pub mod poly;
pub mod sequence;

pub use arith::{Int, Prime, PrimePower, Rat};
pub use error::{Error, Result};
pub use factor::{factor, is_irreducible_z, splits, Factorization, Split};
pub use ivp::{
    analyze_split, fixed_divisor, is_image_primitive, is_integer_valued, is_irreducible,
    oracle_is_irreducible, MembershipReport, PointSource, PrimeAnalysis, ReducibleSplit,
    SplitAnalysis, Verdict, VerdictReason,
};
pub use monomial::{DegreeBound, DegreeVector, Monomial};
pub use pointset::{Axis, PointSet};
pub use poly::{canonicalize, CanonicalIvp, IntPoly, LatticePoint, MultiPoly, SparsePoly};
pub use sequence::{build_d_sequence, build_pi_sequence, delta, DSequence, PiSequence};
