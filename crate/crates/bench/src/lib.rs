//! Benchmark inputs shared by the criterion suite.

use ivp_core::{IntPoly, Monomial};
use num_bigint::BigInt;

/// Bivariate integer polynomial from `(coefficient, x exponent, y exponent)`.
pub fn poly2(terms: &[(i64, u32, u32)]) -> IntPoly {
    IntPoly::from_terms(
        2,
        terms.iter().map(|&(c, a, b)| (Monomial::new(vec![a, b]), BigInt::from(c))),
    )
}

/// `(y^2 + 2xy - 3y + 2x + 4)(y^2 + 2xy + 1)`.
pub fn quartic_product() -> IntPoly {
    let a = poly2(&[(1, 0, 2), (2, 1, 1), (-3, 0, 1), (2, 1, 0), (4, 0, 0)]);
    let b = poly2(&[(1, 0, 2), (2, 1, 1), (1, 0, 0)]);
    &a * &b
}

/// Product of three dense cubics, degree 9 in total.
pub fn cubic_triple() -> IntPoly {
    let a = poly2(&[(3, 3, 0), (-2, 1, 2), (5, 0, 3), (7, 1, 0), (-1, 0, 0)]);
    let b = poly2(&[(1, 2, 1), (4, 0, 3), (-6, 1, 1), (2, 0, 1), (9, 0, 0)]);
    let c = poly2(&[(-5, 3, 0), (1, 2, 1), (8, 1, 0), (3, 0, 2), (1, 0, 0)]);
    &(&a * &b) * &c
}
