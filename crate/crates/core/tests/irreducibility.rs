use ivp_core::{
    canonicalize, fixed_divisor, is_image_primitive, is_integer_valued, is_irreducible,
    oracle_is_irreducible, Axis, CanonicalIvp, IntPoly, LatticePoint, Monomial, MultiPoly,
    PointSet,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn binomial(nvars: usize, var: usize, k: u32) -> MultiPoly {
    let mut acc = MultiPoly::one(nvars);
    for t in 0..k {
        let shifted = &MultiPoly::var(nvars, var)
            - &MultiPoly::constant(nvars, BigRational::from_integer(BigInt::from(t)));
        acc = &acc * &shifted;
    }
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    acc.scale(&BigRational::new(BigInt::one(), fact))
}

/// Integer combination of `C(x,i)·C(y,j)`, always in Int(Z^2).
fn binomial_combination(coeffs: &[(i64, u32, u32)]) -> MultiPoly {
    coeffs.iter().fold(MultiPoly::zero(2), |acc, &(c, i, j)| {
        let term = &binomial(2, 0, i) * &binomial(2, 1, j);
        &acc + &term.scale(&BigRational::from_integer(c.into()))
    })
}

fn int_poly(terms: &[(i64, u32, u32)]) -> IntPoly {
    IntPoly::from_terms(
        2,
        terms.iter().map(|&(c, a, b)| (Monomial::new(vec![a, b]), BigInt::from(c))),
    )
}

fn brute_fixed_divisor(g: &IntPoly) -> BigInt {
    let k = g.total_degree() as i64;
    let mut acc = BigInt::zero();
    for x in 0..=k {
        for y in 0..=k {
            acc = acc.gcd(&g.evaluate(&[x.into(), y.into()]).unwrap());
        }
    }
    acc
}

fn z2() -> PointSet {
    PointSet::lattice(2, 32).unwrap()
}

fn term_strategy() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
    prop::collection::vec((-4i64..=4, 0u32..=3, 0u32..=2), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn verdict_agrees_with_oracle(a in term_strategy(), b in term_strategy(), product in any::<bool>()) {
        let pa = binomial_combination(&a);
        let pb = binomial_combination(&b);
        let p = if product { &pa * &pb } else { &pa + &pb };
        prop_assume!(!p.is_zero() && p.total_degree() >= 1 && p.total_degree() <= 4);
        let f = canonicalize(&p).unwrap();
        let v = is_irreducible(&f, &z2()).unwrap();
        prop_assert_eq!(v.irreducible, oracle_is_irreducible(&f, &z2()).unwrap(), "{}", f);
        if let Some(s) = v.split {
            let (u, w) = s.factors().unwrap();
            prop_assert_eq!(&u.to_poly() * &w.to_poly(), f.to_poly());
            prop_assert!(is_integer_valued(&u, &z2()).unwrap().is_member);
            prop_assert!(is_integer_valued(&w, &z2()).unwrap().is_member);
        }
    }

    #[test]
    fn fixed_divisor_matches_small_grid(terms in prop::collection::vec((-6i64..=6, 0u32..=3, 0u32..=3), 1..5), scale in 1i64..=6) {
        let g = int_poly(&terms).scale(&BigInt::from(scale));
        prop_assume!(!g.is_zero());
        prop_assert_eq!(fixed_divisor(&g, &z2()).unwrap(), brute_fixed_divisor(&g));
    }

    #[test]
    fn membership_matches_values_on_finite_sets(
        terms in prop::collection::vec((-6i64..=6, 0u32..=2, 0u32..=2), 1..5),
        d in 2i64..=12,
        pts in prop::collection::btree_set((-4i64..=4, -4i64..=4), 1..20),
    ) {
        let g = int_poly(&terms);
        prop_assume!(!g.is_zero());
        let f = CanonicalIvp::new(g.clone(), BigInt::from(d)).unwrap();
        let points: Vec<LatticePoint> = pts.iter().map(|&(x, y)| LatticePoint::from_i64(&[x, y])).collect();
        let set = PointSet::finite(points.clone()).unwrap();
        let direct = points.iter().all(|p| f.evaluate(p.coords()).unwrap().is_integer());
        prop_assert_eq!(is_integer_valued(&f, &set).unwrap().is_member, direct);
    }
}

#[test]
fn product_set_membership() {
    // x(x-1)y/2 is integer-valued on Z x {0,1,2}; x·y/2 is not
    let set = PointSet::product(
        vec![Axis::Integers, Axis::Values(vec![0.into(), 1.into(), 2.into()])],
        32,
    )
    .unwrap();
    let good = CanonicalIvp::new(int_poly(&[(1, 2, 1), (-1, 1, 1)]), BigInt::from(2)).unwrap();
    assert!(is_integer_valued(&good, &set).unwrap().is_member);
    let bad = CanonicalIvp::new(int_poly(&[(1, 1, 1)]), BigInt::from(2)).unwrap();
    let r = is_integer_valued(&bad, &set).unwrap();
    assert!(!r.is_member);
    let (p, _) = r.witness.unwrap();
    assert!(!bad.evaluate(p.coords()).unwrap().is_integer());
}

#[test]
fn image_primitive_binomials() {
    for (i, j) in [(1, 1), (2, 0), (2, 1), (3, 1), (2, 2)] {
        let f = canonicalize(&binomial_combination(&[(1, i, j)])).unwrap();
        assert!(is_image_primitive(&f, &z2()).unwrap(), "{f}");
    }
    let doubled = canonicalize(&binomial_combination(&[(2, 2, 0)])).unwrap();
    assert!(!is_image_primitive(&doubled, &z2()).unwrap());
}

#[test]
fn binomial_products_are_reducible() {
    // C(x,2)·C(y,2) = (x^2-x)/2 · (y^2-y)/2
    let f = canonicalize(&binomial_combination(&[(1, 2, 2)])).unwrap();
    let v = is_irreducible(&f, &z2()).unwrap();
    assert!(!v.irreducible);
    assert!(!oracle_is_irreducible(&f, &z2()).unwrap());
    // C(x,2) + C(y,2) has an irreducible numerator
    let g = canonicalize(&binomial_combination(&[(1, 2, 0), (1, 0, 2)])).unwrap();
    assert!(is_irreducible(&g, &z2()).unwrap().irreducible);
}
