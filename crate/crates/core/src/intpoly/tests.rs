use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::arith::to_big;
use crate::error::Error;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> BinPoly {
    BinPoly::from_i64_terms(nvars, terms).unwrap()
}

/// `x^2` on the binomial basis: `2 C(x,2) + C(x,1)`.
fn square() -> BinPoly {
    poly(1, &[(&[1], 1), (&[2], 2)])
}

/// `z_1 z_2`.
fn product2() -> BinPoly {
    poly(2, &[(&[1, 1], 1)])
}

#[test]
fn monomial_to_binomial_examples() {
    let f = BinPoly::from_monomial_coeffs(1, [(vec![2], q(1, 1))]).unwrap();
    assert_eq!(f, square());

    let g = BinPoly::from_monomial_coeffs(1, [(vec![2], q(1, 2)), (vec![1], q(1, 2))]).unwrap();
    assert_eq!(g, poly(1, &[(&[1], 1), (&[2], 1)]));

    let err = BinPoly::from_monomial_coeffs(1, [(vec![2], q(1, 2))]).unwrap_err();
    assert!(matches!(err, Error::NotIntegerValued { .. }), "{err:?}");
}

#[test]
fn monomial_conversion_respects_caps() {
    let err = BinPoly::from_monomial_coeffs(1, [(vec![9], q(1, 1))]).unwrap_err();
    assert!(matches!(err, Error::CapExceeded { what: "degree", .. }));
    let err = BinPoly::from_monomial_coeffs(5, [(vec![1, 0, 0, 0, 0], q(1, 1))]).unwrap_err();
    assert!(matches!(err, Error::CapExceeded { .. }));
}

#[test]
fn evaluation_examples() {
    let f = poly(1, &[(&[2], 1), (&[1], 1)]);
    assert_eq!(f.eval_i64(&[5]).unwrap(), BigInt::from(15));
    assert_eq!(BinPoly::zero(3).eval_i64(&[4, -2, 7]).unwrap(), BigInt::from(0));
    assert_eq!(poly(1, &[(&[2], 1)]).eval_i64(&[1]).unwrap(), BigInt::from(0));
    assert_eq!(square().eval_i64(&[-7]).unwrap(), BigInt::from(49));
    assert!(matches!(
        f.eval_i64(&[1, 2]),
        Err(Error::ArityMismatch { expected: 1, got: 2 })
    ));
}

#[test]
fn group_operations() {
    let f = poly(2, &[(&[1, 2], 3), (&[0, 0], -1)]);
    assert!(f.add(&f.neg()).unwrap().is_zero());
    assert_eq!(
        poly(1, &[(&[1], 1)]).add(&poly(1, &[(&[1], 2)])).unwrap(),
        poly(1, &[(&[1], 3)])
    );
    let pruned = poly(1, &[(&[2], 2), (&[1], 1)]).add(&poly(1, &[(&[2], -2)])).unwrap();
    assert_eq!(pruned, poly(1, &[(&[1], 1)]));
    assert_eq!(pruned.num_terms(), 1);
    assert!(f.add(&square()).is_err());
}

#[test]
fn delta_of_product_is_the_cross_term() {
    // (a1 + z1)(a2 + z2) - z1 z2 - a1 a2 = a1 z2 + a2 z1, variables ordered (a1, a2, z1, z2)
    let d = product2().delta(2).unwrap();
    assert_eq!(d, poly(4, &[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], 1)]));
}

#[test]
fn delta_collapses_to_signed_constant() {
    let f = BinPoly::from_monomial_coeffs(1, [(vec![2], q(1, 1)), (vec![0], q(3, 1))]).unwrap();
    assert_eq!(f.delta(3).unwrap(), BinPoly::constant(3, 3));
}

#[test]
fn delta_of_additive_form_vanishes() {
    let f = poly(2, &[(&[1, 0], 4), (&[0, 1], -7)]);
    assert!(f.delta(2).unwrap().is_zero());
    assert_eq!(f.delta(1).unwrap(), f);
    assert!(f.delta(0).is_err());
}

#[test]
fn delta_pointwise_matches_inclusion_exclusion() {
    let f = poly(1, &[(&[3], 2), (&[1], -1), (&[0], 5)]);
    let d = f.delta(3).unwrap();
    for a in -3..=3i64 {
        for b in -2..=2i64 {
            for c in 0..3i64 {
                let z = [a, b, c];
                let mut direct = BigInt::from(0);
                for mask in 1..8u32 {
                    let sum: i64 = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| z[i]).sum();
                    let sign = if (3 - mask.count_ones()) % 2 == 1 { -1 } else { 1 };
                    direct += f.eval_i64(&[sum]).unwrap() * sign;
                }
                assert_eq!(d.eval_i64(&z).unwrap(), direct);
            }
        }
    }
}

#[test]
fn homogeneous_parts_examples() {
    let parts = square().homogeneous_parts();
    assert_eq!(parts.len(), 3);
    assert!(parts[0].is_zero());
    assert!(parts[1].is_zero());
    assert_eq!(parts[2], MonoPoly::from_terms(1, [(vec![2], q(1, 1))]).unwrap());

    // x(x+1)/2 splits into x/2 and x^2/2, neither integer valued
    let tri = poly(1, &[(&[1], 1), (&[2], 1)]).homogeneous_parts();
    assert_eq!(tri[1], MonoPoly::from_terms(1, [(vec![1], q(1, 2))]).unwrap());
    assert_eq!(tri[2], MonoPoly::from_terms(1, [(vec![2], q(1, 2))]).unwrap());
    assert!(tri[1].to_binpoly().is_err());
    let (m, cleared) = tri[2].clear_denominators();
    assert_eq!(m, BigInt::from(2));
    assert_eq!(cleared, square());

    let h = poly(2, &[(&[1, 1], 3)]);
    let parts = h.homogeneous_parts();
    assert_eq!(parts.iter().filter(|p| !p.is_zero()).count(), 1);
    assert_eq!(parts[2].to_binpoly().unwrap(), h);

    let c = BinPoly::constant(2, 7).homogeneous_parts();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].to_binpoly().unwrap(), BinPoly::constant(2, 7));
}

#[test]
fn c_number_examples() {
    assert_eq!(c_number(3, 3), BigInt::from(6));
    assert_eq!(c_number(3, 2), BigInt::from(0));
    assert_eq!(c_number(2, 2), BigInt::from(2));
    assert_eq!(c_number(1, 0), BigInt::from(1));
}

#[test]
fn pullback_examples() {
    let g = product2().pullback(&[to_big(&[1, 1])]).unwrap();
    assert_eq!(g, square());

    let f = poly(2, &[(&[1, 2], 3), (&[1, 0], -1)]);
    let id = f.pullback(&[to_big(&[1, 0]), to_big(&[0, 1])]).unwrap();
    assert_eq!(id, f);

    let lin = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
    assert_eq!(lin.pullback(&[to_big(&[2, 3])]).unwrap(), poly(1, &[(&[1], 5)]));

    let err = lin.pullback(&[to_big(&[1, 2]), to_big(&[2, 4])]).unwrap_err();
    assert!(matches!(err, Error::RankDeficientBasis { rank: 1, columns: 2 }));
}

#[test]
fn specialize_fixes_leading_variables() {
    // f(a, z) = a z: fixing a = 3 leaves 3 z
    let g = product2().specialize(&[Some(3.into()), None]).unwrap();
    assert_eq!(g, poly(1, &[(&[1], 3)]));
}

#[test]
fn coefficient_map_separates_trailing_block() {
    // f(a, z) = C(a,2) C(z,1) + a + C(z,2): f(a,z) - f(a,0) has coefficients C(a,2) on C(z,1), 1 on C(z,2)
    let f = poly(2, &[(&[2, 1], 1), (&[1, 0], 1), (&[0, 2], 1)]);
    let v = PolyTuple::coefficient_map(&[f], 1).unwrap();
    assert_eq!(v.len(), 2);
    assert_eq!(v.components()[0], poly(1, &[(&[2], 1)]));
    assert_eq!(v.components()[1], BinPoly::constant(1, 1));
}

#[test]
fn json_shape() {
    let s = serde_json::to_string(&square()).unwrap();
    assert_eq!(
        s,
        r#"{"nvars":1,"basis":"binomial","terms":[{"idx":[1],"coef":"1"},{"idx":[2],"coef":"2"}]}"#
    );
    let back: BinPoly = serde_json::from_str(&s).unwrap();
    assert_eq!(back, square());
    let bad = r#"{"nvars":1,"basis":"monomial","terms":[]}"#;
    assert!(serde_json::from_str::<BinPoly>(bad).is_err());
    let dup = r#"{"nvars":1,"basis":"binomial","terms":[{"idx":[1],"coef":"1"},{"idx":[1],"coef":"2"}]}"#;
    assert!(serde_json::from_str::<BinPoly>(dup).is_err());
}
