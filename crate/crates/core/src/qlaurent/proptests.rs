use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-12i64..12, -50i64..50), 0..8)
        .prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), LaurentPoly::zero());
    }

    #[test]
    fn degree_is_additive(a in nonzero_laurent(), b in nonzero_laurent()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.max_deg().unwrap(), a.max_deg().unwrap() + b.max_deg().unwrap());
        prop_assert_eq!(prod.min_deg().unwrap(), a.min_deg().unwrap() + b.min_deg().unwrap());
        prop_assert_eq!(prod.leading_coeff().unwrap(), &(a.leading_coeff().unwrap() * b.leading_coeff().unwrap()));
    }

    #[test]
    fn exact_div_inverts_mul(a in laurent(), b in nonzero_laurent()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn text_and_json_round_trip(a in laurent()) {
        prop_assert_eq!(a.to_text().parse::<LaurentPoly>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), a);
    }

    #[test]
    fn multinomial_is_symmetric(mut parts in prop::collection::vec(0i64..5, 1..5), seed in any::<u64>()) {
        let base = qmultinom(&parts).unwrap();
        let len = parts.len();
        parts.rotate_left((seed as usize) % len);
        parts.reverse();
        prop_assert_eq!(qmultinom(&parts).unwrap(), base);
    }

    #[test]
    fn fraction_sum_matches_cross_multiplication(
        a in laurent(), b in nonzero_laurent(), c in laurent(), d in nonzero_laurent()
    ) {
        let x = PolyFraction::new(a.clone(), b.clone()).unwrap();
        let y = PolyFraction::new(c.clone(), d.clone()).unwrap();
        let sum = frac_add(&x, &y);
        prop_assert_eq!(
            sum.numerator() * &(&b * &d),
            &(&(&a * &d) + &(&c * &b)) * sum.denominator()
        );
        let prod = frac_mul(&x, &y);
        prop_assert_eq!(prod, PolyFraction::new(&a * &c, &b * &d).unwrap());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_laurent(), b in nonzero_laurent(), c in nonzero_laurent()) {
        let x = &a * &c;
        let y = &b * &c;
        let g = poly_gcd(&x, &y);
        prop_assert!(x.exact_div(&g).is_ok());
        prop_assert!(y.exact_div(&g).is_ok());
        // the common factor c divides the gcd
        prop_assert!(g.exact_div(&c).is_ok());
    }
}

#[test]
fn quantum_integer_degrees() {
    for k in 1..=50 {
        let q = qint(k).unwrap();
        assert_eq!(q.max_deg().unwrap(), 2 * k - 2);
        assert_eq!(q.min_deg().unwrap(), -(2 * k - 2));
        assert_eq!(q.eval_at_one(), BigInt::from(k));
    }
}

#[test]
fn products_of_quantum_integers() {
    let q2 = qint(2).unwrap();
    assert_eq!(
        &q2 * &q2,
        LaurentPoly::from_terms([(4, 1), (0, 2), (-4, 1)])
    );
    assert!((&q2 + &(-&q2)).is_zero());
    // [2][3] / [2] = [3]
    let q3 = qint(3).unwrap();
    assert_eq!((&q2 * &q3).exact_div(&q2).unwrap(), q3);
}

#[test]
fn four_over_two() {
    // [4] = [2] (v^4 + v^-4): long division of v^6 + v^2 + v^-2 + v^-6 by v^2 + v^-2
    let quotient = qint(4).unwrap().exact_div(&qint(2).unwrap()).unwrap();
    assert_eq!(quotient, LaurentPoly::from_terms([(4, 1), (-4, 1)]));
}
