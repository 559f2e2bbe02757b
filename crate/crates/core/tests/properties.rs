use fivebrane_core::charbasis::CharCombination;
use fivebrane_core::lie::chi_sl3;
use fivebrane_core::plethystic::{pexp, plog};
use fivebrane_core::series::json::{from_json_str, to_json_string};
use fivebrane_core::{EulerExpr, Frame, HalfInt, Monomial, Series};
use proptest::prelude::*;

fn monomial(c2: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = Monomial> {
    (-2..=2i32, -2..=2i32, -2..=2i32, c2).prop_map(|(a1, a2, b, c2)| Monomial::new(a1, a2, b, c2))
}

fn series(c2: std::ops::RangeInclusive<i32>, max_terms: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec((monomial(c2), -3..=3i64), 0..=max_terms).prop_map(Series::from_ints)
}

fn positive(max_terms: usize) -> impl Strategy<Value = Series> {
    series(1..=8, max_terms)
}

fn o(n: i32) -> HalfInt {
    HalfInt::int(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_series_form_a_commutative_ring(a in series(-4..=4, 5), b in series(-4..=4, 5), c in series(-4..=4, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Series::one(), a.clone());
    }

    #[test]
    fn truncation_commutes_with_products(a in series(0..=10, 5), b in series(0..=10, 5), k in 0..=8i32) {
        let whole = (&a * &b).truncate_q(o(k));
        let parts = (&a.truncate_q(o(k)) * &b.truncate_q(o(k))).truncate_q(o(k));
        prop_assert_eq!(parts, whole);
    }

    #[test]
    fn euler_expansion_is_multiplicative(
        n1 in series(-2..=4, 3),
        n2 in series(-2..=4, 3),
        d1 in prop::collection::vec(monomial(1..=3), 0..=2),
        d2 in prop::collection::vec(monomial(1..=3), 0..=2),
    ) {
        let e1 = EulerExpr::new(n1, d1);
        let e2 = EulerExpr::new(n2, d2);
        // numerators start at q^-1, so the product of expansions is good to q^4
        let order = o(5);
        let joint = e1.mul(&e2).expand(order).unwrap().truncate_q(o(4));
        let apart = (&e1.expand(order).unwrap() * &e2.expand(order).unwrap()).truncate_q(o(4));
        prop_assert_eq!(joint, apart);
    }

    #[test]
    fn reciprocal_inverts(rest in positive(4), k in 1..=8i32) {
        let s = (&Series::one() + &rest).truncate_q(o(k));
        let inv = s.reciprocal().unwrap();
        prop_assert_eq!(&s * &inv, Series::one().truncate_q(o(k)));
    }

    #[test]
    fn pexp_turns_sums_into_products(f in positive(4), g in positive(4)) {
        let order = o(6);
        let lhs = pexp(&(&f + &g), order).unwrap();
        let rhs = (&pexp(&f, order).unwrap() * &pexp(&g, order).unwrap()).truncate_q(order);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn plog_inverts_pexp(f in positive(5)) {
        let order = o(7);
        prop_assert_eq!(plog(&pexp(&f, order).unwrap(), order).unwrap(), f.truncate_q(order));
    }

    #[test]
    fn pexp_needs_positive_grade(f in positive(3), m in monomial(0..=0)) {
        let with_constant = &f + &Series::monomial(m);
        prop_assert!(pexp(&with_constant, o(4)).is_err());
    }

    #[test]
    fn frame_coordinates_round_trip(m in monomial(-12..=12)) {
        for frame in Frame::ALL {
            prop_assert_eq!(frame.monomial(frame.coords(m)).unwrap(), m);
        }
    }

    #[test]
    fn json_round_trips_in_every_frame(s in series(-6..=6, 6), k in -2..=8i32) {
        let truncated = s.truncate_q(o(k));
        for frame in Frame::ALL {
            prop_assert_eq!(&from_json_str(&to_json_string(&s, frame)).unwrap(), &s);
            prop_assert_eq!(&from_json_str(&to_json_string(&truncated, frame)).unwrap(), &truncated);
        }
    }

    #[test]
    fn characters_round_trip(terms in prop::collection::vec((0..=3u32, 0..=3u32, -2..=2i32, 0..=6i32, -3..=3i64), 0..=5)) {
        let mut s = Series::zero();
        for (a, b, y, c2, c) in terms {
            let base = Monomial::new(0, 0, y, c2);
            s = &s + &chi_sl3(a, b).scale(&fivebrane_core::Coeff::from_integer(c.into())).mul_monomial(base);
        }
        for frame in [Frame::Canonical, Frame::T, Frame::X] {
            let combo = CharCombination::from_series(&s, frame).unwrap();
            prop_assert_eq!(combo.expand(), s.clone());
        }
    }
}
