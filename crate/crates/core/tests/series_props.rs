//! Properties of the series engine on random commuting inputs.

use proptest::prelude::*;
use qtorus::{Element, Monomial, QHalf, TruncatedSeries};

/// Laurent polynomial in a fixed monomial with small q-power coefficients.
fn poly_in(base: Monomial) -> impl Strategy<Value = Element> {
    prop::collection::vec((-2i64..=2, -3i64..=3, -2i64..=2), 0..3).prop_map(move |ts| {
        let b = Element::term(QHalf::one(), base);
        ts.into_iter().fold(Element::zero(), |acc, (k, c, e)| {
            acc + b
                .pow(k)
                .unwrap()
                .scale(&(QHalf::from_int(c) * QHalf::q_pow(e)))
        })
    })
}

fn commuting_series(constant_one: bool) -> impl Strategy<Value = TruncatedSeries> {
    let base = prop_oneof![
        Just(Monomial::new(1, 1)),
        Just(Monomial::new(0, 1)),
        Just(Monomial::new(3, -2))
    ];
    (base, 1usize..=6).prop_flat_map(move |(base, order)| {
        prop::collection::vec(poly_in(base), order).prop_map(move |mut cs| {
            let c0 = if constant_one {
                Element::one()
            } else {
                Element::zero()
            };
            cs.insert(0, c0);
            TruncatedSeries::new(cs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_inverts_log(s in commuting_series(true)) {
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn log_inverts_exp(a in commuting_series(false)) {
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a);
    }

    #[test]
    fn exp_turns_sums_into_products(a in commuting_series(false), k in -2i64..=2) {
        // A and q^k A commute, so exp(A + q^k A) = exp(A) exp(q^k A).
        let b = a.scale(&QHalf::q_pow(k));
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn geometric_times_linear_factor_is_one(a in -3i64..=3, b in -3i64..=3, order in 1usize..=8) {
        let m = Element::mono(a, b);
        let g = TruncatedSeries::geometric(&m, order).unwrap();
        let f = TruncatedSeries::from_leading(vec![Element::one(), -m], order);
        prop_assert_eq!(f.mul(&g).unwrap(), TruncatedSeries::one(order));
    }
}
