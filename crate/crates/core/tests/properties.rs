use floorpoly_core::poly::{discrete_sum, falling, interpolate, rat, stirling_first, MultiPoly, Var};
use floorpoly_core::seq::{seq_multinomial, SupportMatrix, TangencySequence};
use num_rational::BigRational;
use proptest::prelude::*;

fn poly_in(v: Var, coeffs: &[i64]) -> MultiPoly {
    let x = MultiPoly::var(v);
    let mut p = MultiPoly::zero();
    for (e, &c) in coeffs.iter().enumerate() {
        p += x.pow(e as u32).scale(&rat(c));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn discrete_sum_telescopes(coeffs in prop::collection::vec(-20i64..20, 1..7), c in -6i64..6) {
        let p = poly_in(Var::K, &coeffs);
        let f = discrete_sum(&p, c);
        let shifted = f.substitute(Var::X, &MultiPoly::linear(Var::X, -1));
        prop_assert_eq!(&f - &shifted, p.rename(Var::K, Var::X));
        prop_assert!(f.substitute_value(Var::X, &rat(c - 1)).is_zero());
    }
}

proptest! {
    #[test]
    fn interpolate_recovers_polynomial(coeffs in prop::collection::vec(-30i64..30, 1..6), start in -10i64..10) {
        let p = poly_in(Var::K, &coeffs);
        let deg = coeffs.len() - 1;
        let pts: Vec<(i64, BigRational)> = (start..start + deg as i64 + 3)
            .map(|k| (k, p.evaluate(|_| rat(k))))
            .collect();
        prop_assert_eq!(interpolate(&pts, deg).unwrap(), p);
    }

    #[test]
    fn subtraction_cancels(coeffs in prop::collection::vec(-30i64..30, 0..6)) {
        let p = poly_in(Var::D, &coeffs);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn wls_is_monotone(cells in prop::collection::vec(((1usize..5, 1usize..5), 0u64..3), 0..8)) {
        let mut a = SupportMatrix::zero();
        for ((i, j), v) in cells {
            a.set(i, j, v);
        }
        for i in 1..6 {
            prop_assert!(a.wls(i) >= a.wls(i + 1));
        }
        prop_assert_eq!(a.wls(1), a.col_sums().weighted());
    }

    #[test]
    fn multinomial_matches_factorials(s in prop::collection::vec(0u64..5, 0..4), cut in prop::collection::vec(0u64..5, 0..4)) {
        let s = TangencySequence::new(s);
        let part = TangencySequence::new(cut.iter().zip(s.as_slice()).map(|(c, v)| (*c).min(*v)).collect());
        let rest = s.checked_sub(&part).unwrap();
        let m = seq_multinomial(&s, std::slice::from_ref(&part)).unwrap();
        prop_assert_eq!(m * part.factorial() * rest.factorial(), s.factorial());
    }
}

#[test]
fn stirling_expands_falling_factorial() {
    let x = MultiPoly::var(Var::X);
    for n in 0..=10u32 {
        let f = falling(&x, n);
        for m in 0..=n {
            let c = f.coeff(&floorpoly_core::poly::Monomial::var(Var::X, m));
            assert_eq!(c, BigRational::from_integer(stirling_first(n, m)), "s({n},{m})");
        }
    }
    assert_eq!(stirling_first(5, 2), (-50).into());
}
