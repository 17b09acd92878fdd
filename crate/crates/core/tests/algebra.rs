use cubic_skein::coeff::{Mono, PrincipalModulus, QPoly, RatFn, AB, ABZT, ALPHA, Q};
use cubic_skein::invariants::{beta0_modulus, h_poly, ParameterSet};
use cubic_skein::numeric::{eval_q, Fp};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly_in(vars: cubic_skein::coeff::Vars, lo: i32, hi: i32) -> impl Strategy<Value = QPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(lo..hi, n), -6i64..7, 1i64..4), 0..6).prop_map(move |terms| {
        QPoly::from_terms(
            vars,
            terms.into_iter().map(|(e, c, d)| (Mono::from_slice(&e), Q::new(BigInt::from(c), BigInt::from(d)))),
        )
    })
}

fn ab() -> impl Strategy<Value = QPoly> {
    poly_in(AB, 0, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in ab(), q in ab(), r in ab()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &QPoly::one(AB), p.clone());
    }

    #[test]
    fn divrem_round_trip(p in ab()) {
        let m = PrincipalModulus::new(h_poly().clone(), 0).unwrap();
        let (q, r) = m.divrem(&p).unwrap();
        prop_assert_eq!(&(&q * h_poly()) + &r, p);
        prop_assert!(r.degree_in(0).unwrap_or(-1) < 6);
    }

    #[test]
    fn laurent_remainder_is_congruent(p in poly_in(ALPHA, -8, 9)) {
        let m = beta0_modulus();
        let r = m.remainder_laurent(&p).unwrap();
        prop_assert!(r.is_zero() || (r.min_degree_in(0).unwrap() >= 0 && r.degree_in(0).unwrap() < 6));
        let d = (&p - &r).mul_mono(&Mono::from_slice(&[8]));
        prop_assert!(m.divides(&d).unwrap());
        prop_assert_eq!(m.remainder_laurent(&r).unwrap(), r);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly_in(ABZT, 0, 3), q in poly_in(ABZT, 0, 3)) {
        let ps = ParameterSet::type_i();
        let lhs = ps.substitute(&(&p * &q)).unwrap();
        let rhs = ps.substitute(&p).unwrap().mul(&ps.substitute(&q).unwrap());
        prop_assert!(lhs.equals(&rhs));
        let sum = ps.substitute(&(&p + &q)).unwrap();
        prop_assert!(sum.equals(&ps.substitute(&p).unwrap().add(&ps.substitute(&q).unwrap())));
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in ab(), q in ab(), a in 1u64..1_000_000, b in 1u64..1_000_000) {
        let pt = [Fp::new(a), Fp::new(b)];
        let pq = eval_q(&(&p * &q), &pt).unwrap();
        prop_assert_eq!(pq, eval_q(&p, &pt).unwrap().mul(eval_q(&q, &pt).unwrap()));
    }

    #[test]
    fn parse_display_round_trip(p in ab()) {
        prop_assert_eq!(QPoly::parse(AB, &p.to_string()).unwrap(), p);
    }
}

#[test]
fn rational_functions_compare_by_cross_multiplication() {
    let a = QPoly::parse(AB, "alpha").unwrap();
    let b = QPoly::parse(AB, "beta + 1").unwrap();
    let f = RatFn::new(&a * &b, &b * &b).unwrap();
    let g = RatFn::new(a, b).unwrap();
    assert!(f.equals(&g));
    assert!(RatFn::new(QPoly::one(AB), QPoly::zero(AB)).is_err());
}
