use ncribbon::{Assignment, LaurentPoly, Var, VarFamily};
use num_rational::BigRational;
use proptest::prelude::*;

const MV: VarFamily = VarFamily::Multivariate(3);

fn two_param() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i32..4, -3i32..4, -6i64..=6), 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero(VarFamily::TwoParam);
        for (a, b, c) in terms {
            p.add_assign(&LaurentPoly::qt(a, b).scale(c)).unwrap();
        }
        p
    })
}

fn multivariate() -> impl Strategy<Value = LaurentPoly> {
    let var = prop_oneof![(1usize..=3).prop_map(Var::Qi), (1usize..=3).prop_map(Var::Ti)];
    let mono = prop::collection::vec((var, 0i32..3), 0..3);
    prop::collection::vec((mono, -4i64..=4), 0..4).prop_map(|terms| {
        let mut p = LaurentPoly::zero(MV);
        for (exps, c) in terms {
            p.add_assign(&LaurentPoly::monomial(MV, &exps, c).unwrap()).unwrap();
        }
        p
    })
}

fn at(p: &LaurentPoly, q: i64, t: i64) -> BigRational {
    p.eval(&[(Var::Q, q), (Var::T, t)]).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in two_param(), b in two_param(), c in two_param()) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.try_mul(&LaurentPoly::one(VarFamily::TwoParam)).unwrap(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in two_param(), b in two_param(), q in 1i64..5, t in -4i64..5) {
        prop_assume!(t != 0);
        prop_assert_eq!(at(&a.try_add(&b).unwrap(), q, t), at(&a, q, t) + at(&b, q, t));
        prop_assert_eq!(at(&a.try_mul(&b).unwrap(), q, t), at(&a, q, t) * at(&b, q, t));
    }

    #[test]
    fn inverting_t_is_an_involutive_ring_map(a in two_param(), b in two_param()) {
        prop_assert_eq!(a.invert_t().invert_t(), a.clone());
        prop_assert_eq!(a.try_mul(&b).unwrap().invert_t(), a.invert_t().try_mul(&b.invert_t()).unwrap());
    }

    #[test]
    fn collapse_commutes_with_arithmetic(a in multivariate(), b in multivariate()) {
        let c = |p: &LaurentPoly| p.specialize(&[Assignment::Collapse]).unwrap();
        prop_assert_eq!(c(&a.try_add(&b).unwrap()), c(&a).try_add(&c(&b)).unwrap());
        prop_assert_eq!(c(&a.try_mul(&b).unwrap()), c(&a).try_mul(&c(&b)).unwrap());
    }

    #[test]
    fn text_and_json_round_trip(a in two_param(), m in multivariate()) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), VarFamily::TwoParam).unwrap(), a.clone());
        prop_assert_eq!(LaurentPoly::parse(&m.to_string(), MV).unwrap(), m.clone());
        prop_assert_eq!(LaurentPoly::from_json(MV, &m.to_json()).unwrap(), m);
    }
}
