use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use luka_core::exactalg::{
    isolate_positive_root, mobius_substitute, normalized_discriminant, positive_roots, sylvester_resultant,
    MobiusMap, MultiPoly, Var,
};

fn upoly(coeffs: &[i64]) -> MultiPoly {
    MultiPoly::from_coeffs(Var::U, coeffs)
}

fn c(x: i64) -> MultiPoly {
    MultiPoly::constant(x)
}

/// Coefficient vectors with a nonzero leading entry.
fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-6i64..=6, d), (1i64..=6, any::<bool>()))
            .prop_map(|(mut v, (lead, neg))| {
                v.push(if neg { -lead } else { lead });
                v
            })
    })
}

/// `v` in `u` plus `s a`, so the coefficients live in a polynomial ring.
fn mixed_poly(v: &[i64], a_shift: i64) -> MultiPoly {
    &upoly(v) + &MultiPoly::var(Var::A).scale(&BigInt::from(a_shift))
}

fn eval(p: &MultiPoly, x: &BigRational) -> BigRational {
    p.evaluate(&[(Var::U, x.clone())]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_swap_sign(p in coeffs(4), q in coeffs(4), s in -3i64..=3) {
        let (p, q) = (mixed_poly(&p, s), upoly(&q));
        let m = p.degree(Var::U).unwrap();
        let n = q.degree(Var::U).unwrap();
        let pq = sylvester_resultant(&p, &q, Var::U).unwrap();
        let qp = sylvester_resultant(&q, &p, Var::U).unwrap();
        if (m * n) % 2 == 1 {
            prop_assert_eq!(-pq, qp);
        } else {
            prop_assert_eq!(pq, qp);
        }
    }

    #[test]
    fn resultant_is_multiplicative(p in coeffs(3), q in coeffs(3), s in coeffs(3)) {
        let (p, q, s) = (upoly(&p), upoly(&q), upoly(&s));
        let lhs = sylvester_resultant(&(&p * &q), &s, Var::U).unwrap();
        let rhs = &sylvester_resultant(&p, &s, Var::U).unwrap() * &sylvester_resultant(&q, &s, Var::U).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pgl2_invariance(q in coeffs(3).prop_filter("degree 2 or 3", |v| v.len() >= 3),
                       m in (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)) {
        let (al, be, ga, de) = m;
        let det = al * de - be * ga;
        prop_assume!(det != 0);
        let q = upoly(&q);
        let n = q.degree(Var::U).unwrap();
        let t = mobius_substitute(&q, Var::U, &MobiusMap::new(c(al), c(be), c(ga), c(de))).unwrap();
        // the identity is about degree-n forms; skip maps that send a root to infinity
        prop_assume!(t.degree(Var::U) == Some(n));
        let lhs = normalized_discriminant(&t, Var::U).unwrap();
        let rhs = normalized_discriminant(&q, Var::U).unwrap().scale(&BigInt::from(det).pow(n * (n - 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn positive_root_enclosures_bracket_sign_change(v in coeffs(5), shift in 1i64..=20) {
        // force p(0) < 0 < p(large) so a positive root exists
        let mut v = v;
        v[0] = -shift;
        let last = v.len() - 1;
        v[last] = v[last].abs();
        let p = upoly(&v);
        let tol = BigRational::new(1.into(), BigInt::from(10).pow(12));
        let roots = positive_roots(&p, &tol).unwrap();
        prop_assert!(!roots.is_empty());
        for r in roots {
            if r.exact {
                prop_assert!(eval(&p, &r.interval.lo).is_zero());
            } else {
                let (lo, hi) = (eval(&p, &r.interval.lo), eval(&p, &r.interval.hi));
                prop_assert!(lo.is_negative() != hi.is_negative() || lo.is_zero() || hi.is_zero());
                prop_assert!(r.interval.width() <= tol);
            }
        }
        if let Ok(r) = isolate_positive_root(&p, &tol, true) {
            let (lo, hi) = (eval(&p, &r.interval.lo), eval(&p, &r.interval.hi));
            prop_assert!(r.exact || lo.is_negative() != hi.is_negative() || hi.is_zero());
        }
    }
}

#[test]
fn quadratic_discriminant_for_100_triples() {
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(100));
    runner
        .run(&((1i64..=50, any::<bool>()), -50i64..=50, -50i64..=50), |((a, neg), b, cc)| {
            let a = if neg { -a } else { a };
            let r = MultiPoly::var(Var::R);
            let p = &(&r.pow(2).scale(&BigInt::from(a)) + &r.scale(&BigInt::from(b))) + &c(cc);
            prop_assert_eq!(normalized_discriminant(&p, Var::R).unwrap(), c(b * b - 4 * a * cc));
            Ok(())
        })
        .unwrap();
}

#[test]
fn symbolic_quadratic_discriminant() {
    let (a, b, cc, r) = (MultiPoly::var(Var::A), MultiPoly::var(Var::Z), MultiPoly::var(Var::Q), MultiPoly::var(Var::R));
    let p = &(&(&a * &r.pow(2)) + &(&b * &r)) + &cc;
    let expect = &b.pow(2) - &(&a * &cc).scale(&BigInt::from(4));
    assert_eq!(normalized_discriminant(&p, Var::R).unwrap(), expect);
}
