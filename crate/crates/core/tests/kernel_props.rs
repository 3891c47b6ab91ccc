//! Randomized kernel invariants: ring axioms on the scalar towers, series
//! square roots, and exactness of polynomial division.

use intcomb_core::mpoly::{LaurentMPoly, Mono};
use intcomb_core::scalar::zpoly::ZPoly;
use intcomb_core::series::TruncatedSeries;
use intcomb_core::{QRat, QtRat, Rat, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn arb_qrat() -> impl Strategy<Value = QRat> {
    // small rational functions in q: (a + b q + c q^2) / (1 + |d| q)
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(a, b, c, d)| {
        let q = QRat::q();
        let num = QRat::from_int(a)
            + QRat::from_int(b) * q.clone()
            + QRat::from_int(c) * q.clone() * q.clone();
        let den = QRat::one() + QRat::from_int(d.abs()) * q;
        num / den
    })
}

fn arb_qtrat() -> impl Strategy<Value = QtRat> {
    (-5i64..=5, -5i64..=5, -5i64..=5).prop_map(|(a, b, c)| {
        let q = QtRat::var(0);
        let t = QtRat::var(1);
        let num = QtRat::from_int(a) + QtRat::from_int(b) * q.clone() * t.clone();
        let den = QtRat::one() + QtRat::from_int(c.abs()) * t;
        num / den
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rat_ring_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
        prop_assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!(a.clone() * b.clone(), b * a);
    }

    #[test]
    fn qrat_ring_axioms(a in arb_qrat(), b in arb_qrat(), c in arb_qrat()) {
        prop_assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        // canonical form: equality is structural, so compute (a-b)+b == a
        prop_assert_eq!((a.clone() - b.clone()) + b, a);
    }

    #[test]
    fn qtrat_ring_axioms(a in arb_qtrat(), b in arb_qtrat(), c in arb_qtrat()) {
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!((a.clone() - b.clone()) + b, a);
    }

    #[test]
    fn qrat_inverse_cancels(a in arb_qrat()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.clone() * a.try_inv().unwrap(), QRat::one());
    }

    #[test]
    fn series_sqrt_squares_back(coeffs in prop::collection::vec(-9i64..=9, 1..6)) {
        // a = 1 + c1 g + c2 g^2 + ... has a square root with s(0) = 1
        let order = coeffs.len() as i64;
        let mut v = vec![Rat::one()];
        v.extend(coeffs.iter().map(|&c| Rat::new(c.into(), 1.into())));
        let a = TruncatedSeries::from_coeffs("g", 0, v);
        let s = a.sqrt().unwrap();
        prop_assert_eq!(s.mul(&s).unwrap(), a.truncated(order).unwrap());
    }

    #[test]
    fn mpoly_exact_division_roundtrip(
        ea in prop::collection::vec((-3i32..=3, -3i32..=3, -8i64..=8), 1..5),
        eb in prop::collection::vec((-3i32..=3, -3i32..=3, -8i64..=8), 1..4),
    ) {
        let build = |terms: &[(i32, i32, i64)]| {
            let mut p = LaurentMPoly::<Rat>::zero(2);
            for &(x, y, c) in terms {
                p.add_term(Mono(vec![x, y]), Rat::new(c.into(), 1.into()));
            }
            p
        };
        let a = build(&ea);
        let b = build(&eb);
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b);
        let q = prod.divexact(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn zpoly_gcd_divides_both(
        ca in prop::collection::vec(-5i64..=5, 1..5),
        cb in prop::collection::vec(-5i64..=5, 1..5),
        cg in prop::collection::vec(-4i64..=4, 1..4),
    ) {
        let build = |cs: &[i64]| {
            let mut p = ZPoly::<1>::zero();
            for (k, &c) in cs.iter().enumerate() {
                p = p.add(&ZPoly::monomial([k as u32], c.into()));
            }
            p
        };
        let g = build(&cg);
        prop_assume!(!g.is_zero());
        let a = build(&ca).mul(&g);
        let b = build(&cb).mul(&g);
        let d = ZPoly::gcd(&a, &b);
        if !a.is_zero() {
            prop_assert!(a.divexact(&d).is_some());
        }
        if !b.is_zero() {
            prop_assert!(b.divexact(&d).is_some());
        }
        // the common factor g divides the gcd
        if !a.is_zero() && !b.is_zero() {
            prop_assert!(d.divexact(&g).is_some());
        }
    }

    #[test]
    fn zpoly_bivariate_gcd_divides_products(
        ca in prop::collection::vec((0u32..=2, 0u32..=2, -4i64..=4), 1..4),
        cb in prop::collection::vec((0u32..=2, 0u32..=2, -4i64..=4), 1..4),
        cg in prop::collection::vec((0u32..=1, 0u32..=1, -3i64..=3), 1..3),
    ) {
        let build = |cs: &[(u32, u32, i64)]| {
            let mut p = ZPoly::<2>::zero();
            for &(eq, et, c) in cs {
                p = p.add(&ZPoly::monomial([eq, et], c.into()));
            }
            p
        };
        let g = build(&cg);
        prop_assume!(!g.is_zero());
        let a = build(&ca).mul(&g);
        let b = build(&cb).mul(&g);
        let d = ZPoly::gcd(&a, &b);
        if !a.is_zero() {
            prop_assert!(a.divexact(&d).is_some());
        }
        if !b.is_zero() {
            prop_assert!(b.divexact(&d).is_some());
        }
        if !a.is_zero() && !b.is_zero() {
            prop_assert!(d.divexact(&g).is_some());
        }
    }

    #[test]
    fn series_mul_div_consistent(
        ca in prop::collection::vec(-7i64..=7, 1..6),
        cb in prop::collection::vec(-7i64..=7, 1..6),
    ) {
        let build = |cs: &[i64], unit: bool| {
            let mut v: Vec<Rat> = Vec::new();
            if unit {
                v.push(Rat::one());
            }
            v.extend(cs.iter().map(|&c| Rat::new(c.into(), 1.into())));
            TruncatedSeries::from_coeffs("g", 0, v)
        };
        let order = ca.len().min(cb.len()) as i64;
        let a = build(&ca, true);
        let b = build(&cb, true); // constant term 1: invertible
        let q = a.div(&b).unwrap();
        let back = q.mul(&b).unwrap().truncated(order).unwrap();
        prop_assert_eq!(back, a.truncated(order).unwrap());
    }
}
