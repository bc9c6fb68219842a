mod common;

use num_rational::Rational64;
use proptest::prelude::*;
use unidiff::cyclotomic::{
    cassels_decompose, cassels_identity_check, cassels_recompose, coefficient_killing_holds,
    group_ring_square, support_symmetry_and_difference_bridge, CycInt, CyclotomicError,
    GroupRingElem,
};
use unidiff::Prime;

use common::{eval_at, m_invariant_oracle};

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.hypot(a.1).max(b.0.hypot(b.1));
    (a.0 - b.0).abs() <= 1e-9 * scale && (a.1 - b.1).abs() <= 1e-9 * scale
}

fn cyc(m: u64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-10i64..=10, m as usize)
}

fn pair() -> impl Strategy<Value = (u64, Vec<i64>, Vec<i64>)> {
    (1u64..=60).prop_flat_map(|m| (Just(m), cyc(m), cyc(m)))
}

fn group_ring(p: u64, r: u64) -> impl Strategy<Value = GroupRingElem> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, r as usize), p as usize).prop_map(
        move |blocks| {
            let coeffs = blocks.iter().map(|b| CycInt::new(r, b)).collect();
            GroupRingElem::new(Prime::new(p).unwrap(), r, coeffs).unwrap()
        },
    )
}

fn group_ring_any() -> impl Strategy<Value = GroupRingElem> {
    prop::sample::select(vec![
        (2u64, 3u64),
        (3, 1),
        (3, 2),
        (3, 4),
        (5, 3),
        (7, 2),
        (5, 6),
    ])
    .prop_flat_map(|(p, r)| group_ring(p, r))
}

proptest! {
    #[test]
    fn arithmetic_matches_floating_point((m, a, b) in pair()) {
        let (x, y) = (CycInt::new(m, &a), CycInt::new(m, &b));
        let (fa, fb) = (eval_at(&a, m, 1), eval_at(&b, m, 1));
        prop_assert!(close(x.eval_complex(), fa));
        prop_assert!(close((&x + &y).eval_complex(), (fa.0 + fb.0, fa.1 + fb.1)));
        let prod = (fa.0 * fb.0 - fa.1 * fb.1, fa.0 * fb.1 + fa.1 * fb.0);
        prop_assert!(close((&x * &y).eval_complex(), prod));
        prop_assert!(close(x.conj().eval_complex(), (fa.0, -fa.1)));
    }

    #[test]
    fn canonical_form_is_unique((m, a, b) in pair(), shift in 0usize..60) {
        // adding any multiple of Φ_m-type relations leaves the element fixed
        let x = CycInt::new(m, &a);
        let y = CycInt::new(m, &b);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        let rotated: Vec<i64> = (0..m as usize).map(|j| a[(j + m as usize - shift % m as usize) % m as usize]).collect();
        let z = &CycInt::zeta_pow(m, (shift % m as usize) as i64) * &x;
        prop_assert_eq!(z, CycInt::new(m, &rotated));
    }

    #[test]
    fn m_invariant_bounds_and_galois((m, a, _b) in pair(), k in 1u64..60) {
        let y = CycInt::new(m, &a);
        let value = y.m_invariant();
        let (t, phi) = m_invariant_oracle(&a, m);
        prop_assert_eq!(value, Rational64::new(t, phi));
        if y.is_zero() {
            prop_assert_eq!(value, Rational64::from_integer(0));
        } else {
            prop_assert!(value >= Rational64::from_integer(1));
        }
        if num_integer::Integer::gcd(&k, &m) == 1 {
            prop_assert_eq!(y.galois(k as i64).unwrap().m_invariant(), value);
        }
    }

    #[test]
    fn cassels_round_trip_and_identity(
        (p, mp) in prop::sample::select(vec![(2u64, 3u64), (3, 1), (3, 4), (5, 2), (5, 3), (7, 1), (5, 4), (3, 5)]),
        seed in prop::collection::vec(-4i64..=4, 35),
    ) {
        let x = CycInt::new(p * mp, &seed[..(p * mp) as usize]);
        let parts = cassels_decompose(&x, p).unwrap();
        prop_assert_eq!(parts.len() as u64, p);
        prop_assert!(parts[p as usize - 1].is_zero());
        prop_assert_eq!(cassels_recompose(&parts, p).unwrap(), x.clone());
        prop_assert!(cassels_identity_check(&x, p).unwrap().holds);
    }

    #[test]
    fn evaluation_is_multiplicative(x in group_ring_any()) {
        prop_assume!(num_integer::Integer::gcd(&x.prime().get(), &x.conductor()) == 1);
        let y = x.evaluate().unwrap();
        prop_assert_eq!(group_ring_square(&x).evaluate().unwrap(), y.norm_sq());
        let c = GroupRingElem::c_p(x.prime(), x.conductor());
        prop_assert!((&x * &c).evaluate().unwrap().is_zero());
    }

    #[test]
    fn square_coefficients_are_difference_convolutions(x in group_ring_any()) {
        let p = x.prime().get();
        let sq = group_ring_square(&x);
        for k in 0..p {
            let mut expect = CycInt::zero(x.conductor());
            for i in 0..p {
                let j = (i + p - k) % p;
                expect = &expect + &(x.coeff(i) * &x.coeff(j).conj());
            }
            prop_assert_eq!(sq.coeff(k), &expect);
        }
        prop_assert!(coefficient_killing_holds(&x));
    }

    #[test]
    fn bridge_is_consistent_or_rejects(x in group_ring_any(), n in 0i64..20) {
        match support_symmetry_and_difference_bridge(&x, n) {
            Ok(report) => prop_assert!(report.consistent),
            Err(CyclotomicError::SquareNotScalar { .. }) => prop_assert!(!group_ring_square(&x).is_scalar(n)),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

/// Small scalar-square elements by exhaustive search: coefficients in
/// {0, ±1, ±ζ, …} over small (p, r), support of size at least two.
#[test]
fn scalar_squares_with_large_support_satisfy_the_bridge() {
    let mut found = 0;
    for (p, r) in [(2u64, 3u64), (3, 4), (3, 2), (5, 1), (2, 5)] {
        let prime = Prime::new(p).unwrap();
        let mut units = vec![CycInt::zero(r)];
        for d in 0..r as i64 {
            units.push(CycInt::zeta_pow(r, d));
            units.push(-&CycInt::zeta_pow(r, d));
        }
        units.push(&CycInt::zeta_pow(r, 1) - &CycInt::zeta_pow(r, 2 % r as i64));
        let mut idx = vec![0usize; p as usize];
        loop {
            let coeffs: Vec<CycInt> = idx.iter().map(|&i| units[i].clone()).collect();
            let x = GroupRingElem::new(prime, r, coeffs).unwrap();
            let sq = group_ring_square(&x);
            let n = sq.coeff(0).as_integer();
            if let Some(n) = n.filter(|&n| x.support().len() >= 2 && sq.is_scalar(n)) {
                let report = support_symmetry_and_difference_bridge(&x, n).unwrap();
                assert!(
                    report.consistent && report.unique_difference.is_none(),
                    "{x}"
                );
                found += 1;
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < units.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    assert!(found > 0);
}
