mod common;

use std::cmp::Ordering;

use common::*;
use negabeta::algebraic::quadratic_conjugate;
use negabeta::expansion::{expand_real, DEFAULT_BUDGET};
use negabeta::quadratic::{
    gk_recurrence, membership_fin_plus, membership_neg_beta_zmb, membership_zmb, DEFAULT_GK_CAP,
};
use negabeta::{BaseContext, FieldElement};
use num_bigint::BigInt;
use num_traits::Zero;

const A: i64 = 25;

fn grid(base: &BaseContext) -> impl Iterator<Item = (i64, i64, FieldElement)> + '_ {
    let nb = -&base.beta();
    (-A..=A).flat_map(move |a| {
        let nb = nb.clone();
        (-A..=A).map(move |b| (a, b, &base.from_int(a) + &nb.scale_rational(&ratio(b, 1))))
    })
}

#[test]
fn conjugate_window_matches_expansion_minus() {
    for m in [3, 4, 5] {
        let base = minus(m);
        let mut members = 0;
        for (_, _, z) in grid(&base) {
            let e = expand_real(&z, DEFAULT_BUDGET).unwrap();
            assert_eq!(membership_zmb(&z).unwrap(), e.is_integer(), "{z} in minus({m})");
            members += usize::from(e.is_integer());
        }
        // every integral element has a finite expansion here
        assert!(members > 0);
    }
}

#[test]
fn conjugate_window_matches_expansion_plus() {
    for m in [1, 2, 3] {
        let base = plus(m);
        for (_, _, z) in grid(&base) {
            let e = expand_real(&z, DEFAULT_BUDGET).unwrap();
            assert_eq!(membership_zmb(&z).unwrap(), e.is_integer(), "{z} in plus({m})");
        }
    }
}

#[test]
fn finiteness_three_way_plus() {
    for m in [1, 2, 3] {
        let base = plus(m);
        for (a, b, z) in grid(&base) {
            let e = expand_real(&z, DEFAULT_BUDGET).unwrap();
            let by_expansion = e.digits.is_finite();
            let by_conjugate = membership_fin_plus(&z).unwrap();
            let by_recurrence = gk_recurrence(a, b, m, DEFAULT_GK_CAP).unwrap().finite;
            assert_eq!(by_conjugate, by_expansion, "{z} in plus({m})");
            assert_eq!(by_recurrence, by_expansion, "a = {a}, b = {b}, m = {m}");
        }
        assert!(!membership_fin_plus(&base.from_int(-1)).unwrap());
        assert!(!expand_real(&base.from_int(-1), DEFAULT_BUDGET).unwrap().digits.is_finite());
    }
}

#[test]
fn recurrence_never_has_two_negatives_when_conjugate_positive() {
    for m in [1, 2, 3] {
        let base = plus(m);
        for (a, b, z) in grid(&base) {
            let zc = quadratic_conjugate(&z).unwrap();
            if zc.sign() != Ordering::Greater {
                continue;
            }
            let v = gk_recurrence(a, b, m, DEFAULT_GK_CAP).unwrap();
            assert!(v.finite);
            let neg = |g: &BigInt| g < &BigInt::zero();
            for w in v.sequence.windows(2) {
                assert!(!(neg(&w[0]) && neg(&w[1])), "a = {a}, b = {b}");
            }
        }
    }
}

#[test]
fn window_zero_one_ends_in_zero_digit() {
    for m in [1, 2, 3] {
        let base = plus(m);
        for (_, _, z) in grid(&base) {
            if z.is_zero() || !membership_neg_beta_zmb(&z).unwrap() {
                continue;
            }
            let e = expand_real(&z, DEFAULT_BUDGET).unwrap();
            assert!(e.is_integer());
            assert_eq!(e.digit_at(0), 0, "{z} in plus({m})");
        }
    }
}
