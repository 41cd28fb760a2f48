mod common;

use std::cmp::Ordering;

use common::*;
use negabeta::algebraic::{floor_and_sign, galois_data, quadratic_conjugate};
use negabeta::{BaseContext, FieldElement, IntPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn elem(base: &BaseContext, c: &[i64], den: i64) -> FieldElement {
    let coeffs: Vec<BigRational> = c.iter().map(|&v| ratio(v, den)).collect();
    base.from_coeffs(&coeffs)
}

/// Isolates the base root to width 2^-bits by bisection on the minimal polynomial.
fn root_bounds(base: &BaseContext, bits: u32) -> (BigRational, BigRational) {
    let p: &IntPoly = base.minpoly();
    let (mut lo, mut hi) = base.root_interval();
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let s_lo = p.sign_at(&lo);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        match p.sign_at(&mid) {
            Ordering::Equal => return (mid.clone(), mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

/// Interval enclosure of the value of z with the root pinned to 2^-bits.
fn enclose(z: &FieldElement, bits: u32) -> (BigRational, BigRational) {
    let (lo, hi) = root_bounds(z.base(), bits);
    assert!(lo.is_positive());
    let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
    let (mut plo, mut phi) = (BigRational::one(), BigRational::one());
    for c in z.coeffs() {
        if c.is_negative() {
            a += &c * &phi;
            b += &c * &plo;
        } else {
            a += &c * &plo;
            b += &c * &phi;
        }
        plo *= &lo;
        phi *= &hi;
    }
    (a, b)
}

fn interval_sign(z: &FieldElement) -> Option<Ordering> {
    let (a, b) = enclose(z, 200);
    if a.is_positive() {
        Some(Ordering::Greater)
    } else if b.is_negative() {
        Some(Ordering::Less)
    } else {
        None
    }
}

fn coeffs_strategy(deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-40i64..=40, deg)
}

#[test]
fn sign_matches_200_bit_enclosure() {
    let mut rng = rng(11);
    use rand::Rng;
    for base in sample_bases() {
        let d = base.degree();
        for _ in 0..300 {
            let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-1000..=1000)).collect();
            let z = elem(&base, &c, rng.gen_range(1..=50));
            let (s, fl) = floor_and_sign(&z);
            if z.is_zero() {
                assert_eq!(s, Ordering::Equal);
                continue;
            }
            let oracle = interval_sign(&z).expect("200 bits separate a nonzero small element from 0");
            assert_eq!(s, oracle, "sign of {z}");
            // floor: fl <= z < fl + 1
            let below = &z - &base.from_bigint(fl.clone());
            assert_ne!(interval_sign(&below), Some(Ordering::Less), "floor of {z}");
            assert_eq!(interval_sign(&below.add_int(-1)).unwrap_or(Ordering::Less), Ordering::Less);
        }
    }
}

#[test]
fn sign_near_cancellation() {
    // Elements extremely close to 0: convergent-style approximations of b.
    let g = plus(1);
    let mut fa = (BigInt::one(), BigInt::one());
    for _ in 0..80 {
        fa = (fa.1.clone(), &fa.0 + &fa.1);
        // F_{n+1} - F_n b has alternating sign and tends to 0
        let z = &g.from_bigint(fa.1.clone()) - &g.beta().scale_rational(&BigRational::from_integer(fa.0.clone()));
        assert_eq!(Some(z.sign()), interval_sign(&z));
    }
}

#[test]
fn norm_of_units() {
    for base in sample_bases() {
        let c0 = base.minpoly().coeff(0);
        let n = base.beta().norm();
        assert!(n.is_integer());
        assert_eq!(n.abs().is_one(), c0.abs().is_one(), "{}", base.minpoly());
        assert_eq!(base.is_unit(), c0.abs().is_one());
    }
    let b = poly("x^2-4*x+2");
    assert_eq!(b.beta().norm(), ratio(2, 1));
    assert!(!b.is_unit());
}

#[test]
fn norm_matches_conjugate_product() {
    let mut rng = rng(5);
    use rand::Rng;
    for base in sample_bases() {
        for _ in 0..50 {
            let c: Vec<i64> = (0..base.degree()).map(|_| rng.gen_range(-9..=9)).collect();
            let z = elem(&base, &c, 1);
            let gd = galois_data(&z);
            let (mut re, mut im) = (z.to_f64(), 0.0);
            for w in &gd.conjugate_images {
                (re, im) = (re * w.re - im * w.im, re * w.im + im * w.re);
            }
            let exact = gd.norm.to_integer();
            assert!(gd.norm.is_integer());
            let e: f64 = exact.to_string().parse().unwrap();
            assert!((re - e).abs() <= 1e-6 * e.abs().max(1.0), "norm {e} vs {re}");
            assert!(im.abs() < 1e-6 * e.abs().max(1.0));
        }
    }
}

proptest! {
    #[test]
    fn arithmetic_is_a_congruence(a in coeffs_strategy(3), b in coeffs_strategy(3), c in coeffs_strategy(3), da in 1i64..9, db in 1i64..9) {
        let base = poly("x^3-x-1");
        let (x, y, z) = (elem(&base, &a, da), elem(&base, &b, db), elem(&base, &c, 1));
        // the same value reached by different expression trees
        prop_assert_eq!(&(&x + &y) * &z, &(&z * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !y.is_zero() {
            let q = y.inverse().unwrap();
            prop_assert_eq!(&(&x * &q) * &y, x.clone());
        }
        let sq = &x * &x;
        prop_assert_eq!(sq, x.pow(2).unwrap());
    }

    #[test]
    fn quadratic_conjugation_is_a_ring_map(a in coeffs_strategy(2), b in coeffs_strategy(2), m in 1u32..6, minus_family in any::<bool>()) {
        let base = if minus_family { minus(m + 2) } else { plus(m) };
        let x = elem(&base, &a, 1);
        let y = elem(&base, &b, 1);
        let c = |v: &FieldElement| quadratic_conjugate(v).unwrap();
        prop_assert_eq!(c(&(&x * &y)), &c(&x) * &c(&y));
        prop_assert_eq!(c(&(&x + &y)), &c(&x) + &c(&y));
        prop_assert_eq!(c(&c(&x)), x.clone());
        // x x' is the norm
        prop_assert_eq!((&x * &c(&x)).as_rational().unwrap(), x.norm());
    }

    #[test]
    fn quadratic_norm_formula(a in -50i64..50, b in -50i64..50, m in 1u32..8) {
        // N(a + b x) = a^2 - a b c1 + b^2 c0 for x^2 + c1 x + c0
        let base = plus(m);
        let z = elem(&base, &[a, b], 1);
        let (c1, c0) = (-i64::from(m), -1i64);
        prop_assert_eq!(z.norm(), ratio(a * a - a * b * c1 + b * b * c0, 1));
    }
}

#[test]
fn polynomial_text_round_trips() {
    for s in ["[1,-3,1]", "x^2-3*x+1", "x^3 - x - 1", "[1,0,-1,-1]"] {
        let p: IntPoly = s.parse().unwrap();
        let back: IntPoly = p.to_list_string().parse().unwrap();
        assert_eq!(p, back);
        let back: IntPoly = p.to_string().parse().unwrap();
        assert_eq!(p, back);
    }
}
