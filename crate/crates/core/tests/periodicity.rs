mod common;

use common::*;
use negabeta::digits::is_admissible;
use negabeta::expansion::{evaluate, evaluate_word, DEFAULT_BUDGET};
use negabeta::periodicity::{
    classify_base, find_period_multiplier, is_purely_periodic, msd, pure_periodic_certificate, rationals_in_interval,
    Budgets, CertificateOutcome, SpectralClass,
};
use negabeta::{BaseContext, EventuallyPeriodicString, FieldElement};
use rand::Rng;

/// Least even N with ((-b)^N - 1)/q integral, by plain power iteration.
fn brute_force_even_order(q: u64, base: &BaseContext) -> u64 {
    let nb = -&base.beta();
    let inv_q = base.from_ratio(1, q as i64);
    let mut p: FieldElement = base.one();
    for n in 1..=100_000u64 {
        p = &p * &nb;
        if n % 2 == 0 && (&p.add_int(-1) * &inv_q).is_integral() {
            return n;
        }
    }
    panic!("no period for q = {q}");
}

fn five_bases() -> Vec<BaseContext> {
    vec![minus(3), minus(5), plus(1), plus(2), poly("x^3-x-1")]
}

#[test]
fn period_multiplier_is_sound_and_minimal() {
    for base in five_bases() {
        for q in 1..=30u64 {
            let n = find_period_multiplier(q, &base).unwrap();
            assert_eq!(n % 2, 0);
            let z = &(-&base.beta()).pow(n as i64).unwrap().add_int(-1) * &base.from_ratio(1, q as i64);
            assert!(z.is_integral(), "q = {q} in {}", base.minpoly());
            assert_eq!(n, brute_force_even_order(q, &base), "q = {q} in {}", base.minpoly());
        }
    }
}

#[test]
fn period_multiplier_needs_a_unit() {
    let b = poly("x^2-4*x+2");
    assert!(find_period_multiplier(3, &b).is_err());
}

/// Random admissible finite words: rejection sampling over 0 w 0^w.
fn random_admissible_words(base: &BaseContext, count: usize, seed: u64) -> Vec<Vec<u32>> {
    let r = refs(base);
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..200 * count {
        if out.len() == count {
            break;
        }
        let len = rng.gen_range(1..=14);
        let mut w: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=r.digit_bound)).collect();
        w[0] = rng.gen_range(1..=r.digit_bound);
        let mut s = vec![0];
        s.extend_from_slice(&w);
        if is_admissible(&EventuallyPeriodicString::finite(s), &r) {
            out.push(w);
        }
    }
    assert_eq!(out.len(), count, "too few admissible words in {}", base.minpoly());
    out
}

#[test]
fn msd_parity_and_bound() {
    for (i, base) in [minus(3), plus(1), plus(2), poly("x^3-2*x^2+x-1")].into_iter().enumerate() {
        for w in random_admissible_words(&base, 2000, 900 + i as u64) {
            let z = evaluate_word(&w, &base);
            let rep = msd(&z, DEFAULT_BUDGET).unwrap();
            // the word is the expansion of z, so its length fixes n
            assert_eq!(rep.n, w.len() as i64 - 1, "{w:?}");
            assert!(rep.parity_ok, "{w:?} in {}: {rep:?}", base.minpoly());
        }
    }
}

#[test]
fn certificates_are_sound() {
    for base in [minus(3), minus(4), plus(1), plus(2), plus(3)] {
        let r = refs(&base);
        for x in rationals_in_interval(&base, 24) {
            let xe = base.from_rational(&x);
            let pure = is_purely_periodic(&xe, DEFAULT_BUDGET).unwrap();
            match pure_periodic_certificate(&x, &base, Budgets::default()).unwrap() {
                CertificateOutcome::Certified(c) => {
                    assert!(pure, "certificate for non-pure {x}");
                    assert!(is_admissible(&c.expansion, &r));
                    assert_eq!(evaluate(&c.expansion, -1, &base), xe);
                    assert_eq!(c.n_period % 2, 0);
                    assert_eq!(c.n_period as usize % c.expansion.period().len(), 0);
                    assert!(c.z.is_integral());
                }
                CertificateOutcome::Refused(_) => assert!(!pure, "no certificate for pure {x}"),
            }
        }
    }
}

#[test]
fn certificate_examples() {
    let c = pure_periodic_certificate(&ratio(1, 4), &minus(3), Budgets::default()).unwrap();
    let c = c.certificate().expect("certified");
    assert_eq!(c.n_period, 6);
    assert_eq!(c.expansion.period(), &[0, 2, 1, 1, 1, 0]);

    let p2 = plus(2);
    let c = pure_periodic_certificate(&ratio(-1, 2), &p2, Budgets::default()).unwrap();
    let c = c.certificate().expect("certified");
    assert_eq!(c.n_period, 2);
    assert_eq!(c.z, -&p2.beta());
    assert_eq!(c.expansion.period(), &[1, 0]);

    match pure_periodic_certificate(&ratio(1, 4), &p2, Budgets::default()).unwrap() {
        CertificateOutcome::Refused(r) => assert_eq!(r.reason.as_str(), "z-not-in-Zmb"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn positive_rationals_never_pure_with_negative_conjugate() {
    for m in 1..=4 {
        let base = plus(m);
        let cls = classify_base(&base, DEFAULT_BUDGET);
        assert!(cls.excludes_positive_rationals);
        for x in rationals_in_interval(&base, 30) {
            if x > ratio(0, 1) {
                assert!(!is_purely_periodic(&base.from_rational(&x), DEFAULT_BUDGET).unwrap());
            }
        }
    }
}

#[test]
fn classification() {
    let c = classify_base(&minus(3), DEFAULT_BUDGET);
    assert!(c.is_unit && c.yrrap && c.finiteness_candidate);
    assert_eq!(c.spectral_class, SpectralClass::Pisot);
    assert!(!c.excludes_positive_rationals);
    let c = classify_base(&poly("x^2-4*x+2"), DEFAULT_BUDGET);
    assert!(!c.is_unit && !c.finiteness_candidate);
    let c = classify_base(&poly("x^3-x-1"), DEFAULT_BUDGET);
    assert_eq!(c.spectral_class, SpectralClass::Pisot);
}

#[test]
fn rational_enumeration_order() {
    let base = plus(1);
    let xs = rationals_in_interval(&base, 4);
    let shown: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    assert_eq!(shown, ["0", "-1/2", "-1/3", "1/3", "-1/4", "1/4"]);
}
