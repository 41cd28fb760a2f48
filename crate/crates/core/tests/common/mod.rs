#![allow(dead_code)]

use negabeta::digits::ReferenceStrings;
use negabeta::expansion::{boundary_strings, DEFAULT_BUDGET};
use negabeta::{BaseContext, EventuallyPeriodicString, QuadFamily};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn minus(m: u32) -> BaseContext {
    BaseContext::quadratic(QuadFamily::Minus, m).unwrap()
}

pub fn plus(m: u32) -> BaseContext {
    BaseContext::quadratic(QuadFamily::Plus, m).unwrap()
}

pub fn poly(s: &str) -> BaseContext {
    BaseContext::from_poly_str(s).unwrap()
}

/// Quadratic bases of both families plus three cubic Pisot units. The first
/// two admit no finite nonzero expansion; the third has an odd-period left
/// endpoint string (101)^w.
pub fn sample_bases() -> Vec<BaseContext> {
    vec![
        minus(3),
        minus(4),
        plus(1),
        plus(2),
        plus(3),
        poly("x^3-x-1"),
        poly("x^3-x^2-1"),
        poly("x^3-2*x^2+x-1"),
    ]
}

pub fn refs(base: &BaseContext) -> ReferenceStrings {
    boundary_strings(base, DEFAULT_BUDGET).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A random reduced-or-not rational inside the interval of the base.
pub fn random_rational_in(base: &BaseContext, rng: &mut ChaCha8Rng, qmax: i64) -> BigRational {
    let (l, r) = (base.left_endpoint().to_f64(), base.right_endpoint().to_f64());
    loop {
        let q = rng.gen_range(1..=qmax);
        let lo = (l * q as f64).floor() as i64 - 1;
        let hi = (r * q as f64).ceil() as i64 + 1;
        let x = ratio(rng.gen_range(lo..=hi), q);
        if base.contains_rational(&x) {
            return x;
        }
    }
}

/// Every word of length `len` over 0..=max.
pub fn words(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=max).map(move |d| {
                    let mut v = w.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every word of length 0..=max_len over 0..=max.
pub fn words_up_to(max_len: usize, max: u32) -> Vec<Vec<u32>> {
    (0..=max_len).flat_map(|n| words(n, max)).collect()
}

pub fn eps(pre: &[u32], period: &[u32]) -> EventuallyPeriodicString {
    EventuallyPeriodicString::new(pre.to_vec(), period.to_vec()).unwrap()
}
