//! Certified approximation of an isolated real root, and exact sign / floor
//! decisions for polynomial expressions in that root.
//!
//! The root is approximated by dyadic brackets `floor(b * 2^k) / 2^k < b <
//! (floor(b * 2^k) + 1) / 2^k` at precisions k = 64, 128, 256, ... Each level
//! is computed once, on first use, by extending the previous one a bit at a
//! time with exact sign tests of the minimal polynomial. A nonzero element of
//! Q(b) has a nonzero value, so refinement always terminates.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::IntPoly;

const BASE_BITS: u64 = 64;
const LEVELS: usize = 14;

#[derive(Debug)]
struct Level {
    bits: u64,
    /// floor(b * 2^bits)
    floor: BigInt,
    /// lo_pows[i] = floor^i * 2^(bits*(d-1-i)), the lower bracket of b^i scaled by 2^(bits*(d-1)).
    lo_pows: Vec<BigInt>,
    hi_pows: Vec<BigInt>,
}

#[derive(Debug)]
pub(crate) struct RealRoot {
    minpoly: IntPoly,
    iso_lo: BigRational,
    iso_hi: BigRational,
    /// Sign of the minimal polynomial on (iso_lo, b).
    sign_below: Ordering,
    floor: BigInt,
    levels: Vec<OnceLock<Level>>,
}

impl RealRoot {
    /// `iso_lo < b < iso_hi` must isolate a simple root with neither endpoint a root.
    pub(crate) fn new(minpoly: IntPoly, iso_lo: BigRational, iso_hi: BigRational) -> Self {
        let sign_below = minpoly.sign_at(&iso_lo);
        debug_assert_ne!(sign_below, Ordering::Equal);
        debug_assert_eq!(minpoly.sign_at(&iso_hi), sign_below.reverse());
        let mut root = RealRoot {
            minpoly,
            iso_lo,
            iso_hi,
            sign_below,
            floor: BigInt::zero(),
            levels: (0..LEVELS).map(|_| OnceLock::new()).collect(),
        };
        root.floor = root.certified_floor();
        root
    }

    pub(crate) fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub(crate) fn isolating_interval(&self) -> (&BigRational, &BigRational) {
        (&self.iso_lo, &self.iso_hi)
    }

    /// Exact floor of the root, via sign tests at consecutive integers.
    pub(crate) fn floor(&self) -> &BigInt {
        &self.floor
    }

    fn certified_floor(&self) -> BigInt {
        let mut k = self.iso_lo.floor().to_integer();
        while self.is_below(&BigRational::from_integer(&k + 1)) {
            k += 1;
        }
        k
    }

    /// Whether the rational t is strictly below the root.
    fn is_below(&self, t: &BigRational) -> bool {
        if *t <= self.iso_lo {
            return true;
        }
        if *t >= self.iso_hi {
            return false;
        }
        self.minpoly.sign_at(t) == self.sign_below
    }

    fn is_below_dyadic(&self, n: &BigInt, bits: u64) -> bool {
        let t = BigRational::new(n.clone(), BigInt::one() << bits);
        if t <= self.iso_lo {
            return true;
        }
        if t >= self.iso_hi {
            return false;
        }
        self.minpoly.sign_at_dyadic(n, bits) == self.sign_below
    }

    fn level(&self, j: usize) -> &Level {
        self.levels[j].get_or_init(|| {
            let (start_bits, mut floor) = if j == 0 {
                (0, self.floor.clone())
            } else {
                let prev = self.level(j - 1);
                (prev.bits, prev.floor.clone())
            };
            let bits = BASE_BITS << j;
            for b in start_bits + 1..=bits {
                let mid = (&floor << 1u32) + 1u32;
                floor = if self.is_below_dyadic(&mid, b) { mid } else { mid - 1u32 };
            }
            self.make_level(bits, floor)
        })
    }

    fn make_level(&self, bits: u64, floor: BigInt) -> Level {
        let d = self.degree();
        let ceil = &floor + 1u32;
        let mut lo_pows = Vec::with_capacity(d);
        let mut hi_pows = Vec::with_capacity(d);
        let (mut lp, mut hp) = (BigInt::one(), BigInt::one());
        for i in 0..d {
            let shift = bits * (d - 1 - i) as u64;
            lo_pows.push(&lp << shift);
            hi_pows.push(&hp << shift);
            lp *= &floor;
            hp *= &ceil;
        }
        Level {
            bits,
            floor,
            lo_pows,
            hi_pows,
        }
    }

    /// Bracket [lo, hi] of sum c_i b^i, scaled by 2^(bits*(d-1)), at level j.
    fn bracket(&self, coeffs: &[BigInt], j: usize) -> (BigInt, BigInt, u64) {
        let level = self.level(j);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // b > 1 > 0, so b^i lies in [lo_pows[i], hi_pows[i]] (scaled).
            if c.sign() == num_bigint::Sign::Plus {
                lo += c * &level.lo_pows[i];
                hi += c * &level.hi_pows[i];
            } else {
                lo += c * &level.hi_pows[i];
                hi += c * &level.lo_pows[i];
            }
        }
        let scale = level.bits * (self.degree().max(1) - 1) as u64;
        (lo, hi, scale)
    }

    /// Exact sign of sum c_i b^i (i < degree).
    pub(crate) fn sign(&self, coeffs: &[BigInt]) -> Ordering {
        if coeffs.iter().all(Zero::is_zero) {
            return Ordering::Equal;
        }
        if coeffs.len() <= 1 || coeffs[1..].iter().all(Zero::is_zero) {
            return coeffs[0].cmp(&BigInt::zero());
        }
        let mut j = 0;
        loop {
            let (lo, hi, _) = self.bracket(coeffs, j);
            if lo.sign() == num_bigint::Sign::Plus {
                return Ordering::Greater;
            }
            if hi.sign() == num_bigint::Sign::Minus {
                return Ordering::Less;
            }
            j += 1;
            assert!(j < LEVELS, "precision ladder exhausted deciding a sign");
        }
    }

    /// Exact floor of (sum c_i b^i) / den with den > 0.
    pub(crate) fn floor_of(&self, coeffs: &[BigInt], den: &BigInt) -> BigInt {
        if coeffs.len() <= 1 || coeffs[1..].iter().all(Zero::is_zero) {
            let c0 = coeffs.first().cloned().unwrap_or_default();
            return c0.div_floor(den);
        }
        let mut j = 0;
        loop {
            let (lo, hi, scale) = self.bracket(coeffs, j);
            let denom = den << scale;
            let f_lo = lo.div_floor(&denom);
            let f_hi = hi.div_floor(&denom);
            if f_lo == f_hi {
                return f_lo;
            }
            if &f_hi - &f_lo == BigInt::one() {
                // Decide exactly whether value >= f_hi.
                let mut shifted = coeffs.to_vec();
                shifted[0] -= &f_hi * den;
                return match self.sign(&shifted) {
                    Ordering::Less => f_lo,
                    _ => f_hi,
                };
            }
            j += 1;
            assert!(j < LEVELS, "precision ladder exhausted deciding a floor");
        }
    }

    /// Midpoint approximation of (sum c_i b^i) / den as f64.
    pub(crate) fn approx(&self, coeffs: &[BigInt], den: &BigInt) -> f64 {
        let (lo, hi, scale) = self.bracket(coeffs, 0);
        let mid = BigRational::new(lo + hi, den << (scale + 1));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Dyadic lower bracket floor(b * 2^bits) at the first level with at least `bits` bits.
    pub(crate) fn dyadic_lower(&self, bits: u64) -> (BigInt, u64) {
        let j = (0..LEVELS)
            .find(|&j| (BASE_BITS << j) >= bits)
            .unwrap_or(LEVELS - 1);
        let level = self.level(j);
        (level.floor.clone(), level.bits)
    }

    pub(crate) fn to_f64(&self) -> f64 {
        let (n, bits) = self.dyadic_lower(64);
        BigRational::new(n, BigInt::one() << bits)
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> RealRoot {
        let p = IntPoly::from_descending_i64(&[1, -1, -1]);
        RealRoot::new(
            p,
            BigRational::from_integer(1.into()),
            BigRational::from_integer(2.into()),
        )
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn floor_and_approximation() {
        let r = golden();
        assert_eq!(*r.floor(), BigInt::one());
        assert!((r.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        // b - 1 = 1/b in (0, 1)
        assert_eq!(r.floor_of(&ints(&[-1, 1]), &BigInt::one()), BigInt::zero());
        // (3b)/2 ~ 2.427
        assert_eq!(r.floor_of(&ints(&[0, 3]), &BigInt::from(2)), BigInt::from(2));
        // -b ~ -1.618
        assert_eq!(r.floor_of(&ints(&[0, -1]), &BigInt::one()), BigInt::from(-2));
    }

    #[test]
    fn signs_need_refinement() {
        let r = golden();
        // F_{n+1} - F_n * b = (-1/b)^n, so cancellation grows with n.
        let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
        for n in 1..200 {
            let expect = if n % 2 == 0 { Ordering::Greater } else { Ordering::Less };
            assert_eq!(r.sign(&[b.clone(), -a.clone()]), expect, "n = {n}");
            let next = &a + &b;
            a = b;
            b = next;
        }
    }

    #[test]
    fn sign_of_zero_and_rationals() {
        let r = golden();
        assert_eq!(r.sign(&ints(&[0, 0])), Ordering::Equal);
        assert_eq!(r.sign(&ints(&[-3, 0])), Ordering::Less);
        assert_eq!(r.sign(&ints(&[-1, -1])), Ordering::Less);
    }
}
