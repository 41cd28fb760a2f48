//! Integer and rational univariate polynomials: evaluation, Sturm sequences,
//! real root isolation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::text::{format_monomials, parse_monomials};

/// Polynomial with integer coefficients, stored in ascending order with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_ascending(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_descending(coeffs: Vec<BigInt>) -> Self {
        Self::from_ascending(coeffs.into_iter().rev().collect())
    }

    pub fn from_descending_i64(coeffs: &[i64]) -> Self {
        Self::from_descending(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn ascending(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of p(n / 2^shift), computed exactly as the sign of 2^(shift*deg) p(n / 2^shift).
    pub fn sign_at_dyadic(&self, n: &BigInt, shift: u64) -> Ordering {
        let d = self.degree();
        let mut h = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            h = h * n + (c << (shift * (d - i) as u64));
        }
        h.sign_ord()
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let d = self.degree();
        let (n, q) = (x.numer(), x.denom());
        // q > 0, so sign(q^d p(n/q)) = sign(p(x)).
        let mut qpows = vec![BigInt::one()];
        for _ in 0..d {
            let next = qpows.last().unwrap() * q;
            qpows.push(next);
        }
        let mut h = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            h = h * n + c * &qpows[d - i];
        }
        h.sign_ord()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_ascending(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::from_ascending(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_ascending(out)
    }

    /// Exact division by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        debug_assert!(divisor.is_monic());
        let dd = divisor.degree();
        if self.degree() < dd {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let t = rem[i + dd].clone();
            if t.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &t * c;
            }
            quot[i] = t;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::from_ascending(quot))
        } else {
            None
        }
    }

    pub(crate) fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Bracketed descending coefficient list, e.g. `[1,-3,1]`.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.descending().iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Cauchy bound: every complex root has modulus < 1 + max|c_i| / |c_d|.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigRational::one() + BigRational::new(max, lead)
    }

    /// Pairwise-disjoint open intervals `(lo, hi)`, each containing exactly one
    /// real root, in increasing order. Requires a square-free polynomial.
    pub fn isolate_real_roots(&self) -> Vec<(BigRational, BigRational)> {
        if self.degree() == 0 {
            return vec![];
        }
        let sturm = self.to_rat().sturm_sequence();
        let b = self.cauchy_bound();
        let mut lo = -b.clone();
        let mut hi = b;
        // Bound endpoints must not be roots.
        while self.sign_at(&lo) == Ordering::Equal {
            lo -= BigRational::one();
        }
        while self.sign_at(&hi) == Ordering::Equal {
            hi += BigRational::one();
        }
        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let n = sturm_count(&sturm, &a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push((a, b));
                continue;
            }
            let mid = self.split_point(&a, &b);
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// A point strictly inside (a, b) where the polynomial does not vanish.
    pub(crate) fn split_point(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let width = b - a;
        for den in 2i64.. {
            for num in 1..den {
                let p = a + &width * BigRational::new(num.into(), den.into());
                if self.sign_at(&p) != Ordering::Equal {
                    return p;
                }
            }
        }
        unreachable!("a nonzero polynomial has finitely many roots")
    }

    /// Number of distinct real roots in (a, b]; endpoints must not be roots.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        sturm_count(&self.to_rat().sturm_sequence(), a, b)
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_monomials(&self.coeffs, "x"))
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Accepts `[1,-3,1]` (descending) or `x^2-3*x+1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("invalid coefficient {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(IntPoly::from_descending(coeffs));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (c, e) in parse_monomials(s, &["x"])? {
            if !c.is_integer() {
                return Err(Error::Parse(format!("non-integer coefficient {c}")));
            }
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c.to_integer();
        }
        Ok(IntPoly::from_ascending(coeffs))
    }
}

/// Polynomial with rational coefficients, ascending, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly {
    pub(crate) coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub(crate) fn rem(&self, divisor: &RatPoly) -> RatPoly {
        assert!(!divisor.is_zero());
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.coeffs.last().unwrap().clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let t = &rem[top] / &lead;
            if !t.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + j;
                    rem[idx] = &rem[idx] - &t * c;
                }
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        RatPoly::new(rem)
    }

    fn sign_at(&self, x: &BigRational) -> Ordering {
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c);
        v.cmp(&BigRational::zero())
    }

    pub(crate) fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(RatPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        seq
    }
}

fn sign_changes(seq: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|p| p.sign_at(x))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

pub(crate) fn sturm_count(seq: &[RatPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_formats_round_trip() {
        let p: IntPoly = "[1,-3,1]".parse().unwrap();
        let q: IntPoly = "x^2-3*x+1".parse().unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_string(), "x^2-3*x+1");
        assert_eq!(p.to_list_string(), "[1,-3,1]");
        assert_eq!(p.to_string().parse::<IntPoly>().unwrap(), p);
        assert_eq!(p.to_list_string().parse::<IntPoly>().unwrap(), p);
        let c: IntPoly = "x^3 + x^2 - 1".parse().unwrap();
        assert_eq!(c.descending(), vec![1.into(), 1.into(), BigInt::zero(), (-1).into()]);
        assert!("x^2-1/2".parse::<IntPoly>().is_err());
    }

    #[test]
    fn sturm_counts_golden_roots() {
        let p = IntPoly::from_descending_i64(&[1, -1, -1]);
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 2);
        // largest root is in (1, 2)
        let (lo, hi) = &roots[1];
        assert!(*hi > BigRational::one());
        assert_eq!(p.count_roots(&BigRational::one(), &BigRational::from_integer(2.into())), 1);
        assert!(lo < hi);
    }

    #[test]
    fn isolates_three_real_roots() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let p = IntPoly::from_descending_i64(&[1, -6, 11, -6]);
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 3);
        for (k, (lo, hi)) in roots.iter().enumerate() {
            let r = BigRational::from_integer((k as i64 + 1).into());
            assert!(lo < &r && &r < hi);
        }
    }

    #[test]
    fn exact_monic_division() {
        let p = IntPoly::from_descending_i64(&[1, -6, 11, -6]);
        let f = IntPoly::from_descending_i64(&[1, -1]);
        let q = p.div_exact_monic(&f).unwrap();
        assert_eq!(q, IntPoly::from_descending_i64(&[1, -5, 6]));
        assert!(p.div_exact_monic(&IntPoly::from_descending_i64(&[1, 5])).is_none());
    }

    #[test]
    fn dyadic_sign() {
        let p = IntPoly::from_descending_i64(&[1, -1, -1]);
        // p(3/2) = -1/4 < 0, p(7/4) = 5/16 > 0
        assert_eq!(p.sign_at_dyadic(&BigInt::from(3), 1), Ordering::Less);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(7), 2), Ordering::Greater);
    }
}
