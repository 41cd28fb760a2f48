//! The transformation T(x) = -b x - floor(-b x + b/(b+1)) on [-b/(b+1), 1/(b+1)),
//! expansions with exact cycle detection, and evaluation of digit strings.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebraic::{BaseContext, FieldElement};
use crate::digits::{self, DigitWord, EventuallyPeriodicString, ReferenceStrings};
use crate::error::{Error, Result};

/// Default bound on the number of orbit states visited by one expansion.
pub const DEFAULT_BUDGET: usize = 100_000;

/// x = sum_{i>=1} d_i (-b)^(n+1-i) with n the leading exponent.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub leading_exponent: i64,
    pub digits: EventuallyPeriodicString,
    pub value: FieldElement,
}

impl Expansion {
    /// Digits with negative exponent are all zero.
    pub fn is_integer(&self) -> bool {
        let n = self.leading_exponent;
        self.digits.is_finite() && (self.digits.preperiod().len() as i64) <= n + 1
    }

    /// Digit at exponent k.
    pub fn digit_at(&self, k: i64) -> u32 {
        let i = self.leading_exponent - k;
        if i < 0 {
            0
        } else {
            self.digits.digit(i as usize)
        }
    }
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    leading_exponent: i64,
    preperiod: &'a [u32],
    period: &'a [u32],
    purely_periodic: bool,
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            leading_exponent: self.leading_exponent,
            preperiod: self.digits.preperiod(),
            period: self.digits.period(),
            purely_periodic: self.digits.is_purely_periodic(),
        }
        .serialize(s)
    }
}

fn check_interval(x: &FieldElement) -> Result<()> {
    if x.base().in_interval(x) {
        Ok(())
    } else {
        Err(Error::OutsideInterval(x.to_string()))
    }
}

fn step_unchecked(x: &FieldElement) -> (u32, FieldElement) {
    let base = x.base();
    let t = x.mul_neg_beta();
    let s = t.raw.add(base.shift_constant());
    let d = base.root().floor_of(&s.num, &s.den);
    let next = t.with(t.raw.sub_int(&d));
    let d = d.to_u32().expect("digit is in 0..=floor(b)");
    (d, next)
}

/// One application of the transformation: (digit, T(x)).
pub fn step(x: &FieldElement) -> Result<(u32, FieldElement)> {
    check_interval(x)?;
    Ok(step_unchecked(x))
}

/// The first `len` digits of the expansion of x, without cycle detection.
pub fn expand_prefix(x: &FieldElement, len: usize) -> Result<DigitWord> {
    check_interval(x)?;
    let mut cur = x.clone();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let (d, next) = step_unchecked(&cur);
        out.push(d);
        cur = next;
    }
    Ok(out)
}

/// Expansion of x in the interval, read off the first repeated orbit state.
pub fn expand(x: &FieldElement, budget: usize) -> Result<EventuallyPeriodicString> {
    check_interval(x)?;
    let mut seen = HashMap::new();
    let mut digits = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(&k) = seen.get(&cur.raw) {
            let period = digits.split_off(k);
            return EventuallyPeriodicString::new(digits, period);
        }
        if seen.len() >= budget {
            return Err(Error::BudgetExhausted(budget));
        }
        seen.insert(cur.raw.clone(), digits.len());
        let (d, next) = step_unchecked(&cur);
        digits.push(d);
        cur = next;
    }
}

/// Expansion of an arbitrary element: the least n with x/(-b)^(n+1) in the
/// open interval, so the first digit is nonzero.
pub fn expand_real(x: &FieldElement, budget: usize) -> Result<Expansion> {
    let base = x.base();
    if x.is_zero() {
        return Ok(Expansion {
            leading_exponent: 0,
            digits: EventuallyPeriodicString::zero(),
            value: x.clone(),
        });
    }
    let inv_neg_beta = -&base.beta().inverse().expect("b != 0");
    let mut n: i64 = -1;
    let mut y = x.clone();
    if base.in_open_interval(&y) {
        loop {
            let up = y.mul_neg_beta();
            if !base.in_open_interval(&up) {
                break;
            }
            y = up;
            n -= 1;
        }
    } else {
        // The left endpoint itself is skipped: l/(-b) = r is outside, and
        // l/b^2 lies inside with expansion 1 d(l).
        while !base.in_open_interval(&y) {
            y = &y * &inv_neg_beta;
            n += 1;
        }
    }
    let digits = expand(&y, budget)?;
    debug_assert_ne!(digits.digit(0), 0);
    Ok(Expansion {
        leading_exponent: n,
        digits,
        value: x.clone(),
    })
}

/// sum_i w_i (-b)^(len-1-i), the value of a word read as a (-b)-integer.
pub fn evaluate_word(word: &[u32], base: &BaseContext) -> FieldElement {
    let mut acc = base.zero();
    for &d in word {
        acc = acc.mul_neg_beta().add_int(i64::from(d));
    }
    acc
}

/// The value of sum_{i>=1} s_i (-b)^(n+1-i).
pub fn evaluate(s: &EventuallyPeriodicString, leading_exponent: i64, base: &BaseContext) -> FieldElement {
    let p = s.preperiod().len() as i64;
    let big_n = s.period().len() as i64;
    let neg_beta = -&base.beta();
    let pre = &evaluate_word(s.preperiod(), base) * &neg_beta.pow(-p).expect("b != 0");
    let z = evaluate_word(s.period(), base);
    let denom = neg_beta.pow(big_n).expect("b != 0").add_int(-1);
    let tail = &(&z * &neg_beta.pow(-p).expect("b != 0")) * &denom.inverse().expect("(-b)^N != 1");
    &(&pre + &tail) * &neg_beta.pow(leading_exponent + 1).expect("b != 0")
}

/// Expansion of the left endpoint and the limit string at the right
/// endpoint, cached per base once computed.
pub fn boundary_strings(base: &BaseContext, budget: usize) -> Result<ReferenceStrings> {
    if let Some(r) = base.reference_cache().get() {
        return Ok(r.clone());
    }
    let lower = match expand(&base.left_endpoint(), budget) {
        Ok(s) => s,
        Err(Error::BudgetExhausted(b)) => return Err(Error::NotYrrap(b)),
        Err(e) => return Err(e),
    };
    let upper_limit = if lower.is_purely_periodic() && lower.period().len() % 2 == 1 {
        // (d_1..d_q)^ω with q odd: the limit is (0 d_1 .. d_{q-1} (d_q - 1))^ω
        let q = lower.period();
        let mut w = vec![0];
        w.extend_from_slice(&q[..q.len() - 1]);
        let last = q[q.len() - 1]
            .checked_sub(1)
            .ok_or_else(|| Error::Inconsistent(format!("left endpoint expansion {lower} ends its odd period in 0")))?;
        w.push(last);
        EventuallyPeriodicString::periodic(w)?
    } else {
        lower.prepend(&[0])
    };
    let refs = ReferenceStrings {
        lower,
        upper_limit,
        digit_bound: base.digit_bound(),
    };
    Ok(base.reference_cache().get_or_init(|| refs).clone())
}

/// Admissibility against the base's own reference strings.
pub fn is_admissible_in(s: &EventuallyPeriodicString, base: &BaseContext, budget: usize) -> Result<bool> {
    Ok(digits::is_admissible(s, &boundary_strings(base, budget)?))
}

/// Compares two elements through their expansions (both must lie in the interval).
pub fn compare_by_expansion(x: &FieldElement, y: &FieldElement, budget: usize) -> Result<Ordering> {
    Ok(digits::alt_compare(&expand(x, budget)?, &expand(y, budget)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::QuadFamily;

    fn minus(m: u32) -> BaseContext {
        BaseContext::quadratic(QuadFamily::Minus, m).unwrap()
    }

    fn plus(m: u32) -> BaseContext {
        BaseContext::quadratic(QuadFamily::Plus, m).unwrap()
    }

    fn eps(s: &str) -> EventuallyPeriodicString {
        s.parse().unwrap()
    }

    #[test]
    fn step_examples() {
        let b = plus(2);
        assert_eq!(step(&b.zero()).unwrap(), (0, b.zero()));
        let (d, next) = step(&b.from_ratio(-1, 2)).unwrap();
        assert_eq!(d, 1);
        assert_eq!(next, b.parse_element("1/2*b - 1").unwrap());

        let b = minus(3);
        let (d, next) = step(&b.left_endpoint()).unwrap();
        assert_eq!(d, 2);
        let beta = b.beta();
        let expected = &beta.add_int(-3) * &beta.add_int(1).inverse().unwrap();
        assert_eq!(next, expected);
        assert!(matches!(step(&b.right_endpoint()), Err(Error::OutsideInterval(_))));
    }

    #[test]
    fn expand_examples() {
        let b = plus(1);
        assert_eq!(expand(&b.from_ratio(1, 3), DEFAULT_BUDGET).unwrap(), eps("0,1|0,0,1,1,1,1,0,0"));
        let b = minus(3);
        assert_eq!(expand(&b.from_ratio(1, 4), DEFAULT_BUDGET).unwrap(), eps("|0,2,1,1,1,0"));
        let b = plus(2);
        assert_eq!(expand(&b.from_ratio(-1, 2), DEFAULT_BUDGET).unwrap(), eps("|1,0"));
        assert_eq!(
            expand(&plus(1).from_ratio(1, 3), 3),
            Err(Error::BudgetExhausted(3))
        );
    }

    #[test]
    fn expand_real_examples() {
        let b = minus(3);
        let e = expand_real(&b.one(), DEFAULT_BUDGET).unwrap();
        assert_eq!((e.leading_exponent, e.digits.clone()), (0, eps("1")));
        let sq = &b.beta() * &b.beta();
        let e = expand_real(&sq, DEFAULT_BUDGET).unwrap();
        assert_eq!((e.leading_exponent, e.digits.clone()), (2, eps("1,0,0")));
        assert!(e.is_integer());

        let g = plus(1);
        let e = expand_real(&g.beta(), DEFAULT_BUDGET).unwrap();
        assert_eq!((e.leading_exponent, e.digits.clone()), (2, eps("|1")));
        assert!(!e.is_integer());

        let z = expand_real(&g.zero(), DEFAULT_BUDGET).unwrap();
        assert_eq!(z.digits, EventuallyPeriodicString::zero());
    }

    #[test]
    fn left_endpoint_multiples() {
        let b = minus(3);
        let l = b.left_endpoint();
        for k in 0..4i64 {
            let x = &l * &(-&b.beta()).pow(k).unwrap();
            let e = expand_real(&x, DEFAULT_BUDGET).unwrap();
            // l/(-b) = r is outside, so the expansion is 1 d(l) one place higher
            assert_eq!(e.leading_exponent, k + 1);
            assert_eq!(e.digits, eps("1|2,1"));
            assert_eq!(evaluate(&e.digits, e.leading_exponent, &b), x);
        }
    }

    #[test]
    fn evaluate_inverts_expand() {
        let b = plus(1);
        let x = b.from_ratio(1, 3);
        let s = expand(&x, DEFAULT_BUDGET).unwrap();
        assert_eq!(evaluate(&s, -1, &b), x);
        let y = b.parse_element("7/5*b - 3").unwrap();
        let e = expand_real(&y, DEFAULT_BUDGET).unwrap();
        assert_eq!(evaluate(&e.digits, e.leading_exponent, &b), y);
    }

    #[test]
    fn boundary_examples() {
        let r = boundary_strings(&minus(3), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.lower, r.upper_limit), (eps("|2,1"), eps("0|2,1")));
        let r = boundary_strings(&plus(2), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.lower, r.upper_limit), (eps("2|1"), eps("0,2|1")));
        let r = boundary_strings(&plus(1), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.lower, r.upper_limit), (eps("1"), eps("0,1")));
    }

    #[test]
    fn word_values() {
        let b = plus(2);
        assert_eq!(evaluate_word(&[1, 0], &b), -&b.beta());
        assert_eq!(evaluate_word(&[], &b), b.zero());
    }
}
