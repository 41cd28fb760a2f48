//! Digit words, eventually periodic digit strings, the alternate order and
//! admissibility.
//!
//! Strings are normalized eagerly: the period is primitive and the preperiod
//! is as short as possible, so structural equality is equality of the
//! infinite sequences.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::algebraic::QuadFamily;
use crate::error::{Error, Result};

/// A finite digit sequence, most significant first.
pub type DigitWord = Vec<u32>;

/// `preperiod (period)^ω`, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EventuallyPeriodicString {
    preperiod: DigitWord,
    period: DigitWord,
}

impl EventuallyPeriodicString {
    pub fn new(preperiod: DigitWord, period: DigitWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("period must be nonempty".into()));
        }
        let mut s = EventuallyPeriodicString { preperiod, period };
        s.normalize();
        Ok(s)
    }

    /// `(w)^ω`
    pub fn periodic(word: DigitWord) -> Result<Self> {
        Self::new(Vec::new(), word)
    }

    /// `w 0^ω`
    pub fn finite(word: DigitWord) -> Self {
        Self::new(word, vec![0]).expect("nonempty period")
    }

    pub fn zero() -> Self {
        Self::finite(Vec::new())
    }

    fn normalize(&mut self) {
        let n = self.period.len();
        if let Some(p) = (1..n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.period[i] == self.period[i - p])) {
            self.period.truncate(p);
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("nonempty") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// Ends in `0^ω`.
    pub fn is_finite(&self) -> bool {
        self.period == [0]
    }

    /// Digit at 0-based index i.
    pub fn digit(&self, i: usize) -> u32 {
        let p = self.preperiod.len();
        if i < p {
            self.preperiod[i]
        } else {
            self.period[(i - p) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> DigitWord {
        (0..len).map(|i| self.digit(i)).collect()
    }

    /// The string with its first i digits removed.
    pub fn suffix(&self, i: usize) -> Self {
        let p = self.preperiod.len();
        if i <= p {
            return EventuallyPeriodicString {
                preperiod: self.preperiod[i..].to_vec(),
                period: self.period.clone(),
            };
        }
        let mut period = self.period.clone();
        let shift = (i - p) % period.len();
        period.rotate_left(shift);
        EventuallyPeriodicString {
            preperiod: Vec::new(),
            period,
        }
    }

    /// Every distinct suffix, including the string itself.
    pub fn suffixes(&self) -> impl Iterator<Item = Self> + '_ {
        (0..self.preperiod.len() + self.period.len()).map(move |i| self.suffix(i))
    }

    /// `word · self`
    pub fn prepend(&self, word: &[u32]) -> Self {
        let mut pre = word.to_vec();
        pre.extend_from_slice(&self.preperiod);
        Self::new(pre, self.period.clone()).expect("nonempty period")
    }

    pub fn max_digit(&self) -> u32 {
        self.preperiod
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Compact form such as `02(2211)^w`; digits above 9 are comma separated.
    pub fn to_omega_string(&self) -> String {
        let join = |w: &[u32]| {
            let sep = if w.iter().any(|&d| d > 9) { "," } else { "" };
            w.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
        };
        format!("{}({})^w", join(&self.preperiod), join(&self.period))
    }
}

impl fmt::Display for EventuallyPeriodicString {
    /// `0,2|2,2,1,1` for 02(2211)^ω; `|0` for 0^ω.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[u32]| w.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.preperiod), join(&self.period))
    }
}

pub fn parse_word(s: &str) -> Result<DigitWord> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|d| {
            d.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad digit {d:?}")))
        })
        .collect()
}

impl FromStr for EventuallyPeriodicString {
    type Err = Error;

    /// `pre|period`, or a bare word meaning `word 0^ω`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('|') {
            Some((pre, per)) => {
                let period = parse_word(per)?;
                if period.is_empty() {
                    return Err(Error::Parse(format!("empty period in {s:?}")));
                }
                Self::new(parse_word(pre)?, period)
            }
            None => Ok(Self::finite(parse_word(s)?)),
        }
    }
}

/// Alternate order: at the first differing 1-based index j, u < v iff
/// (-1)^j (v_j - u_j) > 0.
pub fn alt_compare(u: &EventuallyPeriodicString, v: &EventuallyPeriodicString) -> Ordering {
    if u == v {
        return Ordering::Equal;
    }
    let window = u.preperiod.len() + v.preperiod.len() + u.period.len().lcm(&v.period.len());
    for i in 0..window {
        let (a, b) = (u.digit(i), v.digit(i));
        if a != b {
            // i is 0-based, so j = i + 1 is odd when i is even
            let natural = a.cmp(&b);
            return if i % 2 == 0 { natural.reverse() } else { natural };
        }
    }
    unreachable!("normalized strings equal on the comparison window are equal")
}

/// The two bounds of the admissibility condition for one base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceStrings {
    /// Expansion of the left endpoint; attained.
    pub lower: EventuallyPeriodicString,
    /// Limit of expansions approaching the right endpoint; never attained.
    pub upper_limit: EventuallyPeriodicString,
    pub digit_bound: u32,
}

/// lower ⪯ every suffix ≺ upper_limit, with every digit at most the bound.
pub fn is_admissible(s: &EventuallyPeriodicString, refs: &ReferenceStrings) -> bool {
    if s.max_digit() > refs.digit_bound {
        return false;
    }
    s.suffixes().all(|t| {
        alt_compare(&refs.lower, &t) != Ordering::Greater
            && alt_compare(&t, &refs.upper_limit) == Ordering::Less
    })
}

/// Admissibility for b^2 = m b - 1 (digits 0..m-1, m >= 3) and b^2 = m b + 1
/// (digits 0..m, m >= 1) by the closed-form digit conditions.
pub fn is_admissible_quadratic(s: &EventuallyPeriodicString, family: QuadFamily, m: u32) -> Result<bool> {
    let max = match family {
        QuadFamily::Minus => {
            if m < 3 {
                return Err(Error::OutOfRange(format!("minus family condition needs m >= 3, got {m}")));
            }
            m - 1
        }
        QuadFamily::Plus => {
            if m < 1 {
                return Err(Error::OutOfRange(format!("plus family needs m >= 1, got {m}")));
            }
            m
        }
    };
    if let Some(&d) = s.preperiod.iter().chain(&s.period).find(|&&d| d > max) {
        return Err(Error::DigitOutOfAlphabet { digit: d, max });
    }
    let span = s.preperiod.len() + s.period.len();
    Ok(match family {
        QuadFamily::Minus => {
            let forbidden_tail = EventuallyPeriodicString::new(vec![0], vec![m - 1, 1]).expect("nonempty");
            (0..span).all(|i| s.digit(i) != m - 1 || s.digit(i + 1) >= 1)
                && s.suffixes().all(|t| t != forbidden_tail)
        }
        QuadFamily::Plus => {
            let forbidden_tail = EventuallyPeriodicString::new(vec![0, m], vec![m - 1]).expect("nonempty");
            (0..span).all(|i| plus_run_ok(s, i, m, span))
                && s.suffixes().all(|t| t != forbidden_tail)
        }
    })
}

/// Checks the run of (m-1)s following an m at position i: an even run may not
/// end in a digit <= m-2, an odd run may not end in m.
fn plus_run_ok(s: &EventuallyPeriodicString, i: usize, m: u32, span: usize) -> bool {
    if s.digit(i) != m {
        return true;
    }
    let mut run = 0;
    // A window of `span` digits covers a whole period, so a longer run is infinite.
    while s.digit(i + 1 + run) == m - 1 {
        run += 1;
        if run > span {
            return true;
        }
    }
    let next = s.digit(i + 1 + run);
    if run % 2 == 0 {
        m < 2 || next > m - 2
    } else {
        next != m
    }
}

/// Length of the longest block of zeros; the string must not end in 0^ω.
pub fn longest_zero_run(s: &EventuallyPeriodicString) -> Result<usize> {
    if s.period.iter().all(|&d| d == 0) {
        return Err(Error::Hypothesis("string ends in 0^w".into()));
    }
    let len = s.preperiod.len() + 2 * s.period.len();
    let (mut best, mut cur) = (0, 0);
    for i in 0..len {
        if s.digit(i) == 0 {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    Ok(best)
}
