//! Closed-form criteria for the two quadratic families b^2 = m b - 1 and
//! b^2 = m b + 1, decided through the exact conjugate z' of z.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebraic::{quadratic_conjugate, BaseContext, FieldElement, QuadFamily};
use crate::error::{Error, Result};

/// Default number of recurrence terms before giving up.
pub const DEFAULT_GK_CAP: usize = 1000;

#[derive(Clone, Debug)]
pub struct QuadraticConstants {
    pub m: u32,
    pub family: QuadFamily,
    /// b(b-1)/(b+1), minus family only.
    pub h: Option<FieldElement>,
    /// h / b^2, minus family only.
    pub k: Option<FieldElement>,
}

pub fn family_of(base: &BaseContext) -> Result<(QuadFamily, u32)> {
    base.family().quadratic().ok_or(Error::FamilyMismatch {
        expected: "minus or plus".into(),
    })
}

pub fn quad_constants(m: u32, family: QuadFamily) -> Result<QuadraticConstants> {
    quad_constants_in(&BaseContext::quadratic(family, m)?)
}

pub fn quad_constants_in(base: &BaseContext) -> Result<QuadraticConstants> {
    let (family, m) = family_of(base)?;
    let (h, k) = match family {
        QuadFamily::Minus => {
            let beta = base.beta();
            let h = &(&beta * &beta.add_int(-1)) * &beta.add_int(1).inverse()?;
            let k = &h * &(&beta * &beta).inverse()?;
            (Some(h), Some(k))
        }
        QuadFamily::Plus => (None, None),
    };
    Ok(QuadraticConstants { m, family, h, k })
}

/// An interval of real values with elements of Q(b) as endpoints.
#[derive(Clone, Debug)]
pub struct Window {
    pub lo: FieldElement,
    pub lo_closed: bool,
    pub hi: FieldElement,
}

impl Window {
    /// lo (<= or <) v < hi
    pub fn contains(&self, v: &FieldElement) -> bool {
        let low = v.cmp_value(&self.lo);
        let low_ok = low == Ordering::Greater || (self.lo_closed && low == Ordering::Equal);
        low_ok && v.cmp_value(&self.hi) == Ordering::Less
    }
}

/// The set of conjugates z' of (-b)-integers z: (-h/b, h), or [0, b) in the
/// plus family ([0, b^2) when m = 1).
pub fn zmb_window(base: &BaseContext) -> Result<Window> {
    let c = quad_constants_in(base)?;
    Ok(match c.family {
        QuadFamily::Minus => {
            let h = c.h.expect("minus family has h");
            Window {
                lo: -&(&h * &base.beta().inverse()?),
                lo_closed: false,
                hi: h,
            }
        }
        QuadFamily::Plus => Window {
            lo: base.zero(),
            lo_closed: true,
            hi: plus_window_end(base, c.m),
        },
    })
}

/// sup z' over (-b)-integers: b for m >= 2, where a last digit m is
/// forbidden. For m = 1 the word may end in ..11, so the sup is
/// sum_i b^-i = b^2.
fn plus_window_end(base: &BaseContext, m: u32) -> FieldElement {
    if m == 1 {
        &base.beta() * &base.beta()
    } else {
        base.beta()
    }
}

fn integral_conjugate(z: &FieldElement) -> Result<FieldElement> {
    if !z.is_integral() {
        return Err(Error::NonIntegral(z.to_string()));
    }
    quadratic_conjugate(z).ok_or(Error::FamilyMismatch {
        expected: "minus or plus".into(),
    })
}

/// Whether z in Z[b] has an expansion using no negative powers of -b.
pub fn membership_zmb(z: &FieldElement) -> Result<bool> {
    let window = zmb_window(z.base())?;
    Ok(window.contains(&integral_conjugate(z)?))
}

fn require_plus(base: &BaseContext) -> Result<()> {
    match family_of(base)? {
        (QuadFamily::Plus, _) => Ok(()),
        _ => Err(Error::FamilyMismatch {
            expected: "plus".into(),
        }),
    }
}

/// Plus family: whether z lies in (-b) Z_{-b}, i.e. z' in [0, 1) (m >= 2)
/// or [0, b) (m = 1); (-b)' = 1/b scales the window.
pub fn membership_neg_beta_zmb(z: &FieldElement) -> Result<bool> {
    require_plus(z.base())?;
    let zc = integral_conjugate(z)?;
    let (_, m) = family_of(z.base())?;
    let end = &plus_window_end(z.base(), m) * &z.base().beta().inverse()?;
    Ok(zc.sign() != Ordering::Less && zc.cmp_value(&end) == Ordering::Less)
}

/// Plus family: whether z in Z[b] has a finite expansion, i.e. z' >= 0.
pub fn membership_fin_plus(z: &FieldElement) -> Result<bool> {
    require_plus(z.base())?;
    Ok(integral_conjugate(z)?.sign() != Ordering::Less)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkVerdict {
    pub finite: bool,
    /// First k with G_k >= 0 and G_{k+1} >= 0.
    pub witness_index: Option<usize>,
    /// G_0, G_1, ... as far as computed.
    #[serde(skip)]
    pub sequence: Vec<BigInt>,
}

/// Finiteness of a + b(-b) in the plus family via G_0 = b, G_1 = a,
/// G_{k+2} = m G_{k+1} + G_k.
pub fn gk_recurrence(a: i64, b: i64, m: u32, cap: usize) -> Result<GkVerdict> {
    if m < 1 {
        return Err(Error::OutOfRange(format!("plus family needs m >= 1, got {m}")));
    }
    let m = BigInt::from(m);
    let mut seq = vec![BigInt::from(b), BigInt::from(a)];
    for k in 0..cap {
        let (g0, g1) = (&seq[k], &seq[k + 1]);
        let (neg0, neg1) = (g0 < &BigInt::zero(), g1 < &BigInt::zero());
        if !neg0 && !neg1 {
            return Ok(GkVerdict {
                finite: true,
                witness_index: Some(k),
                sequence: seq,
            });
        }
        if neg0 && neg1 {
            // m >= 1: two consecutive negatives keep every later term negative
            return Ok(GkVerdict {
                finite: false,
                witness_index: None,
                sequence: seq,
            });
        }
        let next = &m * g1 + g0;
        seq.push(next);
    }
    Err(Error::Undecided(cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    ExpectPure,
    ExpectNotPure,
}

/// Minus family: every rational of the interval is purely periodic; plus
/// family: exactly the non-positive ones.
pub fn expected_pure_periodicity(x: &BigRational, family: QuadFamily, m: u32) -> Result<Expectation> {
    expected_pure_periodicity_in(x, &BaseContext::quadratic(family, m)?)
}

pub fn expected_pure_periodicity_in(x: &BigRational, base: &BaseContext) -> Result<Expectation> {
    let (family, _) = family_of(base)?;
    if !base.contains_rational(x) {
        return Err(Error::OutsideInterval(x.to_string()));
    }
    Ok(match family {
        QuadFamily::Minus => Expectation::ExpectPure,
        QuadFamily::Plus if *x <= BigRational::zero() => Expectation::ExpectPure,
        QuadFamily::Plus => Expectation::ExpectNotPure,
    })
}
