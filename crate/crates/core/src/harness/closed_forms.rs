use std::ops::RangeInclusive;

use num_rational::BigRational;
use serde::Serialize;

use crate::algebraic::{BaseContext, QuadFamily};
use crate::digits::{DigitWord, EventuallyPeriodicString};
use crate::error::Result;
use crate::expansion::{boundary_strings, expand};

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormRow {
    pub family: QuadFamily,
    pub m: u32,
    /// What is expanded: a rational, or the lower / upper reference string.
    pub subject: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    pub rows: Vec<ClosedFormRow>,
    pub mismatches: usize,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

fn s(pre: DigitWord, period: DigitWord) -> EventuallyPeriodicString {
    EventuallyPeriodicString::new(pre, period).expect("nonempty period")
}

/// Known expansions for b^2 = m b - 1: (x, expected expansion).
fn minus_table(m: u32) -> Vec<(BigRational, EventuallyPeriodicString)> {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let mut out = Vec::new();
    if m >= 3 {
        let half = if m % 2 == 1 {
            let k = m.div_ceil(2);
            s(vec![], vec![k, k, 1])
        } else {
            s(vec![], vec![m / 2, 1])
        };
        out.push((r(-1, 2), half));
        out.push((r(1, i64::from(m) + 1), s(vec![], vec![0, m - 1, 1, 1, 1, 0])));
    }
    out
}

/// Known expansions for b^2 = m b + 1.
fn plus_table(m: u32) -> Vec<(BigRational, EventuallyPeriodicString)> {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let mut out = Vec::new();
    let half = if m % 2 == 1 {
        let k = m.div_ceil(2);
        s(vec![], vec![k, k - 1, 0])
    } else {
        s(vec![], vec![m / 2, 0])
    };
    out.push((r(-1, 2), half));
    if m >= 2 {
        let x = r(1, 2 * i64::from(m));
        let e = if m % 2 == 1 {
            let k = m.div_ceil(2);
            s(vec![0, k], vec![k - 1, k, 2 * k - 1, 2 * k - 1, 2 * k - 2, k - 1])
        } else {
            let k = m / 2;
            s(vec![0, k + 1], vec![2 * k, 2 * k, 2 * k - 1, k])
        };
        out.push((x, e));
    }
    if m == 1 {
        out.push((r(1, 3), s(vec![0, 1], vec![0, 0, 1, 1, 1, 1, 0, 0])));
    }
    out
}

fn boundary_table(family: QuadFamily, m: u32) -> (EventuallyPeriodicString, EventuallyPeriodicString) {
    match family {
        QuadFamily::Minus => (s(vec![], vec![m - 1, 1]), s(vec![0], vec![m - 1, 1])),
        QuadFamily::Plus => (s(vec![m], vec![m - 1]), s(vec![0, m], vec![m - 1])),
    }
}

fn check_family(family: QuadFamily, m: u32, budget: usize, rows: &mut Vec<ClosedFormRow>) -> Result<()> {
    let base = BaseContext::quadratic(family, m)?;
    let mut push = |subject: String, expected: &EventuallyPeriodicString, observed: &EventuallyPeriodicString| {
        rows.push(ClosedFormRow {
            family,
            m,
            subject,
            expected: expected.to_omega_string(),
            observed: observed.to_omega_string(),
            ok: expected == observed,
        })
    };
    let refs = boundary_strings(&base, budget)?;
    let (lower, upper) = boundary_table(family, m);
    push("left endpoint".into(), &lower, &refs.lower);
    push("right limit".into(), &upper, &refs.upper_limit);
    let table = match family {
        QuadFamily::Minus => minus_table(m),
        QuadFamily::Plus => plus_table(m),
    };
    for (x, expected) in table {
        let observed = expand(&base.from_rational(&x), budget)?;
        push(x.to_string(), &expected, &observed);
    }
    Ok(())
}

/// Compares computed expansions with the closed forms for every m in the ranges.
pub fn verify_closed_forms(
    minus: RangeInclusive<u32>,
    plus: RangeInclusive<u32>,
    budget: usize,
) -> Result<ClosedFormReport> {
    let mut rows = Vec::new();
    for m in minus {
        check_family(QuadFamily::Minus, m, budget, &mut rows)?;
    }
    for m in plus {
        check_family(QuadFamily::Plus, m, budget, &mut rows)?;
    }
    let mismatches = rows.iter().filter(|r| !r.ok).count();
    Ok(ClosedFormReport { rows, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::DEFAULT_BUDGET;

    #[test]
    fn table_instances() {
        let rep = verify_closed_forms(5..=5, 2..=3, DEFAULT_BUDGET).unwrap();
        assert!(rep.passed(), "{:#?}", rep.rows);
        let find = |m: u32, subj: &str| rep.rows.iter().find(|r| r.m == m && r.subject == subj).unwrap().observed.clone();
        assert_eq!(find(5, "-1/2"), "(331)^w");
        assert_eq!(find(2, "1/4"), "02(2211)^w");
        assert_eq!(find(3, "1/6"), "02(123321)^w");
    }
}
