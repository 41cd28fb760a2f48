use std::io::{self, Write};
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::describe_base;
use crate::algebraic::BaseContext;
use crate::error::Error;
use crate::expansion::expand;
use crate::periodicity::{
    is_purely_periodic, pure_periodic_certificate, rationals_in_interval, Budgets, CertificateOutcome,
};
use crate::quadratic::{expected_pure_periodicity_in, Expectation};

/// What a scan expects of each rational.
#[derive(Clone, Debug)]
pub enum Predicate {
    /// The quadratic-family expectation (minus: all pure; plus: pure iff x <= 0).
    Quadratic,
    /// Pure exactly on the closed interval [lo, hi].
    Interval(BigRational, BigRational),
    /// Only check that the two deciders agree.
    None,
}

impl Predicate {
    fn expect(&self, x: &BigRational, base: &BaseContext) -> Result<Option<bool>, Error> {
        Ok(match self {
            Predicate::Quadratic => Some(expected_pure_periodicity_in(x, base)? == Expectation::ExpectPure),
            Predicate::Interval(lo, hi) => Some(lo <= x && x <= hi),
            Predicate::None => None,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub p: String,
    pub q: String,
    /// None when the orbit exceeded the budget.
    pub pure: Option<bool>,
    pub preperiod_len: Option<usize>,
    pub period_len: Option<usize>,
    #[serde(rename = "certificate_N")]
    pub certificate_n: Option<u64>,
    pub refusal: Option<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub x: String,
    pub observed: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub base: String,
    pub qmax: u64,
    pub scanned: usize,
    pub purely_periodic: usize,
    pub not_pure: usize,
    pub budget_failures: usize,
    pub violations: Vec<Violation>,
    pub status: &'static str,
    pub wall_time_s: f64,
    #[serde(skip)]
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One JSON object per scanned rational, in (q, p) order.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        for row in &self.rows {
            serde_json::to_writer(&mut w, row)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        writeln!(w, "p,q,pure,preperiod_len,period_len,certificate_N,refusal")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.p,
                r.q,
                opt(r.pure.map(|b| b.to_string())),
                opt(r.preperiod_len.map(|v| v.to_string())),
                opt(r.period_len.map(|v| v.to_string())),
                opt(r.certificate_n.map(|v| v.to_string())),
                r.refusal.unwrap_or("")
            )?;
        }
        Ok(())
    }
}

struct Scanned {
    row: ScanRow,
    violations: Vec<Violation>,
}

fn scan_one(x: &BigRational, base: &BaseContext, predicate: &Predicate, budgets: Budgets) -> Scanned {
    let xe = base.from_rational(x);
    let mut violations = Vec::new();
    let mut violate = |observed: String, expected: String| {
        violations.push(Violation {
            x: x.to_string(),
            observed,
            expected,
        })
    };
    let pure = match is_purely_periodic(&xe, budgets.expand_budget) {
        Ok(v) => Some(v),
        Err(Error::BudgetExhausted(_)) => None,
        Err(e) => {
            violate(format!("error: {e}"), "a verdict".into());
            None
        }
    };
    let digits = expand(&xe, budgets.expand_budget).ok();
    let (mut certificate_n, mut refusal) = (None, None);
    match pure_periodic_certificate(x, base, budgets) {
        Ok(CertificateOutcome::Certified(c)) => certificate_n = Some(c.n_period),
        Ok(CertificateOutcome::Refused(r)) => refusal = Some(r.reason.as_str()),
        Err(e) => violate(format!("certificate error: {e}"), "certificate or refusal".into()),
    }
    if let Some(pure) = pure {
        if certificate_n.is_some() != pure {
            violate(
                format!("orbit pure = {pure}, certificate issued = {}", certificate_n.is_some()),
                "deciders agree".into(),
            );
        }
        if let Some(d) = &digits {
            if d.is_purely_periodic() != pure {
                violate(format!("expansion {d} vs orbit pure = {pure}"), "deciders agree".into());
            }
        }
        match predicate.expect(x, base) {
            Ok(Some(expected)) if expected != pure => {
                violate(format!("pure = {pure}"), format!("pure = {expected}"));
            }
            Ok(_) => {}
            Err(e) => violate(format!("predicate error: {e}"), "a prediction".into()),
        }
    }
    Scanned {
        row: ScanRow {
            p: x.numer().to_string(),
            q: x.denom().to_string(),
            pure,
            preperiod_len: digits.as_ref().map(|d| d.preperiod().len()),
            period_len: digits.as_ref().map(|d| d.period().len()),
            certificate_n,
            refusal,
        },
        violations,
    }
}

/// Runs both pure-periodicity deciders on every reduced p/q in the interval
/// with q <= qmax and compares them with each other and with the predicate.
pub fn scan_rationals(base: &BaseContext, qmax: u64, predicate: &Predicate, budgets: Budgets) -> ScanReport {
    let start = Instant::now();
    let xs = rationals_in_interval(base, qmax);
    let results: Vec<Scanned> = xs
        .par_iter()
        .map(|x| scan_one(x, base, predicate, budgets))
        .collect();
    let mut report = ScanReport {
        base: describe_base(base),
        qmax,
        scanned: results.len(),
        purely_periodic: 0,
        not_pure: 0,
        budget_failures: 0,
        violations: Vec::new(),
        status: "PASS",
        wall_time_s: 0.0,
        rows: Vec::with_capacity(results.len()),
    };
    for s in results {
        match s.row.pure {
            Some(true) => report.purely_periodic += 1,
            Some(false) => report.not_pure += 1,
            None => report.budget_failures += 1,
        }
        report.violations.extend(s.violations);
        report.rows.push(s.row);
    }
    if !report.violations.is_empty() {
        report.status = "FAIL";
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}
