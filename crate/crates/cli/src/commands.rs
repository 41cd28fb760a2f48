use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{bail, Context, Result};
use negabeta::digits::is_admissible_quadratic;
use negabeta::expansion::{expand_real, is_admissible_in};
use negabeta::harness::{
    describe_base, example12_report, example15_report, scan_rationals, verify_closed_forms, Predicate, ScanReport,
};
use negabeta::periodicity::{
    empirical_gamma, find_period_multiplier, pure_periodic_certificate, Budgets, CertificateOutcome, GammaBound,
};
use negabeta::quadratic::{gk_recurrence, membership_fin_plus, membership_neg_beta_zmb, membership_zmb, DEFAULT_GK_CAP};
use negabeta::text::parse_rational;
use negabeta::{BaseContext, EventuallyPeriodicString, QuadFamily};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{BaseArgs, Ctx, Status, Suite};

fn sink(ctx: &Ctx) -> Result<Box<dyn Write>> {
    Ok(match &ctx.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

/// JSON or text to --out (or stdout).
fn emit(ctx: &Ctx, value: &Value, text: &str) -> Result<()> {
    let mut w = sink(ctx)?;
    if ctx.json {
        writeln!(w, "{}", serde_json::to_string_pretty(value)?)?;
    } else {
        writeln!(w, "{}", text.trim_end())?;
    }
    w.flush()?;
    Ok(())
}

/// Summary output for table commands, whose --out receives the rows.
fn summary(ctx: &Ctx, value: &Value, text: &str) -> Result<()> {
    let mut w = io::stdout().lock();
    if ctx.json {
        writeln!(w, "{}", serde_json::to_string_pretty(value)?)?;
    } else {
        writeln!(w, "{}", text.trim_end())?;
    }
    Ok(())
}

fn budgets(ctx: &Ctx) -> Budgets {
    Budgets {
        expand_budget: ctx.budget,
        ..Budgets::default()
    }
}

pub fn expand(ctx: &Ctx, base: &BaseArgs, x: &str) -> Result<Status> {
    let base = base.build()?;
    let x = base.parse_element(x)?;
    let e = expand_real(&x, ctx.budget)?;
    let text = format!(
        "x = {x}\nleading exponent {}\ndigits {} = {}",
        e.leading_exponent,
        e.digits,
        e.digits.to_omega_string()
    );
    emit(ctx, &serde_json::to_value(&e)?, &text)?;
    Ok(Status::Pass)
}

pub fn admissible(ctx: &Ctx, base: &BaseArgs, word: &str) -> Result<Status> {
    let base = base.build()?;
    let s: EventuallyPeriodicString = word.parse()?;
    let generic = is_admissible_in(&s, &base, ctx.budget)?;
    let closed_form = match base.family().quadratic() {
        Some((f, m)) => Some(is_admissible_quadratic(&s, f, m)?),
        None => None,
    };
    let agree = closed_form.is_none_or(|c| c == generic);
    let verdict = if generic { "admissible" } else { "inadmissible" };
    let mut text = format!("{} is {verdict}", s.to_omega_string());
    if !agree {
        text.push_str("\nclosed-form digit rule disagrees");
    }
    let value = json!({
        "word": s.to_omega_string(),
        "admissible": generic,
        "closed_form": closed_form,
        "agree": agree,
    });
    emit(ctx, &value, &text)?;
    Ok(if agree { Status::Pass } else { Status::Violations })
}

fn charset_row(base: &BaseContext, family: QuadFamily, m: u32, a: i64, b: i64, budget: usize) -> Result<Value> {
    let z = &base.from_int(a) + &(&base.from_int(-b) * &base.beta());
    let e = expand_real(&z, budget)?;
    let zmb_window = membership_zmb(&z)?;
    let zmb_expansion = e.is_integer();
    let mut agree = zmb_window == zmb_expansion;
    let mut row = json!({
        "a": a,
        "b": b,
        "z": z.to_string(),
        "zmb_window": zmb_window,
        "zmb_expansion": zmb_expansion,
        "fin_expansion": e.digits.is_finite(),
    });
    if family == QuadFamily::Plus {
        let fin_window = membership_fin_plus(&z)?;
        let fin_gk = gk_recurrence(a, b, m, DEFAULT_GK_CAP)?.finite;
        let nbz_window = membership_neg_beta_zmb(&z)?;
        let nbz_expansion = zmb_expansion && e.digit_at(0) == 0;
        agree &= fin_window == e.digits.is_finite() && fin_gk == fin_window && nbz_window == nbz_expansion;
        row["fin_window"] = json!(fin_window);
        row["fin_gk"] = json!(fin_gk);
        row["neg_beta_zmb_window"] = json!(nbz_window);
        row["neg_beta_zmb_expansion"] = json!(nbz_expansion);
    }
    row["agree"] = json!(agree);
    Ok(row)
}

pub fn charset(ctx: &Ctx, family: QuadFamily, m: u32, grid: i64) -> Result<Status> {
    if grid < 0 {
        bail!(negabeta::Error::OutOfRange("grid must be >= 0".into()));
    }
    let base = BaseContext::quadratic(family, m)?;
    let points: Vec<(i64, i64)> = (-grid..=grid).flat_map(|a| (-grid..=grid).map(move |b| (a, b))).collect();
    let rows: Vec<Value> = points
        .par_iter()
        .map(|&(a, b)| charset_row(&base, family, m, a, b, ctx.budget))
        .collect::<Result<_>>()?;
    let mut w = sink(ctx)?;
    for r in &rows {
        writeln!(w, "{r}")?;
    }
    w.flush()?;
    let bad = rows.iter().filter(|r| r["agree"] != json!(true)).count();
    eprintln!("{} points, {bad} disagreements", rows.len());
    Ok(if bad == 0 { Status::Pass } else { Status::Violations })
}

pub fn certify(ctx: &Ctx, base: &BaseArgs, x: &str) -> Result<Status> {
    let base = base.build()?;
    let x = parse_rational(x)?;
    let (value, text) = match pure_periodic_certificate(&x, &base, budgets(ctx))? {
        CertificateOutcome::Certified(c) => (
            json!({"certified": true, "certificate": c}),
            format!(
                "certified: x = {x}, N = {}, z = {}, period {}",
                c.n_period,
                c.z,
                c.expansion.to_omega_string()
            ),
        ),
        CertificateOutcome::Refused(r) => (
            json!({"certified": false, "refusal": r}),
            format!("refused: {} (last N = {})", r.reason.as_str(), r.n_period),
        ),
    };
    emit(ctx, &value, &text)?;
    Ok(Status::Pass)
}

pub fn find_n(ctx: &Ctx, base: &BaseArgs, q: u64) -> Result<Status> {
    let base = base.build()?;
    if q == 0 {
        bail!(negabeta::Error::OutOfRange("q must be >= 1".into()));
    }
    let n = find_period_multiplier(q, &base)?;
    emit(ctx, &json!({"q": q, "N": n}), &format!("N = {n}"))?;
    Ok(Status::Pass)
}

fn bound_str(b: &GammaBound) -> String {
    match b {
        GammaBound::IntervalEnd => "interval-end".into(),
        GammaBound::At(x) => x.to_string(),
    }
}

pub fn gamma(ctx: &Ctx, base: &BaseArgs, qmax: u64) -> Result<Status> {
    let base = base.build()?;
    let r = empirical_gamma(&base, qmax, ctx.budget)?;
    let (neg_f, pos_f) = r.bounds_f64(&base);
    let ces: Vec<String> = r.counterexamples.iter().map(ToString::to_string).collect();
    let value = json!({
        "base": describe_base(&base),
        "qmax": r.qmax,
        "scanned": r.scanned,
        "neg_bound": bound_str(&r.neg_bound),
        "pos_bound": bound_str(&r.pos_bound),
        "interval": [-neg_f, pos_f],
        "counterexamples": ces,
        "aborted_at": r.aborted_at.as_ref().map(ToString::to_string),
        "zero_run": r.zero_run,
        "aux_q": r.aux_q,
    });
    let mut text = format!(
        "{} rationals, pure on (-{neg_f:.6}, {pos_f:.6})\nneg bound {}, pos bound {}\n{} counterexamples",
        r.scanned,
        bound_str(&r.neg_bound),
        bound_str(&r.pos_bound),
        ces.len()
    );
    if let Some(a) = &r.aborted_at {
        text.push_str(&format!("\naborted at {a}: orbit budget exhausted"));
    }
    emit(ctx, &value, &text)?;
    Ok(Status::Pass)
}

fn parse_predicate(s: &str) -> Result<Predicate> {
    Ok(match s {
        "quadratic" => Predicate::Quadratic,
        "none" => Predicate::None,
        _ => {
            let (lo, hi) = s
                .split_once(',')
                .ok_or_else(|| negabeta::Error::Parse(format!("bad --expect {s:?}")))?;
            Predicate::Interval(parse_rational(lo)?, parse_rational(hi)?)
        }
    })
}

fn scan_text(r: &ScanReport) -> String {
    let mut t = format!(
        "{} {}: q <= {}, {} scanned, {} pure, {} not pure, {} over budget, {:.2}s",
        r.status, r.base, r.qmax, r.scanned, r.purely_periodic, r.not_pure, r.budget_failures, r.wall_time_s
    );
    for v in &r.violations {
        t.push_str(&format!("\n  {}: observed {}, expected {}", v.x, v.observed, v.expected));
    }
    t
}

pub fn scan(ctx: &Ctx, base: &BaseArgs, qmax: u64, expect: &str, csv: bool) -> Result<Status> {
    let base = base.build()?;
    if qmax < 2 {
        bail!(negabeta::Error::OutOfRange("qmax must be >= 2".into()));
    }
    let predicate = parse_predicate(expect)?;
    let report = scan_rationals(&base, qmax, &predicate, budgets(ctx));
    if ctx.out.is_some() {
        let mut w = sink(ctx)?;
        if csv {
            report.write_csv(&mut w)?;
        } else {
            report.write_jsonl(&mut w)?;
        }
        w.flush()?;
    }
    summary(ctx, &serde_json::to_value(&report)?, &scan_text(&report))?;
    Ok(if report.passed() { Status::Pass } else { Status::Violations })
}

pub struct VerifyArgs {
    pub suite: Suite,
    pub m_min: Option<u32>,
    pub m_max: Option<u32>,
    pub qmax: u64,
    pub d: Vec<String>,
    pub k_max: usize,
    pub digits: usize,
}

fn digit_words(given: &[String], default: &[&[u32]]) -> Result<Vec<Vec<u32>>> {
    if given.is_empty() {
        return Ok(default.iter().map(|d| d.to_vec()).collect());
    }
    given
        .iter()
        .map(|s| Ok(negabeta::digits::parse_word(s)?))
        .collect()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn scan_suite(ctx: &Ctx, family: QuadFamily, lo: u32, hi: u32, qmax: u64) -> Result<(bool, Value, String)> {
    let mut rows_out = if ctx.out.is_some() { Some(sink(ctx)?) } else { None };
    let mut reports = Vec::new();
    let mut text = String::new();
    for m in lo..=hi {
        let base = BaseContext::quadratic(family, m)?;
        let r = scan_rationals(&base, qmax, &Predicate::Quadratic, budgets(ctx));
        if let Some(w) = rows_out.as_mut() {
            for row in &r.rows {
                let mut v = serde_json::to_value(row)?;
                v["m"] = json!(m);
                writeln!(w, "{v}")?;
            }
        }
        text.push_str(&scan_text(&r));
        text.push('\n');
        reports.push(r);
    }
    if let Some(mut w) = rows_out {
        w.flush()?;
    }
    let ok = reports.iter().all(ScanReport::passed);
    Ok((ok, serde_json::to_value(&reports)?, text))
}

pub fn verify(ctx: &Ctx, a: &VerifyArgs) -> Result<Status> {
    let range = |lo: u32, hi: u32| (a.m_min.unwrap_or(lo), a.m_max.unwrap_or(hi));
    let (ok, value, text) = match a.suite {
        Suite::Theorem4 => {
            let (lo, hi) = range(3, 8);
            scan_suite(ctx, QuadFamily::Minus, lo, hi, a.qmax)?
        }
        Suite::Theorem7 => {
            let (lo, hi) = range(1, 8);
            scan_suite(ctx, QuadFamily::Plus, lo, hi, a.qmax)?
        }
        Suite::ClosedForms => {
            let (lo, hi) = range(1, 12);
            let rep = verify_closed_forms(lo.max(3)..=hi, lo..=hi, ctx.budget)?;
            let mut text = String::new();
            for r in &rep.rows {
                text.push_str(&format!(
                    "{} {}({}) {}: {}\n",
                    verdict(r.ok),
                    r.family,
                    r.m,
                    r.subject,
                    r.observed
                ));
                if !r.ok {
                    text.push_str(&format!("    expected {}\n", r.expected));
                }
            }
            (rep.passed(), serde_json::to_value(&rep)?, text)
        }
        Suite::Example12 => {
            let mut reports = Vec::new();
            let mut text = String::new();
            for d in digit_words(&a.d, &[&[1], &[3, 1]])? {
                let r = example12_report(&d, a.k_max, ctx.budget)?;
                text.push_str(&format!(
                    "{} d={:?} {}: anchor {}\n",
                    verdict(r.ok),
                    r.d,
                    r.base,
                    r.anchor_expansion
                ));
                for row in &r.rows {
                    text.push_str(&format!(
                        "  k={:<2} {:<16} {:<12} admissible={}\n",
                        row.k, row.word, row.claim, row.admissible
                    ));
                }
                reports.push(r);
            }
            let ok = reports.iter().all(|r| r.ok);
            (ok, serde_json::to_value(&reports)?, text)
        }
        Suite::Example15 => {
            let mut reports = Vec::new();
            let mut text = String::new();
            for d in digit_words(&a.d, &[&[3, 1], &[4, 1]])? {
                let r = example15_report(&d, a.digits, ctx.budget)?;
                text.push_str(&format!(
                    "{} d={:?} {}: d({}) = {}, expected {}\n",
                    verdict(r.ok),
                    r.d,
                    r.base,
                    r.x,
                    r.observed,
                    r.expected
                ));
                reports.push(r);
            }
            let ok = reports.iter().all(|r| r.ok);
            (ok, serde_json::to_value(&reports)?, text)
        }
    };
    let value = json!({"status": verdict(ok), "reports": value});
    let text = format!("{text}{}", verdict(ok));
    let table_suite = matches!(a.suite, Suite::Theorem4 | Suite::Theorem7);
    if table_suite {
        summary(ctx, &value, &text)?;
    } else {
        emit(ctx, &value, &text)?;
    }
    Ok(if ok { Status::Pass } else { Status::Violations })
}
