mod common;

use common::*;
use negabeta::expansion::{boundary_strings, DEFAULT_BUDGET};
use negabeta::harness::{
    beta_from_left_expansion, example12_report, example15_report, scan_rationals, verify_closed_forms, Predicate,
};
use negabeta::periodicity::Budgets;
use negabeta::EventuallyPeriodicString;

#[test]
fn scans_are_deterministic() {
    let base = plus(3);
    let run = || {
        let r = scan_rationals(&base, 25, &Predicate::Quadratic, Budgets::default());
        let mut out = Vec::new();
        r.write_jsonl(&mut out).unwrap();
        r.write_csv(&mut out).unwrap();
        out
    };
    assert_eq!(run(), run());
}

#[test]
fn scan_rows_follow_denominator_order() {
    let base = minus(4);
    let r = scan_rationals(&base, 12, &Predicate::Quadratic, Budgets::default());
    assert!(r.passed());
    assert_eq!(r.purely_periodic, r.scanned);
    let keys: Vec<(u64, i64)> = r.rows.iter().map(|row| (row.q.parse().unwrap(), row.p.parse().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn left_expansion_round_trip() {
    for d in [&[1][..], &[2], &[3], &[3, 1], &[4, 1], &[4, 2], &[5, 1, 2], &[3, 0, 1]] {
        let base = beta_from_left_expansion(d, DEFAULT_BUDGET).unwrap();
        let lower = boundary_strings(&base, DEFAULT_BUDGET).unwrap().lower;
        assert_eq!(lower, EventuallyPeriodicString::finite(d.to_vec()), "{d:?}");
    }
}

#[test]
fn beta_minus_one_minus_d1_ends_in_ones() {
    for d in [&[3, 1][..], &[4, 1]] {
        let r = example15_report(d, 200, DEFAULT_BUDGET).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.observed, "2(1)^w");
    }
    let r = example15_report(&[5, 1, 2], 200, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.expected, "23(1)^w");
    assert!(r.ok, "{r:?}");
}

#[test]
fn periodic_block_inadmissible_on_matching_parity() {
    for d in [&[1][..], &[3, 1]] {
        let r = example12_report(d, 10, DEFAULT_BUDGET).unwrap();
        assert!(r.ok, "{r:#?}");
        for row in &r.rows {
            if row.k >= 1 && row.k % 2 == d.len() % 2 {
                assert_eq!(row.claim, "inadmissible");
                assert!(!row.admissible);
            } else {
                assert_eq!(row.claim, "no-claim");
            }
        }
    }
}

#[test]
fn closed_forms_up_to_twelve() {
    let r = verify_closed_forms(3..=12, 1..=12, DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{:#?}", r.rows.iter().filter(|x| !x.ok).collect::<Vec<_>>());
    assert!(r.rows.len() > 60);
}
