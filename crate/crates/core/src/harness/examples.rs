use num_bigint::BigInt;
use serde::Serialize;

use crate::algebraic::{factor_monic, make_base, BaseContext, IntPoly, RootHint};
use crate::digits::{alt_compare, EventuallyPeriodicString};
use crate::error::{Error, Result};
use crate::expansion::{boundary_strings, expand, expand_prefix, is_admissible_in};

/// x^{p+1} - (x+1) * sum_i d_i (-1)^{i+1} x^{p-i}: its root b makes the
/// left endpoint -b/(b+1) equal to sum_i d_i (-b)^{-i}.
pub fn left_expansion_polynomial(d: &[u32]) -> IntPoly {
    let p = d.len();
    // s(x) in ascending order
    let mut s = vec![BigInt::from(0); p.max(1)];
    for (i, &di) in d.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        s[p - 1 - i] += BigInt::from(sign * i64::from(di));
    }
    let mut c = vec![BigInt::from(0); p + 2];
    c[p + 1] = BigInt::from(1);
    for (j, sj) in s.iter().enumerate() {
        c[j] -= sj;
        c[j + 1] -= sj;
    }
    IntPoly::from_ascending(c)
}

/// Builds the base whose left endpoint expands to d 0^w.
///
/// Requires d_1 > max(d_2..d_p) + 1 (max of nothing counts as -1). The
/// polynomial may factor; the factor whose largest root reproduces d 0^w wins.
pub fn beta_from_left_expansion(d: &[u32], budget: usize) -> Result<BaseContext> {
    let (&d1, rest) = d
        .split_first()
        .ok_or_else(|| Error::Hypothesis("empty digit word".into()))?;
    let rest_max = rest.iter().map(|&v| i64::from(v)).max().unwrap_or(-1);
    if i64::from(d1) <= rest_max + 1 {
        return Err(Error::Hypothesis(format!(
            "leading digit {d1} must exceed max of the others plus one ({})",
            rest_max + 1
        )));
    }
    let target = EventuallyPeriodicString::finite(d.to_vec());
    let poly = left_expansion_polynomial(d);
    let mut seen = Vec::new();
    for f in factor_monic(&poly)? {
        if f.degree() < 2 {
            continue;
        }
        let base = match make_base(&f, &RootHint::LargestReal) {
            Ok(b) => b,
            Err(Error::NoRootAboveOne) => continue,
            Err(e) => return Err(e),
        };
        let lower = boundary_strings(&base, budget)?.lower;
        if lower == target {
            return Ok(base);
        }
        seen.push(format!("{f}: {}", lower.to_omega_string()));
    }
    if seen.is_empty() {
        return Err(Error::NoRootAboveOne);
    }
    Err(Error::Inconsistent(format!(
        "no factor of {poly} has left endpoint {}; got {}",
        target.to_omega_string(),
        seen.join(", ")
    )))
}

#[derive(Clone, Debug, Serialize)]
pub struct Example15Report {
    pub d: Vec<u32>,
    pub base: String,
    pub x: String,
    pub expected: String,
    pub observed: String,
    pub digits_checked: usize,
    pub prefix_ok: bool,
    pub cycle_ok: bool,
    pub infinite: bool,
    pub ok: bool,
}

/// Expands b - 1 - d_1 and compares it with (d_2+1)..(d_p+1) 1^w, both on a
/// long prefix and as an exact eventually periodic string.
pub fn example15_report(d: &[u32], digits_to_check: usize, budget: usize) -> Result<Example15Report> {
    let base = beta_from_left_expansion(d, budget)?;
    let x = base.beta().add_int(-1 - i64::from(d[0]));
    let expected = EventuallyPeriodicString::new(d[1..].iter().map(|v| v + 1).collect(), vec![1])?;
    let prefix = expand_prefix(&x, digits_to_check)?;
    let prefix_ok = prefix == expected.prefix(digits_to_check);
    let observed = expand(&x, budget)?;
    let cycle_ok = observed == expected;
    let infinite = !observed.is_finite();
    Ok(Example15Report {
        d: d.to_vec(),
        base: super::describe_base(&base),
        x: x.to_string(),
        expected: expected.to_omega_string(),
        observed: observed.to_omega_string(),
        digits_checked: digits_to_check,
        prefix_ok,
        cycle_ok,
        infinite,
        ok: prefix_ok && cycle_ok && infinite,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Example12Row {
    pub k: usize,
    pub word: String,
    /// "inadmissible" where the parity rule makes a claim, else "no-claim".
    pub claim: &'static str,
    pub admissible: bool,
    /// Whether the suffix d 0^k (1 d 0^k)^w falls below d 0^w.
    pub witness_below_lower: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Example12Report {
    pub d: Vec<u32>,
    pub base: String,
    /// Expansion of -1/(b(b+1)), expected to be 1 d 0^w.
    pub anchor_expansion: String,
    pub anchor_ok: bool,
    /// Whether 0 1 d 0^w is admissible.
    pub shifted_admissible: bool,
    pub rows: Vec<Example12Row>,
    pub ok: bool,
}

/// Admissibility of (1 d 0^k)^w for k = 0..=k_max. Rows with k >= 1 and
/// k = p (mod 2) must be inadmissible; the others are recorded only.
pub fn example12_report(d: &[u32], k_max: usize, budget: usize) -> Result<Example12Report> {
    let base = beta_from_left_expansion(d, budget)?;
    let p = d.len();
    let beta = base.beta();
    let anchor = (&beta * &beta.add_int(1)).inverse()?;
    let anchor = -&anchor;
    let mut one_d = vec![1];
    one_d.extend_from_slice(d);
    let anchor_expected = EventuallyPeriodicString::finite(one_d.clone());
    let anchor_observed = expand(&anchor, budget)?;
    let anchor_ok = anchor_observed == anchor_expected;
    let shifted_admissible = is_admissible_in(&anchor_expected.prepend(&[0]), &base, budget)?;
    let lower = boundary_strings(&base, budget)?.lower;

    let mut rows = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut w = one_d.clone();
        w.extend(std::iter::repeat_n(0, k));
        let s = EventuallyPeriodicString::periodic(w.clone())?;
        let admissible = is_admissible_in(&s, &base, budget)?;
        let mut wit = d.to_vec();
        wit.extend(std::iter::repeat_n(0, k));
        let witness = EventuallyPeriodicString::new(wit, w)?;
        let witness_below_lower = alt_compare(&witness, &lower).is_lt();
        let claimed = k >= 1 && k % 2 == p % 2;
        rows.push(Example12Row {
            k,
            word: s.to_omega_string(),
            claim: if claimed { "inadmissible" } else { "no-claim" },
            admissible,
            witness_below_lower,
            ok: !claimed || (!admissible && witness_below_lower),
        });
    }
    let ok = anchor_ok && shifted_admissible && rows.iter().all(|r| r.ok);
    Ok(Example12Report {
        d: d.to_vec(),
        base: super::describe_base(&base),
        anchor_expansion: anchor_observed.to_omega_string(),
        anchor_ok,
        shifted_admissible,
        rows,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::DEFAULT_BUDGET;

    #[test]
    fn polynomials() {
        assert_eq!(left_expansion_polynomial(&[1]), IntPoly::from_descending_i64(&[1, -1, -1]));
        assert_eq!(left_expansion_polynomial(&[3, 1]), IntPoly::from_descending_i64(&[1, -3, -2, 1]));
    }

    #[test]
    fn constructed_bases() {
        let g = beta_from_left_expansion(&[1], DEFAULT_BUDGET).unwrap();
        assert!((g.beta_f64() - 1.618_033_988_75).abs() < 1e-9);
        let b = beta_from_left_expansion(&[3, 1], DEFAULT_BUDGET).unwrap();
        assert!((b.beta_f64() - 3.49).abs() < 0.01);
        assert!(matches!(beta_from_left_expansion(&[2, 2], DEFAULT_BUDGET), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn beta_minus_one_minus_d1_instances() {
        for d in [&[1][..], &[3, 1], &[4, 1]] {
            let r = example15_report(d, 200, DEFAULT_BUDGET).unwrap();
            assert!(r.ok, "{r:?}");
        }
        assert_eq!(example15_report(&[3, 1], 10, DEFAULT_BUDGET).unwrap().observed, "2(1)^w");
    }

    #[test]
    fn periodic_block_parity_golden() {
        let r = example12_report(&[1], 4, DEFAULT_BUDGET).unwrap();
        assert!(r.ok, "{r:#?}");
        assert!(!r.rows[1].admissible);
        assert_eq!(r.rows[1].word, "(110)^w");
    }
}
