//! Small parsers shared by the polynomial, field-element and CLI text formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Parses `p`, `-p`, `p/q` (q nonzero) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses a sum of monomials `c*v^k` in one variable.
///
/// Accepted term shapes: `c`, `v`, `c*v`, `cv`, `v^k`, `c*v^k`, where `c` is an
/// integer or `p/q` and `v` is any of `vars`. Returns `(coefficient, exponent)`
/// pairs; repeated exponents are left to the caller to combine.
pub fn parse_monomials(s: &str, vars: &[&str]) -> Result<Vec<(BigRational, usize)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut terms = Vec::new();
    let bytes = compact.as_bytes();
    let mut start = 0;
    // Split on +/- that are not the leading sign of the whole expression.
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms
        .into_iter()
        .map(|t| parse_monomial(t, vars))
        .collect()
}

fn parse_monomial(term: &str, vars: &[&str]) -> Result<(BigRational, usize)> {
    let bad = || Error::Parse(format!("invalid term {term:?}"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'+') => (false, &term[1..]),
        Some(b'-') => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    // Longest variable name first so "beta" wins over "b".
    let mut names: Vec<&str> = vars.to_vec();
    names.sort_by_key(|v| std::cmp::Reverse(v.len()));
    let var_at = names
        .iter()
        .filter_map(|v| body.find(v).map(|pos| (pos, v.len())))
        .min_by_key(|(pos, _)| *pos);

    let (coef, exp) = match var_at {
        None => (parse_rational(body)?, 0),
        Some((pos, len)) => {
            let coef_str = body[..pos].trim_end_matches('*');
            let coef = if coef_str.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coef_str)?
            };
            let rest = &body[pos + len..];
            let exp = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse::<usize>().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            (coef, exp)
        }
    };
    Ok((if negative { -coef } else { coef }, exp))
}

/// Formats ascending coefficients as `c_k*v^k+...+c_0`, skipping zeros.
pub(crate) fn format_monomials<T>(coeffs: &[T], var: &str) -> String
where
    T: std::fmt::Display + Zero + One + PartialEq + Clone + std::ops::Neg<Output = T> + PartialOrd,
{
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = *c < T::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        match i {
            0 => out.push_str(&abs.to_string()),
            _ => {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
