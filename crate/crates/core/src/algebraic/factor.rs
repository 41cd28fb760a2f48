//! Factorization of monic integer polynomials by Kronecker's method.
//!
//! Exponential in the degree, which is fine for the small bases this crate
//! works with. Monic factors of a monic polynomial are monic with integer
//! coefficients (Gauss), so a degree-e candidate is pinned down by e values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

const CANDIDATE_LIMIT: usize = 5_000_000;

/// Monic irreducible factors (with multiplicity) of a monic polynomial, sorted
/// by degree then coefficients.
pub fn factor_monic(p: &IntPoly) -> Result<Vec<IntPoly>> {
    assert!(p.is_monic(), "factor_monic needs a monic polynomial");
    let mut budget = CANDIDATE_LIMIT;
    let mut out = Vec::new();
    let mut work = vec![p.clone()];
    while let Some(f) = work.pop() {
        if f.degree() == 0 {
            continue;
        }
        match split(&f, &mut budget)? {
            Some((g, h)) => {
                work.push(g);
                work.push(h);
            }
            None => out.push(f),
        }
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.ascending().cmp(b.ascending()))
    });
    Ok(out)
}

pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    Ok(factor_monic(p)?.len() == 1)
}

fn split(f: &IntPoly, budget: &mut usize) -> Result<Option<(IntPoly, IntPoly)>> {
    let n = f.degree();
    if n <= 1 {
        return Ok(None);
    }
    // Linear factors via the rational (here: integer) root test.
    let c0 = f.coeff(0);
    if c0.is_zero() {
        let x = IntPoly::from_descending_i64(&[1, 0]);
        let q = f.div_exact_monic(&x).expect("x divides f when f(0) = 0");
        return Ok(Some((x, q)));
    }
    for d in divisors(&c0.abs()) {
        for r in [d.clone(), -d] {
            if f.eval_int(&r).is_zero() {
                let lin = IntPoly::from_ascending(vec![-r, BigInt::one()]);
                let q = f.div_exact_monic(&lin).expect("root gives exact division");
                return Ok(Some((lin, q)));
            }
        }
    }
    for e in 2..=n / 2 {
        if let Some(g) = kronecker_factor(f, e, budget)? {
            let q = f.div_exact_monic(&g).expect("candidate verified");
            return Ok(Some((g, q)));
        }
    }
    Ok(None)
}

fn kronecker_factor(f: &IntPoly, e: usize, budget: &mut usize) -> Result<Option<IntPoly>> {
    // Evaluation points with small |f(a)| keep the divisor lists short.
    let mut cands: Vec<(BigInt, BigInt)> = (0..(4 * e as i64 + 8))
        .map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })
        .map(|a| {
            let a = BigInt::from(a);
            let v = f.eval_int(&a);
            (a, v)
        })
        .collect();
    cands.sort_by_key(|(_, v)| divisors(&v.abs()).len());
    let points: Vec<(BigInt, BigInt)> = cands.into_iter().take(e).collect();
    let choices: Vec<Vec<BigInt>> = points
        .iter()
        .map(|(_, v)| {
            divisors(&v.abs())
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        })
        .collect();

    let mut idx = vec![0usize; e];
    loop {
        if *budget == 0 {
            return Err(Error::FactorizationLimit(CANDIDATE_LIMIT));
        }
        *budget -= 1;
        let values: Vec<BigInt> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if let Some(g) = monic_interpolant(&points, &values, e) {
            if f.div_exact_monic(&g).is_some() {
                return Ok(Some(g));
            }
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == e {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Monic degree-e polynomial g with g(a_j) = v_j, if its coefficients are integral.
fn monic_interpolant(points: &[(BigInt, BigInt)], values: &[BigInt], e: usize) -> Option<IntPoly> {
    // g = x^e + h, deg h < e, h(a_j) = v_j - a_j^e; Newton divided differences.
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(a, _)| BigRational::from_integer(a.clone()))
        .collect();
    let mut dd: Vec<BigRational> = points
        .iter()
        .zip(values)
        .map(|((a, _), v)| BigRational::from_integer(v - num_traits::pow(a.clone(), e)))
        .collect();
    for level in 1..e {
        for j in (level..e).rev() {
            dd[j] = (&dd[j] - &dd[j - 1]) / (&xs[j] - &xs[j - level]);
        }
    }
    // Expand Newton form into monomial coefficients.
    let mut coeffs = vec![BigRational::zero(); e];
    for j in (0..e).rev() {
        // coeffs = coeffs * (x - xs[j]) + dd[j]
        let mut next = vec![BigRational::zero(); e];
        for i in 0..e {
            if i + 1 < e {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * &xs[j];
        }
        next[0] += &dd[j];
        coeffs = next;
    }
    let mut int_coeffs = Vec::with_capacity(e + 1);
    for c in coeffs {
        if !c.is_integer() {
            return None;
        }
        int_coeffs.push(c.to_integer());
    }
    int_coeffs.push(BigInt::one());
    Some(IntPoly::from_ascending(int_coeffs))
}

/// Positive divisors of n (n > 0), ascending. n = 0 yields no divisors.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
