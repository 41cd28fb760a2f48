//! Elements of Q(b) as canonical coefficient vectors modulo the minimal polynomial.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use super::BaseContext;
use crate::error::{Error, Result};
use crate::text::format_monomials;

/// Canonical representation `(n_0 + n_1 b + ... + n_{d-1} b^{d-1}) / den`
/// with `den > 0` and `gcd(n_0, ..., n_{d-1}, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Raw {
    pub(crate) num: Vec<BigInt>,
    pub(crate) den: BigInt,
}

impl Raw {
    pub(crate) fn zero(d: usize) -> Raw {
        Raw {
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub(crate) fn from_int(d: usize, v: BigInt) -> Raw {
        let mut r = Raw::zero(d);
        r.num[0] = v;
        r
    }

    pub(crate) fn from_rational(d: usize, v: &BigRational) -> Raw {
        let mut num = vec![BigInt::zero(); d];
        num[0] = v.numer().clone();
        Raw {
            num,
            den: v.denom().clone(),
        }
    }

    pub(crate) fn beta(d: usize, minpoly: &IntPoly) -> Raw {
        Raw::from_int(d, BigInt::one()).mul_beta(minpoly)
    }

    pub(crate) fn from_rationals(d: usize, coeffs: &[BigRational]) -> Raw {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); d];
        for (i, c) in coeffs.iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        Raw { num, den }.normalized()
    }

    pub(crate) fn normalized(mut self) -> Raw {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
        self
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub(crate) fn add(&self, other: &Raw) -> Raw {
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return Raw {
                num,
                den: self.den.clone(),
            }
            .normalized();
        }
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        Raw { num, den: l }.normalized()
    }

    pub(crate) fn neg(&self) -> Raw {
        Raw {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub(crate) fn sub(&self, other: &Raw) -> Raw {
        self.add(&other.neg())
    }

    /// self - k for an integer k.
    pub(crate) fn sub_int(&self, k: &BigInt) -> Raw {
        let mut out = self.clone();
        out.num[0] -= k * &self.den;
        out.normalized()
    }

    pub(crate) fn mul(&self, other: &Raw, minpoly: &IntPoly) -> Raw {
        let d = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let m = minpoly.ascending();
        for i in (d..2 * d - 1).rev() {
            let t = std::mem::take(&mut prod[i]);
            if t.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().take(d).enumerate() {
                if !mj.is_zero() {
                    prod[i - d + j] -= &t * mj;
                }
            }
        }
        prod.truncate(d);
        Raw {
            num: prod,
            den: &self.den * &other.den,
        }
        .normalized()
    }

    /// self * b
    pub(crate) fn mul_beta(&self, minpoly: &IntPoly) -> Raw {
        let d = self.num.len();
        let mut out = vec![BigInt::zero(); d];
        out[1..d].clone_from_slice(&self.num[..d - 1]);
        let top = &self.num[d - 1];
        if !top.is_zero() {
            for (j, mj) in minpoly.ascending().iter().take(d).enumerate() {
                out[j] -= top * mj;
            }
        }
        Raw {
            num: out,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Matrix of multiplication by self in the basis 1, b, ..., b^{d-1};
    /// column j holds the coordinates of self * b^j.
    pub(crate) fn mult_matrix(&self, minpoly: &IntPoly) -> Vec<Vec<BigRational>> {
        let d = self.num.len();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(
                cur.num
                    .iter()
                    .map(|c| BigRational::new(c.clone(), cur.den.clone()))
                    .collect::<Vec<_>>(),
            );
            cur = cur.mul_beta(minpoly);
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    pub(crate) fn inverse(&self, minpoly: &IntPoly) -> Option<Raw> {
        if self.is_zero() {
            return None;
        }
        let d = self.num.len();
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let sol = solve(self.mult_matrix(minpoly), rhs)?;
        Some(Raw::from_rationals(d, &sol))
    }

    pub(crate) fn norm(&self, minpoly: &IntPoly) -> BigRational {
        determinant(self.mult_matrix(minpoly))
    }
}

fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
            let v = &b[col] * &f;
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    det
}

/// An exact element of Q(b) tied to its base context.
#[derive(Clone)]
pub struct FieldElement {
    pub(crate) base: BaseContext,
    pub(crate) raw: Raw,
}

impl FieldElement {
    pub(crate) fn from_raw(base: &BaseContext, raw: Raw) -> FieldElement {
        FieldElement {
            base: base.clone(),
            raw,
        }
    }

    pub fn base(&self) -> &BaseContext {
        &self.base
    }

    /// Rational coefficients c_0..c_{d-1} of c_0 + c_1 b + ... + c_{d-1} b^{d-1}.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.raw
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.raw.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.raw.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.raw.den
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    /// Whether the element lies in Z[b].
    pub fn is_integral(&self) -> bool {
        self.raw.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.raw.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.raw.num[0].clone(), self.raw.den.clone()))
        } else {
            None
        }
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if self.base.same_as(&other.base) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.with(self.raw.add(&other.raw)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.with(self.raw.sub(&other.raw)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.with(self.raw.mul(&other.raw, self.base.minpoly())))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let inv = other.inverse()?;
        Ok(self.with(self.raw.mul(&inv.raw, self.base.minpoly())))
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        let inv = self
            .raw
            .inverse(self.base.minpoly())
            .ok_or(Error::DivisionByZero)?;
        Ok(self.with(inv))
    }

    pub(crate) fn with(&self, raw: Raw) -> FieldElement {
        FieldElement {
            base: self.base.clone(),
            raw,
        }
    }

    pub fn mul_beta(&self) -> FieldElement {
        self.with(self.raw.mul_beta(self.base.minpoly()))
    }

    /// self * (-b)
    pub fn mul_neg_beta(&self) -> FieldElement {
        self.with(self.raw.mul_beta(self.base.minpoly()).neg())
    }

    pub fn add_int(&self, k: i64) -> FieldElement {
        self.with(self.raw.sub_int(&BigInt::from(-k)))
    }

    pub fn scale_rational(&self, k: &BigRational) -> FieldElement {
        let raw = Raw {
            num: self.raw.num.iter().map(|c| c * k.numer()).collect(),
            den: &self.raw.den * k.denom(),
        };
        self.with(raw.normalized())
    }

    /// self^n for any integer n (negative powers need self != 0).
    pub fn pow(&self, n: i64) -> Result<FieldElement> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.base.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact sign of the real value.
    pub fn sign(&self) -> Ordering {
        self.base.root().sign(&self.raw.num)
    }

    /// Exact floor of the real value.
    pub fn floor(&self) -> BigInt {
        self.base.root().floor_of(&self.raw.num, &self.raw.den)
    }

    /// |self| as an element.
    pub fn abs_value(&self) -> FieldElement {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison of real values.
    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        (self - other).sign()
    }

    pub fn to_f64(&self) -> f64 {
        self.base.root().approx(&self.raw.num, &self.raw.den)
    }

    pub fn norm(&self) -> BigRational {
        self.raw.norm(self.base.minpoly())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.base.same_as(&other.base) && self.raw == other.raw
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.raw.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial in `b` with rational coefficients, e.g. `3*b-1` or `1/2*b-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_monomials(&self.coeffs(), "b"))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field operands from different base contexts")
            }
        }

        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.with(self.raw.neg())
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}
