//! Exact arithmetic in Q(b) for a real algebraic base b > 1.
//!
//! A [`BaseContext`] owns the minimal polynomial, a certified isolating
//! interval for b, the alphabet bound floor(b), the endpoints of the
//! interval [-b/(b+1), 1/(b+1)) and approximations of the other conjugates.
//! [`FieldElement`]s are canonical coefficient vectors tied to a context.

mod conjugates;
mod factor;
mod field;
mod poly;
mod real;

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use conjugates::{complex_roots, ComplexApprox, ComplexF64, TARGET_RADIUS};
pub use factor::{factor_monic, is_irreducible};
pub use field::FieldElement;
pub use poly::IntPoly;

use crate::digits::ReferenceStrings;
use crate::error::{Error, Result};
use crate::text::parse_monomials;
use field::Raw;
use real::RealRoot;

/// Which family a quadratic base belongs to: b^2 = m b - 1 or b^2 = m b + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadFamily {
    Minus,
    Plus,
}

impl fmt::Display for QuadFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadFamily::Minus => "minus",
            QuadFamily::Plus => "plus",
        })
    }
}

impl std::str::FromStr for QuadFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" => Ok(QuadFamily::Minus),
            "plus" => Ok(QuadFamily::Plus),
            _ => Err(Error::Parse(format!("unknown family {s:?} (expected minus|plus)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "m", rename_all = "kebab-case")]
pub enum Family {
    /// b^2 = m b - 1, m >= 3 (quadratic Pisot unit with positive conjugate)
    QuadraticMinus(u32),
    /// b^2 = m b + 1, m >= 1 (quadratic Pisot unit with negative conjugate)
    QuadraticPlus(u32),
    General,
}

impl Family {
    pub fn quadratic(self) -> Option<(QuadFamily, u32)> {
        match self {
            Family::QuadraticMinus(m) => Some((QuadFamily::Minus, m)),
            Family::QuadraticPlus(m) => Some((QuadFamily::Plus, m)),
            Family::General => None,
        }
    }

    fn detect(p: &IntPoly) -> Family {
        if p.degree() != 2 {
            return Family::General;
        }
        let c1 = -p.coeff(1);
        let Some(m) = c1.to_u32() else {
            return Family::General;
        };
        let c0 = p.coeff(0);
        if c0.is_one() && m >= 3 {
            Family::QuadraticMinus(m)
        } else if c0 == -BigInt::one() && m >= 1 {
            Family::QuadraticPlus(m)
        } else {
            Family::General
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::QuadraticMinus(m) => write!(f, "quadratic-minus({m})"),
            Family::QuadraticPlus(m) => write!(f, "quadratic-plus({m})"),
            Family::General => f.write_str("general"),
        }
    }
}

/// Which real root of the polynomial to take as the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootHint {
    LargestReal,
    /// The unique root in the half-open interval (lo, hi].
    Interval(BigRational, BigRational),
}

struct BaseInner {
    minpoly: IntPoly,
    root: RealRoot,
    digit_bound: u32,
    family: Family,
    conjugates: Vec<ComplexApprox>,
    left: Raw,
    right: Raw,
    beta_over_beta_plus_one: Raw,
    reference_strings: OnceLock<ReferenceStrings>,
}

/// Shared handle to an immutable base; cloning is cheap.
#[derive(Clone)]
pub struct BaseContext {
    inner: Arc<BaseInner>,
}

impl fmt::Debug for BaseContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseContext")
            .field("minpoly", &self.inner.minpoly.to_string())
            .field("beta", &self.beta_f64())
            .field("family", &self.inner.family)
            .finish()
    }
}

/// Builds a base from a monic irreducible polynomial and a choice of root > 1.
pub fn make_base(minpoly: &IntPoly, hint: &RootHint) -> Result<BaseContext> {
    if minpoly.is_zero() || minpoly.degree() == 0 {
        return Err(Error::OutOfRange("polynomial must have degree >= 1".into()));
    }
    if !minpoly.is_monic() {
        return Err(Error::NotMonic(minpoly.leading().to_string()));
    }
    if minpoly.degree() == 1 {
        return Err(Error::RationalBase(1));
    }
    let factors = factor_monic(minpoly)?;
    if factors.len() > 1 {
        let list: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
        return Err(Error::Reducible {
            factors: list.join("*"),
        });
    }
    let (lo, hi) = select_root(minpoly, hint)?;
    Ok(BaseContext::from_isolated(minpoly.clone(), lo, hi))
}

/// Finds an isolating interval (lo, hi) with lo >= 1 for the requested root.
fn select_root(p: &IntPoly, hint: &RootHint) -> Result<(BigRational, BigRational)> {
    let one = BigRational::one();
    let (lo, hi) = match hint {
        RootHint::LargestReal => p
            .isolate_real_roots()
            .pop()
            .ok_or(Error::NoRootAboveOne)?,
        RootHint::Interval(lo, hi) => {
            if p.sign_at(lo) == Ordering::Equal || p.sign_at(hi) == Ordering::Equal {
                return Err(Error::HintNotIsolating {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    count: usize::MAX,
                });
            }
            let count = p.count_roots(lo, hi);
            if count != 1 {
                return Err(Error::HintNotIsolating {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    count,
                });
            }
            (lo.clone(), hi.clone())
        }
    };
    if hi <= one {
        return Err(Error::NoRootAboveOne);
    }
    if lo < one {
        // 1 is not a root of an irreducible polynomial of degree >= 2.
        if p.count_roots(&one, &hi) != 1 {
            return Err(Error::NoRootAboveOne);
        }
        return Ok((one, hi));
    }
    Ok((lo, hi))
}

impl BaseContext {
    pub(crate) fn from_isolated(minpoly: IntPoly, lo: BigRational, hi: BigRational) -> BaseContext {
        let d = minpoly.degree();
        let root = RealRoot::new(minpoly.clone(), lo, hi);
        let digit_bound = root
            .floor()
            .to_u32()
            .expect("floor(b) fits in u32");
        let family = Family::detect(&minpoly);

        // conjugates: every root except the one nearest b on the real line
        let beta_f = root.to_f64();
        let mut all = complex_roots(&minpoly, TARGET_RADIUS);
        let own = all
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let da = (a.to_f64().re - beta_f).hypot(a.to_f64().im);
                let db = (b.to_f64().re - beta_f).hypot(b.to_f64().im);
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            })
            .map(|(i, _)| i)
            .expect("degree >= 2");
        all.remove(own);

        let beta = Raw::beta(d, &minpoly);
        let beta_plus_one = beta.add(&Raw::from_int(d, BigInt::one()));
        let right = beta_plus_one
            .inverse(&minpoly)
            .expect("b + 1 != 0 for b > 1");
        let beta_over = beta.mul(&right, &minpoly);
        let left = beta_over.neg();

        BaseContext {
            inner: Arc::new(BaseInner {
                minpoly,
                root,
                digit_bound,
                family,
                conjugates: all,
                left,
                right,
                beta_over_beta_plus_one: beta_over,
                reference_strings: OnceLock::new(),
            }),
        }
    }

    /// Parses a polynomial (`[1,-3,1]` or `x^2-3*x+1`) and takes its largest real root.
    pub fn from_poly_str(s: &str) -> Result<BaseContext> {
        make_base(&s.parse()?, &RootHint::LargestReal)
    }

    /// b^2 = m b - 1 (minus) or b^2 = m b + 1 (plus).
    pub fn quadratic(family: QuadFamily, m: u32) -> Result<BaseContext> {
        let m = i64::from(m);
        let p = match family {
            QuadFamily::Minus => {
                if m < 3 {
                    return Err(Error::OutOfRange(format!("minus family needs m >= 3, got {m}")));
                }
                IntPoly::from_descending_i64(&[1, -m, 1])
            }
            QuadFamily::Plus => {
                if m < 1 {
                    return Err(Error::OutOfRange(format!("plus family needs m >= 1, got {m}")));
                }
                IntPoly::from_descending_i64(&[1, -m, -1])
            }
        };
        make_base(&p, &RootHint::LargestReal)
    }

    pub(crate) fn same_as(&self, other: &BaseContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.minpoly == other.inner.minpoly && self.inner.root.isolating_interval() == other.inner.root.isolating_interval()
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.inner.minpoly
    }

    pub fn degree(&self) -> usize {
        self.inner.minpoly.degree()
    }

    pub(crate) fn root(&self) -> &RealRoot {
        &self.inner.root
    }

    pub fn root_interval(&self) -> (BigRational, BigRational) {
        let (lo, hi) = self.inner.root.isolating_interval();
        (lo.clone(), hi.clone())
    }

    /// floor(b), the largest digit.
    pub fn digit_bound(&self) -> u32 {
        self.inner.digit_bound
    }

    pub fn family(&self) -> Family {
        self.inner.family
    }

    pub fn conjugates(&self) -> &[ComplexApprox] {
        &self.inner.conjugates
    }

    pub fn beta_f64(&self) -> f64 {
        self.inner.root.to_f64()
    }

    fn element(&self, raw: Raw) -> FieldElement {
        FieldElement::from_raw(self, raw)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(Raw::zero(self.degree()))
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        self.element(Raw::from_int(self.degree(), BigInt::from(v)))
    }

    pub fn from_bigint(&self, v: BigInt) -> FieldElement {
        self.element(Raw::from_int(self.degree(), v))
    }

    pub fn from_rational(&self, v: &BigRational) -> FieldElement {
        self.element(Raw::from_rational(self.degree(), v))
    }

    pub fn from_ratio(&self, p: i64, q: i64) -> FieldElement {
        self.from_rational(&BigRational::new(p.into(), q.into()))
    }

    pub fn beta(&self) -> FieldElement {
        self.element(Raw::beta(self.degree(), self.minpoly()))
    }

    /// c_0 + c_1 b + ... ; extra coefficients beyond the degree are reduced.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> FieldElement {
        let d = self.degree();
        if coeffs.len() <= d {
            return self.element(Raw::from_rationals(d, coeffs));
        }
        // Horner in b for higher-degree input.
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = &acc.mul_beta() + &self.from_rational(c);
        }
        acc
    }

    pub fn from_int_coeffs(&self, coeffs: &[i64]) -> FieldElement {
        let c: Vec<BigRational> = coeffs
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        self.from_coeffs(&c)
    }

    /// Parses `p/q` or a polynomial in `b` / `beta` with rational coefficients.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (c, e) in parse_monomials(s, &["beta", "b"])? {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigRational::zero());
            }
            coeffs[e] += c;
        }
        Ok(self.from_coeffs(&coeffs))
    }

    /// -b/(b+1), the closed left end of the interval.
    pub fn left_endpoint(&self) -> FieldElement {
        self.element(self.inner.left.clone())
    }

    /// 1/(b+1), the open right end of the interval.
    pub fn right_endpoint(&self) -> FieldElement {
        self.element(self.inner.right.clone())
    }

    /// b/(b+1), the shift inside the floor of the transformation.
    pub(crate) fn shift_constant(&self) -> &Raw {
        &self.inner.beta_over_beta_plus_one
    }

    pub(crate) fn reference_cache(&self) -> &OnceLock<ReferenceStrings> {
        &self.inner.reference_strings
    }

    /// Whether left <= x < right, decided exactly.
    pub fn in_interval(&self, x: &FieldElement) -> bool {
        x.cmp_value(&self.left_endpoint()) != Ordering::Less
            && x.cmp_value(&self.right_endpoint()) == Ordering::Less
    }

    /// Whether left < x < right.
    pub fn in_open_interval(&self, x: &FieldElement) -> bool {
        x.cmp_value(&self.left_endpoint()) == Ordering::Greater
            && x.cmp_value(&self.right_endpoint()) == Ordering::Less
    }

    /// Whether a rational lies in the interval (rationals never hit the
    /// irrational endpoints, but the test stays exact either way).
    pub fn contains_rational(&self, x: &BigRational) -> bool {
        self.in_interval(&self.from_rational(x))
    }

    /// Constant coefficient of the minimal polynomial is +-1.
    pub fn is_unit(&self) -> bool {
        self.minpoly().coeff(0).abs().is_one()
    }

    /// The other root of a quadratic minimal polynomial x^2 + c1 x + c0,
    /// as an element of Q(b): b' = -c1 - b.
    pub fn quadratic_conjugate_of_beta(&self) -> Option<FieldElement> {
        if self.degree() != 2 {
            return None;
        }
        let c1 = self.minpoly().coeff(1);
        Some(&self.from_bigint(-c1) - &self.beta())
    }
}

/// Field operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(op: FieldOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
    }
}

/// Exact sign and floor of the real value of z.
pub fn floor_and_sign(z: &FieldElement) -> (Ordering, BigInt) {
    (z.sign(), z.floor())
}

#[derive(Clone, Debug)]
pub struct GaloisData {
    /// z evaluated at each non-identity embedding, with an error radius.
    pub conjugate_images: Vec<ComplexF64>,
    /// Exact image under b -> b' for quadratic bases.
    pub exact_quadratic_conjugate: Option<FieldElement>,
    /// Product of all conjugates of z.
    pub norm: BigRational,
}

/// Substitutes b -> b' exactly in a quadratic field.
pub fn quadratic_conjugate(z: &FieldElement) -> Option<FieldElement> {
    let bc = z.base().quadratic_conjugate_of_beta()?;
    let c = z.coeffs();
    Some(&z.base().from_rational(&c[0]) + &bc.scale_rational(&c[1]))
}

pub fn galois_data(z: &FieldElement) -> GaloisData {
    let coeffs: Vec<f64> = z
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let images = z
        .base()
        .conjugates()
        .iter()
        .map(|root| {
            let w = root.to_f64();
            let (mut vr, mut vi) = (0.0f64, 0.0f64);
            let (mut dr, mut di) = (0.0f64, 0.0f64);
            let mut mag = 0.0f64;
            let modulus = w.re.hypot(w.im);
            for (i, c) in coeffs.iter().enumerate().rev() {
                let ndr = dr * w.re - di * w.im + vr;
                di = dr * w.im + di * w.re + vi;
                dr = ndr;
                let nvr = vr * w.re - vi * w.im + c;
                vi = vr * w.im + vi * w.re;
                vr = nvr;
                mag += c.abs() * modulus.powi(i as i32);
            }
            // derivative bound times the root radius, plus rounding in the evaluation
            let radius = dr.hypot(di) * w.radius * 2.0 + mag * 8.0 * f64::EPSILON;
            ComplexF64 {
                re: vr,
                im: vi,
                radius,
            }
        })
        .collect();
    GaloisData {
        conjugate_images: images,
        exact_quadratic_conjugate: quadratic_conjugate(z),
        norm: z.norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn make_base_examples() {
        let b = BaseContext::from_poly_str("x^2-3*x+1").unwrap();
        assert!((b.beta_f64() - 2.618_033_988_749_895).abs() < 1e-12);
        assert_eq!(b.digit_bound(), 2);
        assert_eq!(b.family(), Family::QuadraticMinus(3));

        let g = BaseContext::from_poly_str("[1,-1,-1]").unwrap();
        assert!((g.beta_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert_eq!(g.digit_bound(), 1);
        assert_eq!(g.family(), Family::QuadraticPlus(1));

        assert_eq!(BaseContext::from_poly_str("x-2").unwrap_err(), Error::RationalBase(1));
    }

    #[test]
    fn make_base_errors() {
        assert!(matches!(
            BaseContext::from_poly_str("2*x^2-3*x+1"),
            Err(Error::NotMonic(_))
        ));
        assert!(matches!(
            BaseContext::from_poly_str("x^2-5*x+6"),
            Err(Error::Reducible { .. })
        ));
        // roots of x^2 + x - 1 are 0.618 and -1.618
        assert_eq!(
            BaseContext::from_poly_str("x^2+x-1").unwrap_err(),
            Error::NoRootAboveOne
        );
        // x^2 + 1 has no real roots
        assert_eq!(
            BaseContext::from_poly_str("x^2+1").unwrap_err(),
            Error::NoRootAboveOne
        );
    }

    #[test]
    fn root_hint_interval() {
        // x^3 - 5x^2 + 6x - 1 has roots ~0.198, 1.555, 3.247
        let p = IntPoly::from_descending_i64(&[1, -5, 6, -1]);
        let b = make_base(&p, &RootHint::Interval(r(1, 1), r(2, 1))).unwrap();
        assert!((b.beta_f64() - 1.554_958_132_087_371).abs() < 1e-12);
        let largest = make_base(&p, &RootHint::LargestReal).unwrap();
        assert!((largest.beta_f64() - 3.246_979_603_717_467).abs() < 1e-12);
        let err = make_base(&p, &RootHint::Interval(r(0, 1), r(4, 1))).unwrap_err();
        assert!(matches!(err, Error::HintNotIsolating { count: 3, .. }));
        let err = make_base(&p, &RootHint::Interval(r(0, 1), r(1, 2))).unwrap_err();
        assert_eq!(err, Error::NoRootAboveOne);
    }

    #[test]
    fn field_arith_examples() {
        let b = BaseContext::quadratic(QuadFamily::Minus, 3).unwrap();
        let beta = b.beta();
        assert_eq!(
            field_arith(FieldOp::Mul, &beta, &beta).unwrap(),
            b.from_int_coeffs(&[-1, 3])
        );
        let g = BaseContext::quadratic(QuadFamily::Plus, 1).unwrap();
        assert_eq!(
            field_arith(FieldOp::Div, &g.one(), &g.beta()).unwrap(),
            g.from_int_coeffs(&[-1, 1])
        );
        let sum = field_arith(FieldOp::Add, &b.left_endpoint(), &b.one()).unwrap();
        assert_eq!(sum, b.right_endpoint());
        assert_eq!(
            field_arith(FieldOp::Div, &b.one(), &b.zero()).unwrap_err(),
            Error::DivisionByZero
        );
        assert_eq!(
            field_arith(FieldOp::Add, &b.one(), &g.one()).unwrap_err(),
            Error::ContextMismatch
        );
    }

    #[test]
    fn floor_and_sign_examples() {
        let b = BaseContext::quadratic(QuadFamily::Minus, 3).unwrap();
        assert_eq!(floor_and_sign(&b.zero()), (Ordering::Equal, BigInt::zero()));
        assert_eq!(
            floor_and_sign(&b.left_endpoint()),
            (Ordering::Less, BigInt::from(-1))
        );
        let sq = &b.beta() * &b.beta();
        assert_eq!(floor_and_sign(&sq), (Ordering::Greater, BigInt::from(6)));
    }

    #[test]
    fn galois_examples() {
        let p2 = BaseContext::quadratic(QuadFamily::Plus, 2).unwrap();
        let g = galois_data(&p2.beta());
        let conj = g.exact_quadratic_conjugate.unwrap();
        assert_eq!(conj, p2.from_int_coeffs(&[2, -1]));
        assert!((conj.to_f64() - (1.0 - 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(g.norm, r(-1, 1));
        assert_eq!(g.conjugate_images.len(), 1);
        assert!((g.conjugate_images[0].re - (1.0 - 2f64.sqrt())).abs() < 1e-12);

        let one = galois_data(&p2.one());
        assert_eq!(one.exact_quadratic_conjugate.unwrap(), p2.one());
        assert_eq!(one.norm, r(1, 1));

        let m3 = BaseContext::quadratic(QuadFamily::Minus, 3).unwrap();
        let g = galois_data(&m3.beta());
        let conj = g.exact_quadratic_conjugate.unwrap();
        assert!((conj.to_f64() - 0.381_966_011_250_105_1).abs() < 1e-12);
        assert_eq!(g.norm, r(1, 1));
    }

    #[test]
    fn parse_elements() {
        let b = BaseContext::quadratic(QuadFamily::Minus, 3).unwrap();
        assert_eq!(b.parse_element("-1/2").unwrap(), b.from_ratio(-1, 2));
        assert_eq!(b.parse_element("beta^2").unwrap(), b.from_int_coeffs(&[-1, 3]));
        assert_eq!(b.parse_element("b - 4").unwrap(), b.from_int_coeffs(&[-4, 1]));
        let e = b.from_coeffs(&[r(1, 2), r(-3, 4)]);
        assert_eq!(b.parse_element(&e.to_string()).unwrap(), e);
    }
}
