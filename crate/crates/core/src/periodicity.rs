//! Base classification, the period multiplier N with ((-b)^N - 1)/q in Z[b],
//! most-significant-digit bounds, certificates of pure periodicity and the
//! empirical interval of pure periodicity around 0.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic::{BaseContext, FieldElement};
use crate::digits::{self, DigitWord, EventuallyPeriodicString};
use crate::error::{Error, Result};
use crate::expansion::{self, boundary_strings, evaluate, evaluate_word, expand, expand_real, DEFAULT_BUDGET};
use crate::quadratic;

/// |conjugate| within this distance of 1 counts as on the unit circle.
pub const SALEM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralClass {
    Pisot,
    Salem,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjugateSign {
    Positive,
    Negative,
    Complex,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseClassification {
    pub is_algebraic_integer: bool,
    pub is_unit: bool,
    pub spectral_class: SpectralClass,
    /// Spectral class and non-quadratic signs come from floating-point disks.
    pub spectral_numerical: bool,
    pub conjugate_signs: Vec<ConjugateSign>,
    pub conjugate_signs_exact: bool,
    /// Left endpoint expansion is eventually periodic within the budget.
    pub yrrap: bool,
    /// Unit and Pisot or Salem: the necessary conditions for an interval of
    /// pure periodicity around 0 hold.
    pub finiteness_candidate: bool,
    /// A negative real conjugate rules out positive purely periodic rationals.
    pub excludes_positive_rationals: bool,
}

pub fn classify_base(base: &BaseContext, budget: usize) -> BaseClassification {
    let conj = base.conjugates();
    let all_inside = conj
        .iter()
        .all(|c| c.modulus() + c.radius < 1.0 - SALEM_TOLERANCE);
    let none_outside = conj
        .iter()
        .all(|c| c.modulus() - c.radius <= 1.0 + SALEM_TOLERANCE);
    let some_on_circle = conj
        .iter()
        .any(|c| (c.modulus() - 1.0).abs() <= SALEM_TOLERANCE + c.radius);
    let spectral_class = if all_inside {
        SpectralClass::Pisot
    } else if none_outside && some_on_circle {
        SpectralClass::Salem
    } else {
        SpectralClass::Neither
    };
    let (conjugate_signs, exact) = match base.quadratic_conjugate_of_beta() {
        Some(bc) => {
            let s = if bc.sign() == Ordering::Less {
                ConjugateSign::Negative
            } else {
                ConjugateSign::Positive
            };
            (vec![s], true)
        }
        None => {
            let signs = conj
                .iter()
                .map(|c| {
                    let c = c.to_f64();
                    if c.im.abs() > c.radius {
                        ConjugateSign::Complex
                    } else if c.re < 0.0 {
                        ConjugateSign::Negative
                    } else {
                        ConjugateSign::Positive
                    }
                })
                .collect();
            (signs, false)
        }
    };
    let is_unit = base.is_unit();
    BaseClassification {
        is_algebraic_integer: true,
        is_unit,
        spectral_class,
        spectral_numerical: true,
        excludes_positive_rationals: conjugate_signs.contains(&ConjugateSign::Negative),
        conjugate_signs,
        conjugate_signs_exact: exact,
        yrrap: boundary_strings(base, budget).is_ok(),
        finiteness_candidate: is_unit && spectral_class != SpectralClass::Neither,
    }
}

/// Companion matrix with first row (-c_{d-1}, ..., -c_0) and ones below the
/// diagonal, so that A (b^{d-1}, ..., 1)^T = b (b^{d-1}, ..., 1)^T.
pub fn companion_matrix(base: &BaseContext) -> Vec<Vec<BigInt>> {
    let p = base.minpoly();
    let d = p.degree();
    let mut a = vec![vec![BigInt::zero(); d]; d];
    for j in 0..d {
        a[0][j] = -p.coeff(d - 1 - j);
    }
    for i in 1..d {
        a[i][i - 1] = BigInt::one();
    }
    a
}

fn mat_mul_mod(a: &[Vec<u128>], b: &[Vec<u128>], q: u128) -> Vec<Vec<u128>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(0u128, |acc, k| (acc + a[i][k] * b[k][j]) % q))
                .collect()
        })
        .collect()
}

/// Least even N > 0 with A^N = I modulo q, for a unit base.
pub fn find_period_multiplier(q: u64, base: &BaseContext) -> Result<u64> {
    if q == 0 {
        return Err(Error::OutOfRange("q must be positive".into()));
    }
    if !base.is_unit() {
        return Err(Error::NonUnit(base.minpoly().coeff(0).to_string()));
    }
    if q > u64::from(u32::MAX) {
        return Err(Error::OutOfRange(format!("q = {q} too large")));
    }
    let qb = BigInt::from(q);
    let q = u128::from(q);
    let a: Vec<Vec<u128>> = companion_matrix(base)
        .iter()
        .map(|row| row.iter().map(|c| c.mod_floor(&qb).to_u128().expect("reduced")).collect())
        .collect();
    let d = a.len();
    let identity: Vec<Vec<u128>> = (0..d)
        .map(|i| (0..d).map(|j| u128::from(i == j) % q).collect())
        .collect();
    // The order divides |GL_d(Z/q)| < q^(d*d).
    let ceiling = (q as f64).powi((d * d) as i32).min(u64::MAX as f64) as u64;
    let mut power = a.clone();
    let mut k = 1u64;
    while power != identity {
        if k >= ceiling {
            return Err(Error::Inconsistent(format!("no matrix order found below {ceiling}")));
        }
        power = mat_mul_mod(&power, &a, q);
        k += 1;
    }
    Ok(if k.is_multiple_of(2) { k } else { 2 * k })
}

#[derive(Clone, Debug, Serialize)]
pub struct MsdReport {
    /// Leading exponent of the expansion.
    pub n: i64,
    /// Least k of the magnitude bound.
    pub k: i64,
    /// n has the parity of the sign of z and respects the bound from k.
    pub parity_ok: bool,
}

/// Leading exponent of z and the check that z > 0 gives n even, n <= 2k with
/// k least such that z (b+1) < b^(2k+2), and z < 0 gives n odd, n <= 2k-1 with
/// k least such that -z (b+1) < b^(2k+1).
pub fn msd(z: &FieldElement, budget: usize) -> Result<MsdReport> {
    if z.is_zero() {
        return Err(Error::Hypothesis("msd needs z != 0".into()));
    }
    let base = z.base();
    let n = expand_real(z, budget)?.leading_exponent;
    let positive = z.sign() == Ordering::Greater;
    let scaled = &z.abs_value() * &base.beta().add_int(1);
    let offset = if positive { 2 } else { 1 };
    let holds = |k: i64| -> bool {
        let bound = base.beta().pow(2 * k + offset).expect("b != 0");
        scaled.cmp_value(&bound) == Ordering::Less
    };
    let mut k = 0i64;
    if holds(k) {
        while holds(k - 1) {
            k -= 1;
        }
    } else {
        while !holds(k) {
            k += 1;
        }
    }
    let parity_ok = if positive {
        n.rem_euclid(2) == 0 && n <= 2 * k
    } else {
        n.rem_euclid(2) == 1 && n < 2 * k
    };
    Ok(MsdReport { n, k, parity_ok })
}

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    /// Orbit states per expansion.
    pub expand_budget: usize,
    /// How many times N may be doubled after the first candidate.
    pub max_doublings: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            expand_budget: DEFAULT_BUDGET,
            max_doublings: 12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PeriodCertificate {
    pub x: BigRational,
    /// Period length, even.
    pub n_period: u64,
    /// ((-b)^N - 1) x
    pub z: FieldElement,
    /// a_n ... a_0, the digits of z.
    pub digit_word: DigitWord,
    pub leading_exponent: i64,
    /// (0^{N-1-n} a_n ... a_0)^ω
    pub expansion: EventuallyPeriodicString,
    pub doublings: u32,
    pub block: BlockSource,
}

/// Where the period block came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockSource {
    /// The greedy expansion of z, zero-padded to length N.
    ZExpansion,
    /// The first N digits of x. Used when the padded greedy word of z is
    /// inadmissible: z can also have a non-greedy representation (the
    /// period block) whose finite form ends in a forbidden tail.
    OrbitPrefix,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    x: String,
    #[serde(rename = "N")]
    n_period: u64,
    z: String,
    digit_word: &'a [u32],
    leading_exponent: i64,
    period: &'a [u32],
    doublings: u32,
    block: BlockSource,
}

impl Serialize for PeriodCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            x: self.x.to_string(),
            n_period: self.n_period,
            z: self.z.to_string(),
            digit_word: &self.digit_word,
            leading_exponent: self.leading_exponent,
            period: self.expansion.period(),
            doublings: self.doublings,
            block: self.block,
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefusalReason {
    ZNotInZmb,
    NTooLarge,
    PeriodizationInadmissible,
    Budget,
}

impl RefusalReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RefusalReason::ZNotInZmb => "z-not-in-Zmb",
            RefusalReason::NTooLarge => "n-too-large",
            RefusalReason::PeriodizationInadmissible => "periodization-inadmissible",
            RefusalReason::Budget => "budget",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Refusal {
    #[serde(serialize_with = "reason_str")]
    pub reason: RefusalReason,
    /// The last N tried.
    #[serde(rename = "N")]
    pub n_period: u64,
    pub doublings: u32,
}

fn reason_str<S: serde::Serializer>(r: &RefusalReason, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(r.as_str())
}

#[derive(Clone, Debug)]
pub enum CertificateOutcome {
    Certified(PeriodCertificate),
    Refused(Refusal),
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&PeriodCertificate> {
        match self {
            CertificateOutcome::Certified(c) => Some(c),
            CertificateOutcome::Refused(_) => None,
        }
    }
}

/// Above this N the quadratic conjugate test first tries a floating-point
/// separation bound before falling back to exact arithmetic.
const EXACT_CONJUGATE_LIMIT: u64 = 256;

/// For quadratic bases, whether z = ((-b)^N - 1) x lies in Z_{-b}, decided on
/// z' = (b'^N - 1) x (N even) without forming z when b'^N is negligible.
fn quadratic_zmb(x: &FieldElement, n_period: u64, window: &quadratic::Window) -> bool {
    let base = x.base();
    let bc = base.quadratic_conjugate_of_beta().expect("quadratic base");
    if n_period > EXACT_CONJUGATE_LIMIT {
        // z' - e = (-x - e) + x b'^N with |b'^N| = |b'|^N tiny.
        let log_tail = x.to_f64().abs().ln() + n_period as f64 * bc.to_f64().abs().ln();
        let decide = |e: &FieldElement, closed: bool, want: Ordering| -> Option<bool> {
            let g = &(-x) - e;
            let gf = g.to_f64();
            if g.is_zero() || gf.abs() < 1e-9 || gf.abs().ln() < log_tail + 1.0 {
                return None;
            }
            let s = g.sign();
            Some(s == want || (closed && s == Ordering::Equal))
        };
        let lo = decide(&window.lo, window.lo_closed, Ordering::Greater);
        let hi = decide(&window.hi, false, Ordering::Less);
        if let (Some(lo), Some(hi)) = (lo, hi) {
            return lo && hi;
        }
    }
    let zc = &bc.pow(n_period as i64).expect("b' != 0").add_int(-1) * x;
    window.contains(&zc)
}

/// Certificate that the rational x has a purely periodic expansion, built
/// from z = ((-b)^N - 1) x for N = N_0, 2N_0, 4N_0, ...
pub fn pure_periodic_certificate(x: &BigRational, base: &BaseContext, budgets: Budgets) -> Result<CertificateOutcome> {
    let xe = base.from_rational(x);
    if !base.in_interval(&xe) {
        return Err(Error::OutsideInterval(x.to_string()));
    }
    if x.is_zero() {
        return Ok(CertificateOutcome::Certified(PeriodCertificate {
            x: x.clone(),
            n_period: 2,
            z: base.zero(),
            digit_word: Vec::new(),
            leading_exponent: -1,
            expansion: EventuallyPeriodicString::zero(),
            doublings: 0,
            block: BlockSource::ZExpansion,
        }));
    }
    let q = x
        .denom()
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("denominator of {x} too large")))?;
    let n0 = find_period_multiplier(q, base)?;
    let window = quadratic::zmb_window(base).ok();
    let refs = boundary_strings(base, budgets.expand_budget)?;
    let neg_beta = -&base.beta();
    let mut reason = RefusalReason::ZNotInZmb;
    let mut n_period = n0;
    for j in 0..=budgets.max_doublings {
        n_period = n0 << j;
        if let Some(w) = &window {
            if !quadratic_zmb(&xe, n_period, w) {
                reason = RefusalReason::ZNotInZmb;
                continue;
            }
        }
        let z = &neg_beta.pow(n_period as i64)?.add_int(-1) * &xe;
        if !z.is_integral() {
            return Err(Error::Inconsistent(format!("((-b)^{n_period} - 1) * {x} is not in Z[b]")));
        }
        let exp = match expand_real(&z, budgets.expand_budget) {
            Ok(e) => e,
            Err(Error::BudgetExhausted(_)) => {
                reason = RefusalReason::Budget;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !exp.is_integer() {
            if window.is_some() {
                return Err(Error::Inconsistent(format!(
                    "conjugate window and expansion disagree on z = {z}"
                )));
            }
            reason = RefusalReason::ZNotInZmb;
            continue;
        }
        let n = exp.leading_exponent;
        if n >= n_period as i64 {
            reason = RefusalReason::NTooLarge;
            continue;
        }
        let mut word = exp.digits.prefix((n + 1) as usize);
        let mut period = vec![0; (n_period as i64 - 1 - n) as usize];
        period.extend_from_slice(&word);
        let mut periodic = EventuallyPeriodicString::periodic(period)?;
        let mut block = BlockSource::ZExpansion;
        if !digits::is_admissible(&periodic, &refs) {
            let Some(alt) = orbit_block(&xe, n_period, &refs, budgets.expand_budget)? else {
                reason = RefusalReason::PeriodizationInadmissible;
                continue;
            };
            if evaluate_word(&alt, base) != z {
                return Err(Error::Inconsistent(format!("period block of {x} does not evaluate to z")));
            }
            periodic = EventuallyPeriodicString::periodic(alt.clone())?;
            word = alt;
            block = BlockSource::OrbitPrefix;
        }
        if evaluate(&periodic, -1, base) != xe {
            return Err(Error::Inconsistent(format!("certificate for {x} does not evaluate back")));
        }
        match expand(&xe, budgets.expand_budget) {
            Ok(direct) if direct != periodic => {
                return Err(Error::Inconsistent(format!(
                    "certificate {periodic} differs from the expansion {direct} of {x}"
                )));
            }
            _ => {}
        }
        return Ok(CertificateOutcome::Certified(PeriodCertificate {
            x: x.clone(),
            n_period,
            z,
            digit_word: word,
            leading_exponent: n,
            expansion: periodic,
            doublings: j,
            block,
        }));
    }
    Ok(CertificateOutcome::Refused(Refusal {
        reason,
        n_period,
        doublings: budgets.max_doublings,
    }))
}

/// The first N digits w of x when (w)^ω is admissible and evaluates to x.
fn orbit_block(
    x: &FieldElement,
    n_period: u64,
    refs: &digits::ReferenceStrings,
    budget: usize,
) -> Result<Option<DigitWord>> {
    let len = usize::try_from(n_period).map_err(|_| Error::BudgetExhausted(budget))?;
    if len > budget {
        return Ok(None);
    }
    let w = expansion::expand_prefix(x, len)?;
    let s = EventuallyPeriodicString::periodic(w.clone())?;
    if digits::is_admissible(&s, refs) && evaluate(&s, -1, x.base()) == *x {
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

/// Whether x returns to itself under the transformation.
pub fn is_purely_periodic(x: &FieldElement, budget: usize) -> Result<bool> {
    let base = x.base();
    if !base.in_interval(x) {
        return Err(Error::OutsideInterval(x.to_string()));
    }
    let mut seen = HashSet::new();
    let mut cur = x.clone();
    loop {
        if seen.len() >= budget {
            return Err(Error::BudgetExhausted(budget));
        }
        seen.insert(cur.clone());
        cur = expansion::step(&cur)?.1;
        if cur == *x {
            return Ok(true);
        }
        if seen.contains(&cur) {
            return Ok(false);
        }
    }
}

/// Reduced p/q in the interval with q <= qmax, ordered by q then p; 0 first.
pub fn rationals_in_interval(base: &BaseContext, qmax: u64) -> Vec<BigRational> {
    let l = base.left_endpoint();
    let r = base.right_endpoint();
    let mut out = Vec::new();
    for q in 1..=qmax {
        let qi = BigInt::from(q);
        let qr = BigRational::from_integer(qi.clone());
        // endpoints are irrational, so p/q > l and p/q < r
        let p_min: BigInt = l.scale_rational(&qr).floor() + 1;
        let p_max = r.scale_rational(&qr).floor();
        let mut p = p_min;
        while p <= p_max {
            if p.gcd(&qi).is_one() {
                out.push(BigRational::new(p.clone(), qi.clone()));
            }
            p += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaBound {
    /// No counterexample on this side: the bound is the interval end.
    IntervalEnd,
    /// The counterexample closest to 0 on this side.
    At(BigRational),
}

#[derive(Clone, Debug)]
pub struct GammaReport {
    pub qmax: u64,
    pub scanned: usize,
    pub neg_bound: GammaBound,
    pub pos_bound: GammaBound,
    /// Rationals without a purely periodic expansion, increasing.
    pub counterexamples: Vec<BigRational>,
    /// First rational whose orbit exceeded the budget; the scan stops there.
    pub aborted_at: Option<BigRational>,
    /// Longest zero run of the left endpoint expansion, if it does not end in 0^ω.
    pub zero_run: Option<usize>,
    /// Least q with (b+1)/b^q < 1.
    pub aux_q: u32,
}

impl GammaReport {
    /// Magnitudes of the bounds as f64, interval ends substituted.
    pub fn bounds_f64(&self, base: &BaseContext) -> (f64, f64) {
        let f = |b: &GammaBound, end: f64| match b {
            GammaBound::IntervalEnd => end,
            GammaBound::At(x) => x.abs().to_f64().unwrap_or(f64::NAN),
        };
        (
            f(&self.neg_bound, base.left_endpoint().to_f64().abs()),
            f(&self.pos_bound, base.right_endpoint().to_f64()),
        )
    }
}

/// Largest interval around 0 on which every scanned rational is purely periodic.
pub fn empirical_gamma(base: &BaseContext, qmax: u64, budget: usize) -> Result<GammaReport> {
    if qmax < 2 {
        return Err(Error::OutOfRange("qmax must be >= 2".into()));
    }
    let xs = rationals_in_interval(base, qmax);
    let verdicts: Vec<Result<bool>> = xs
        .par_iter()
        .map(|x| is_purely_periodic(&base.from_rational(x), budget))
        .collect();
    let mut counterexamples = Vec::new();
    let mut aborted_at = None;
    let mut scanned = 0;
    for (x, v) in xs.iter().zip(verdicts) {
        match v {
            Ok(true) => {}
            Ok(false) => counterexamples.push(x.clone()),
            Err(Error::BudgetExhausted(_)) => {
                aborted_at = Some(x.clone());
                break;
            }
            Err(e) => return Err(e),
        }
        scanned += 1;
    }
    counterexamples.sort();
    let neg_bound = counterexamples
        .iter()
        .filter(|x| x.is_negative())
        .max()
        .map_or(GammaBound::IntervalEnd, |x| GammaBound::At(x.clone()));
    let pos_bound = counterexamples
        .iter()
        .filter(|x| x.is_positive())
        .min()
        .map_or(GammaBound::IntervalEnd, |x| GammaBound::At(x.clone()));
    let zero_run = boundary_strings(base, budget)
        .ok()
        .and_then(|r| digits::longest_zero_run(&r.lower).ok());
    let beta_plus_one = base.beta().add_int(1);
    let mut aux_q = 0u32;
    while beta_plus_one.cmp_value(&base.beta().pow(i64::from(aux_q))?) != Ordering::Less {
        aux_q += 1;
    }
    Ok(GammaReport {
        qmax,
        scanned,
        neg_bound,
        pos_bound,
        counterexamples,
        aborted_at,
        zero_run,
        aux_q,
    })
}
