//! Approximations of all complex roots of an integer polynomial, each with a
//! certified radius: a disk of that radius around the center contains a root.
//!
//! Durand-Kerner in f64 gives starting points; Newton steps in exact dyadic
//! complex arithmetic sharpen them; the radius is the classical bound
//! `n |p(z)| / |p'(z)|` for a degree-n polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::IntPoly;

/// Default target radius for conjugate disks.
pub const TARGET_RADIUS: f64 = 1e-20;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: BigRational,
    pub im: BigRational,
    /// A root lies within this distance of (re, im).
    pub radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexF64 {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl ComplexApprox {
    pub fn to_f64(&self) -> ComplexF64 {
        ComplexF64 {
            re: self.re.to_f64().unwrap_or(f64::NAN),
            im: self.im.to_f64().unwrap_or(f64::NAN),
            radius: self.radius,
        }
    }

    pub fn modulus(&self) -> f64 {
        let sq = &self.re * &self.re + &self.im * &self.im;
        sq.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    fn dist(&self, other: &ComplexApprox) -> f64 {
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        (dr.clone() * dr + di.clone() * di)
            .to_f64()
            .unwrap_or(f64::NAN)
            .sqrt()
    }
}

#[derive(Clone, Debug)]
struct C {
    re: BigRational,
    im: BigRational,
}

impl C {
    fn mul(&self, o: &C) -> C {
        C {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div(&self, o: &C) -> C {
        let n = o.norm_sq();
        C {
            re: (&self.re * &o.re + &self.im * &o.im) / &n,
            im: (&self.im * &o.re - &self.re * &o.im) / &n,
        }
    }

    fn truncate(&self, bits: u64) -> C {
        C {
            re: truncate(&self.re, bits),
            im: truncate(&self.im, bits),
        }
    }
}

fn truncate(x: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    BigRational::new((x * BigRational::from_integer(scale.clone())).floor().to_integer(), scale)
}

fn eval_with_derivative(p: &IntPoly, z: &C) -> (C, C) {
    let mut val = C {
        re: BigRational::zero(),
        im: BigRational::zero(),
    };
    let mut der = val.clone();
    for c in p.ascending().iter().rev() {
        der = der.mul(z);
        der.re += &val.re;
        der.im += &val.im;
        val = val.mul(z);
        val.re += BigRational::from_integer(c.clone());
    }
    (val, der)
}

fn durand_kerner(p: &IntPoly) -> Vec<(f64, f64)> {
    let n = p.degree();
    let lead = p.leading().to_f64().unwrap();
    let coeffs: Vec<f64> = p
        .ascending()
        .iter()
        .map(|c| c.to_f64().unwrap() / lead)
        .collect();
    let eval = |re: f64, im: f64| {
        let (mut vr, mut vi) = (0.0, 0.0);
        for c in coeffs.iter().rev() {
            let nr = vr * re - vi * im + c;
            vi = vr * im + vi * re;
            vr = nr;
        }
        (vr, vi)
    };
    let r = p.cauchy_bound().to_f64().unwrap_or(2.0);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (r * 0.5 * t.cos(), r * 0.5 * t.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let (zr, zi) = z[i];
            let (mut dr, mut di) = (1.0, 0.0);
            for (j, &(wr, wi)) in z.iter().enumerate() {
                if i != j {
                    let (ar, ai) = (zr - wr, zi - wi);
                    let nr = dr * ar - di * ai;
                    di = dr * ai + di * ar;
                    dr = nr;
                }
            }
            let (pr, pi) = eval(zr, zi);
            let den = dr * dr + di * di;
            if den == 0.0 {
                continue;
            }
            let qr = (pr * dr + pi * di) / den;
            let qi = (pi * dr - pr * di) / den;
            z[i] = (zr - qr, zi - qi);
            delta = delta.max(qr.hypot(qi));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// All complex roots of a square-free polynomial, refined until every radius
/// is at most `target` and the disks are pairwise disjoint.
pub fn complex_roots(p: &IntPoly, target: f64) -> Vec<ComplexApprox> {
    let n = p.degree();
    let starts = durand_kerner(p);
    let mut bits = 128u64;
    let mut current: Vec<C> = starts
        .iter()
        .map(|&(re, im)| C {
            re: BigRational::from_float(re).unwrap_or_default(),
            im: BigRational::from_float(im).unwrap_or_default(),
        })
        .collect();
    loop {
        let mut out = Vec::with_capacity(n);
        for z in current.iter_mut() {
            for _ in 0..8 {
                let (v, d) = eval_with_derivative(p, z);
                if d.norm_sq().is_zero() || v.norm_sq().is_zero() {
                    break;
                }
                let step = v.div(&d);
                *z = C {
                    re: &z.re - &step.re,
                    im: &z.im - &step.im,
                }
                .truncate(bits);
            }
            let (v, d) = eval_with_derivative(p, z);
            let radius = if v.norm_sq().is_zero() {
                0.0
            } else if d.norm_sq().is_zero() {
                f64::INFINITY
            } else {
                let ratio = (v.norm_sq() / d.norm_sq()).to_f64().unwrap_or(f64::INFINITY);
                // slack for the f64 conversion
                n as f64 * ratio.sqrt() * (1.0 + 1e-9) + f64::MIN_POSITIVE
            };
            out.push(ComplexApprox {
                re: z.re.clone(),
                im: z.im.clone(),
                radius,
            });
        }
        let disjoint = (0..n).all(|i| {
            (i + 1..n).all(|j| out[i].dist(&out[j]) > out[i].radius + out[j].radius)
        });
        if (disjoint && out.iter().all(|c| c.radius <= target)) || bits > 4096 {
            return out;
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots_with_tight_disks() {
        let p = IntPoly::from_descending_i64(&[1, -3, 1]);
        let mut roots = complex_roots(&p, TARGET_RADIUS);
        roots.sort_by(|a, b| a.re.cmp(&b.re));
        let small = roots[0].to_f64();
        let large = roots[1].to_f64();
        assert!((small.re - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((large.re - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!(roots.iter().all(|r| r.radius <= TARGET_RADIUS));
    }

    #[test]
    fn cubic_with_complex_pair() {
        // x^3 - x - 1: plastic number and a complex pair of modulus ~0.8688
        let p = IntPoly::from_descending_i64(&[1, 0, -1, -1]);
        let roots = complex_roots(&p, TARGET_RADIUS);
        assert_eq!(roots.len(), 3);
        let mut moduli: Vec<f64> = roots.iter().map(|r| r.modulus()).collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((moduli[2] - 1.324_717_957_244_746).abs() < 1e-12);
        assert!((moduli[0] - 0.868_836_961_832_279_4).abs() < 1e-12);
        assert!((moduli[1] - moduli[0]).abs() < 1e-15);
        assert!(roots.iter().all(|r| r.radius <= TARGET_RADIUS));
    }
}
