//! Complex ball arithmetic: a center `re + i*im` and a radius bounding the
//! distance to the exact value. Every operation rounds the center to the
//! working precision and adds the rounding error to the radius, so a ball
//! always contains the exact result of the exact operations.

use super::float::{Float, Round};
use crate::univariate::{QPoly, UPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub re: Float,
    pub im: Float,
    pub rad: Float,
}

/// `x` rounded to nearest together with an upper bound on the error.
fn round_with_err(x: &Float, prec: u64) -> (Float, Float) {
    let r = x.round(prec, Round::Nearest);
    let err = r.add_exact(&x.neg()).abs();
    (r, err)
}

fn up_add(a: &Float, b: &Float, prec: u64) -> Float {
    a.add(b, prec, Round::Up)
}

fn up_mul(a: &Float, b: &Float, prec: u64) -> Float {
    a.mul(b, prec, Round::Up)
}

impl Ball {
    pub fn exact(re: Float, im: Float) -> Ball {
        Ball {
            re,
            im,
            rad: Float::zero(),
        }
    }

    pub fn real(x: Float) -> Ball {
        Ball::exact(x, Float::zero())
    }

    pub fn from_int(v: &BigInt) -> Ball {
        Ball::real(Float::from_bigint(v))
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Ball {
        let c = Float::from_rational(q, prec, Round::Nearest);
        let err = Float::from_rational(&(c.to_rational() - q).abs(), 8, Round::Up);
        Ball {
            re: c,
            im: Float::zero(),
            rad: err,
        }
    }

    /// The real interval `[lo, hi]` as a ball.
    pub fn from_interval(lo: &BigRational, hi: &BigRational, prec: u64) -> Ball {
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        let c = Float::from_rational(&mid, prec, Round::Nearest);
        let cq = c.to_rational();
        let d = std::cmp::max((&cq - lo).abs(), (hi - &cq).abs());
        Ball {
            re: c,
            im: Float::zero(),
            rad: Float::from_rational(&d, 16, Round::Up),
        }
    }

    pub fn is_real_center(&self) -> bool {
        self.im.is_zero()
    }

    /// Upper bound on `|center|`.
    pub fn center_abs_upper(&self) -> Float {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        let s = up_add(&up_mul(&self.re, &self.re, 64), &up_mul(&self.im, &self.im, 64), 64);
        s.sqrt(64, Round::Up)
    }

    /// Lower bound on `|center|`.
    pub fn center_abs_lower(&self) -> Float {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        let s = self
            .re
            .mul(&self.re, 64, Round::Down)
            .add(&self.im.mul(&self.im, 64, Round::Down), 64, Round::Down);
        s.sqrt(64, Round::Down)
    }

    /// Upper bound on `|z|` for every `z` in the ball.
    pub fn abs_upper(&self) -> Float {
        up_add(&self.center_abs_upper(), &self.rad, 64)
    }

    /// Lower bound on `|z|` over the ball, zero if the ball meets the origin.
    pub fn abs_lower(&self) -> Float {
        let l = self.center_abs_lower().sub(&self.rad, 64, Round::Down);
        if l.is_negative() {
            Float::zero()
        } else {
            l
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    pub fn neg(&self) -> Ball {
        Ball {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn conj(&self) -> Ball {
        Ball {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Ball, prec: u64) -> Ball {
        let (re, e1) = round_with_err(&self.re.add_exact(&other.re), prec);
        let (im, e2) = round_with_err(&self.im.add_exact(&other.im), prec);
        let rad = up_add(&up_add(&self.rad, &other.rad, 64), &up_add(&e1, &e2, 64), 64);
        Ball { re, im, rad }
    }

    pub fn sub(&self, other: &Ball, prec: u64) -> Ball {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Ball, prec: u64) -> Ball {
        let re_x = self
            .re
            .mul_exact(&other.re)
            .add_exact(&self.im.mul_exact(&other.im).neg());
        let im_x = self.re.mul_exact(&other.im).add_exact(&self.im.mul_exact(&other.re));
        let (re, e1) = round_with_err(&re_x, prec);
        let (im, e2) = round_with_err(&im_x, prec);
        // |ab - c1c2| <= |c1| r2 + |c2| r1 + r1 r2
        let mut rad = up_add(&e1, &e2, 64);
        if !other.rad.is_zero() {
            rad = up_add(&rad, &up_mul(&self.center_abs_upper(), &other.rad, 64), 64);
        }
        if !self.rad.is_zero() {
            rad = up_add(&rad, &up_mul(&other.center_abs_upper(), &self.rad, 64), 64);
            if !other.rad.is_zero() {
                rad = up_add(&rad, &up_mul(&self.rad, &other.rad, 64), 64);
            }
        }
        Ball { re, im, rad }
    }

    /// Multiplication by an exact rational, done as a ball product.
    pub fn scale(&self, q: &BigRational, prec: u64) -> Ball {
        self.mul(&Ball::from_rational(q, prec), prec)
    }

    /// `1/z`, or `None` if the ball meets the origin.
    pub fn inv(&self, prec: u64) -> Option<Ball> {
        let lower = self.abs_lower();
        if lower.is_zero() {
            return None;
        }
        let n2 = self.re.mul_exact(&self.re).add_exact(&self.im.mul_exact(&self.im));
        // 1/c = conj(c)/|c|^2, each quotient within one ulp
        let re = self.re.div(&n2, prec, Round::Nearest);
        let im = self.im.neg().div(&n2, prec, Round::Nearest);
        let ulp_re = if re.is_zero() {
            Float::zero()
        } else {
            Float::pow2(re.magnitude() - prec as i64 + 1)
        };
        let ulp_im = if im.is_zero() {
            Float::zero()
        } else {
            Float::pow2(im.magnitude() - prec as i64 + 1)
        };
        // |1/z - 1/c| <= r / (|c| (|c| - r))
        let mut rad = up_add(&ulp_re, &ulp_im, 64);
        if !self.rad.is_zero() {
            let c_low = self.center_abs_lower();
            let den = c_low.mul(&lower, 64, Round::Down);
            rad = up_add(&rad, &self.rad.div(&den, 64, Round::Up), 64);
        }
        Some(Ball { re, im, rad })
    }

    pub fn div(&self, other: &Ball, prec: u64) -> Option<Ball> {
        Some(self.mul(&other.inv(prec)?, prec))
    }

    pub fn sqr(&self, prec: u64) -> Ball {
        self.mul(self, prec)
    }

    /// `p(z)` by Horner's rule.
    pub fn eval_upoly(p: &UPoly, z: &Ball, prec: u64) -> Ball {
        let mut acc = Ball::real(Float::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z, prec).add(&Ball::from_int(c), prec);
        }
        acc
    }

    pub fn eval_qpoly(p: &QPoly, z: &Ball, prec: u64) -> Ball {
        let mut acc = Ball::real(Float::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z, prec).add(&Ball::from_rational(c, prec), prec);
        }
        acc
    }

    /// True when the two balls share at least one point, as far as the
    /// rounded bounds can tell (never false for intersecting balls).
    pub fn overlaps(&self, other: &Ball) -> bool {
        let dre = self.re.add_exact(&other.re.neg());
        let dim = self.im.add_exact(&other.im.neg());
        let d2 = dre
            .mul(&dre, 64, Round::Down)
            .add(&dim.mul(&dim, 64, Round::Down), 64, Round::Down);
        let r = up_add(&self.rad, &other.rad, 64);
        d2 <= up_mul(&r, &r, 64)
    }

    /// The ball's real-part interval as rationals `[lo, hi]`.
    pub fn re_bounds(&self) -> (BigRational, BigRational) {
        let c = self.re.to_rational();
        let r = self.rad.to_rational();
        (&c - &r, c + r)
    }

    pub fn im_bounds(&self) -> (BigRational, BigRational) {
        let c = self.im.to_rational();
        let r = self.rad.to_rational();
        (&c - &r, c + r)
    }

    /// The radius as `log2` upper bound, `i64::MIN` for an exact ball.
    pub fn rad_log2(&self) -> i64 {
        self.rad.magnitude()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn third_times_three_contains_one() {
        let t = Ball::from_rational(&q(1, 3), 40);
        let p = t.mul(&Ball::from_int(&3.into()), 40);
        let (lo, hi) = p.re_bounds();
        assert!(lo <= q(1, 1) && q(1, 1) <= hi);
        assert!(p.rad_log2() < -35);
    }

    #[test]
    fn inverse_of_i() {
        let i = Ball::exact(Float::zero(), Float::from_int(1));
        let inv = i.inv(30).unwrap();
        assert_eq!(inv.re, Float::zero());
        assert_eq!(inv.im, Float::from_int(-1));
        assert!(Ball::real(Float::zero()).inv(30).is_none());
    }

    #[test]
    fn horner_encloses_the_value() {
        // x^2 - 2 at a ball around sqrt 2
        let s = Ball {
            re: Float::from_rational(&q(14142135, 10000000), 60, Round::Nearest),
            im: Float::zero(),
            rad: Float::pow2(-20),
        };
        let v = Ball::eval_upoly(&UPoly::from_i64s(&[-2, 0, 1]), &s, 60);
        assert!(v.contains_zero());
        assert!(v.rad_log2() < -15);
    }

    #[test]
    fn overlap_is_symmetric() {
        let a = Ball::from_interval(&q(0, 1), &q(1, 1), 30);
        let b = Ball::from_interval(&q(1, 1), &q(2, 1), 30);
        let c = Ball::from_interval(&q(3, 1), &q(4, 1), 30);
        assert!(a.overlaps(&b) && b.overlaps(&a));
        assert!(!a.overlaps(&c));
    }
}
