//! Pseudo-remainder sequences over an exact gcd domain.
//!
//! The routines here work on dense coefficient vectors (lowest degree first)
//! and are shared by the integer polynomials in [`super::UPoly`] and the
//! recursive multivariate gcd in [`crate::expr`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// Coefficient ring with exact division and a gcd for contents.
pub trait PrsRing: Clone + PartialEq + Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Division that is known to be exact.
    fn exact_div(&self, other: &Self) -> Self;
    /// A gcd normalized to be "positive" in the ring's own sense.
    fn gcd(&self, other: &Self) -> Self;
    /// True if the normalized form of `self` would flip its sign.
    fn is_negative_unit_normal(&self) -> bool;

    fn power(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::unit();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl PrsRing for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_nil(), "inexact division");
        self / other
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_negative_unit_normal(&self) -> bool {
        self.is_negative()
    }
}

pub fn trim<R: PrsRing>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_nil()) {
        v.pop();
    }
}

fn lc<R: PrsRing>(v: &[R]) -> &R {
    v.last().expect("leading coefficient of zero polynomial")
}

/// Degree of a trimmed vector; the zero polynomial has no degree.
pub fn degree<R>(v: &[R]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub fn scale<R: PrsRing>(v: &[R], c: &R) -> Vec<R> {
    let mut out: Vec<R> = v.iter().map(|x| x.times(c)).collect();
    trim(&mut out);
    out
}

pub fn exact_div_scalar<R: PrsRing>(v: &[R], c: &R) -> Vec<R> {
    v.iter().map(|x| x.exact_div(c)).collect()
}

/// Gcd of the coefficients.
pub fn content<R: PrsRing>(v: &[R]) -> R {
    let mut g = R::nil();
    for c in v.iter().rev() {
        g = g.gcd(c);
        if g == R::unit() {
            break;
        }
    }
    g
}

/// `v / content(v)` with a unit-normal leading coefficient.
pub fn primitive<R: PrsRing>(v: &[R]) -> Vec<R> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut c = content(v);
    if lc(v).exact_div(&c).is_negative_unit_normal() {
        c = c.negate();
    }
    exact_div_scalar(v, &c)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem<R: PrsRing>(a: &[R], b: &[R]) -> Vec<R> {
    let db = degree(b).expect("pseudo-division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let lb = lc(b).clone();
    let mut e = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = lc(&r).clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.times(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc.times(&lr);
            r[i + shift] = r[i + shift].minus(&t);
        }
        debug_assert!(r[dr].is_nil());
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let m = lb.power(e);
        r = scale(&r, &m);
    }
    r
}

/// Gcd of two polynomials by the subresultant PRS; the result is primitive
/// with unit-normal leading coefficient, times the gcd of the contents.
pub fn subresultant_gcd<R: PrsRing>(a: &[R], b: &[R]) -> Vec<R> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return primitive_with_content(&b);
    }
    if b.is_empty() {
        return primitive_with_content(&a);
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let ca = content(&a);
    let cb = content(&b);
    let mut d = ca.gcd(&cb);
    if d.is_negative_unit_normal() {
        d = d.negate();
    }
    let mut a = exact_div_scalar(&a, &ca);
    let mut b = exact_div_scalar(&b, &cb);
    let mut g = R::unit();
    let mut h = R::unit();
    loop {
        let delta = a.len() - b.len();
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![d];
        }
        a = b;
        let denom = g.times(&h.power(delta));
        b = exact_div_scalar(&r, &denom);
        g = lc(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.power(delta).exact_div(&h.power(delta - 1))
        };
    }
    scale(&primitive(&b), &d)
}

fn primitive_with_content<R: PrsRing>(v: &[R]) -> Vec<R> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut c = content(v);
    if c.is_negative_unit_normal() {
        c = c.negate();
    }
    scale(&primitive(v), &c)
}

/// Resultant of `a` and `b` by the subresultant algorithm.
pub fn resultant<R: PrsRing>(a: &[R], b: &[R]) -> R {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return R::nil();
    }
    let mut s = R::unit();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        let (da, db) = (a.len() - 1, b.len() - 1);
        if da % 2 == 1 && db % 2 == 1 {
            s = s.negate();
        }
    }
    if b.len() == 1 {
        return s.times(&b[0].power(a.len() - 1));
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = ca.power(b.len() - 1).times(&cb.power(a.len() - 1));
    let mut a = exact_div_scalar(&a, &ca);
    let mut b = exact_div_scalar(&b, &cb);
    let mut g = R::unit();
    let mut h = R::unit();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.negate();
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return R::nil();
        }
        let denom = g.times(&h.power(delta));
        b = exact_div_scalar(&r, &denom);
        g = lc(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.power(delta).exact_div(&h.power(delta - 1))
        };
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    let hh = if da == 0 {
        h.clone()
    } else {
        b[0].power(da).exact_div(&h.power(da - 1))
    };
    s.times(&t).times(&hh)
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn exact_quotient<R: PrsRing>(a: &[R], b: &[R], divides: impl Fn(&R, &R) -> Option<R>) -> Option<Vec<R>> {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(&r).unwrap();
    if da < db {
        return None;
    }
    let mut q = vec![R::nil(); da - db + 1];
    let lb = lc(b).clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let c = divides(lc(&r), &lb)?;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].minus(&bc.times(&c));
        }
        debug_assert!(r[dr].is_nil());
        q[shift] = c;
        trim(&mut r);
    }
    Some(q)
}

/// Integer-coefficient helper used by `exact_quotient`.
pub fn bigint_divides(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    let (q, r) = a.div_rem(b);
    r.is_nil().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = v(&[-2, 1, 1]);
        let b = v(&[3, -4, 1]);
        assert_eq!(subresultant_gcd(&a, &b), v(&[-1, 1]));
    }

    #[test]
    fn resultant_of_linear_polys() {
        // Res(x - 2, x - 5) = 2 - 5 evaluated: Res(a, b) = b(2) for monic linear a
        assert_eq!(resultant(&v(&[-2, 1]), &v(&[-5, 1])), BigInt::from(-3));
        // Res(x^2 - 2, x^2 - 3) = (2 - 3)^2 = 1
        assert_eq!(resultant(&v(&[-2, 0, 1]), &v(&[-3, 0, 1])), BigInt::from(1));
        // Res(x^2+1, x-1) = 2
        assert_eq!(resultant(&v(&[1, 0, 1]), &v(&[-1, 1])), BigInt::from(2));
        assert_eq!(resultant(&v(&[-1, 1]), &v(&[1, 0, 1])), BigInt::from(2));
        // common root
        assert_eq!(resultant(&v(&[-1, 0, 1]), &v(&[-1, 1])), BigInt::from(0));
    }

    #[test]
    fn resultant_matches_root_product() {
        // a = 2(x-1)(x-3), b = x^2 + x + 1 ; Res = lc(a)^2 * b(1) * b(3) = 4 * 3 * 13
        let a = v(&[6, -8, 2]);
        let b = v(&[1, 1, 1]);
        assert_eq!(resultant(&a, &b), BigInt::from(4 * 3 * 13));
    }
}
