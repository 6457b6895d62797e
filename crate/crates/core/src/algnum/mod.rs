//! Certified algebraic numbers.
//!
//! An [`AlgebraicNumber`] is a root of a square-free primitive integer
//! polynomial, singled out by an index into the isolated roots of that
//! polynomial. Isolations are computed once per polynomial and shared
//! through a process-wide cache, so two numbers with the same defining
//! polynomial are equal exactly when their indices agree. Defining
//! polynomials are reduced to irreducible factors whenever factorization
//! succeeds, which makes them minimal polynomials.
//!
//! Real roots carry rational isolating intervals; non-real roots carry
//! certified disks (see [`complex`]) reported as rational boxes. New numbers
//! from arithmetic get their defining polynomial from a resultant and their
//! root by refining ball enclosures of the operands until a single candidate
//! root remains.

mod ball;
mod complex;
mod float;
mod real;
mod render;

pub use ball::Ball;
pub use float::{Float, Round};
pub use real::RealRegion;

use crate::expr::MultiPoly;
use crate::univariate::factor::{factor_square_free, Factorization};
use crate::univariate::field::{interpolate, FieldElem, NumberField};
use crate::univariate::UPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// Degrees above this are not handed to the factorizer; such numbers keep
/// a square-free but possibly reducible defining polynomial.
const FACTOR_DEGREE_LIMIT: usize = 120;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a real number")]
    NotReal,
}

/// Isolating region of a root, as reported to callers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Rational(BigRational),
    /// Open interval holding exactly one root.
    Interval {
        lo: BigRational,
        hi: BigRational,
    },
    /// Closed box holding exactly one root.
    Box {
        re: (BigRational, BigRational),
        im: (BigRational, BigRational),
    },
}

/// All roots of one square-free primitive polynomial: real roots in
/// ascending order, then non-real roots as `[upper, lower]` conjugate pairs.
struct RootSet {
    poly: UPoly,
    irreducible: OnceLock<bool>,
    real: Vec<Mutex<RealRegion>>,
    /// Upper half-plane member of each pair.
    upper: Vec<Mutex<Ball>>,
}

impl RootSet {
    fn build(poly: UPoly) -> RootSet {
        let real = real::isolate(&poly);
        let upper: Vec<Ball> = complex::isolate_nonreal(&poly, real.len())
            .into_iter()
            .step_by(2)
            .collect();
        RootSet {
            poly,
            irreducible: OnceLock::new(),
            real: real.into_iter().map(Mutex::new).collect(),
            upper: upper.into_iter().map(Mutex::new).collect(),
        }
    }

    fn len(&self) -> usize {
        self.real.len() + 2 * self.upper.len()
    }

    fn is_irreducible(&self) -> bool {
        *self.irreducible.get_or_init(|| {
            if self.poly.degree() > FACTOR_DEGREE_LIMIT {
                return false;
            }
            matches!(factor_square_free(&self.poly), Factorization::Complete(fs) if fs.len() == 1)
        })
    }

    /// Ball around root `i` with radius about `2^target` or less.
    fn ball(&self, i: usize, target: i64) -> Ball {
        let k = self.real.len();
        if i < k {
            let mut r = self.real[i].lock().unwrap();
            if real::width_log2(&r) > target + 1 {
                real::refine(&self.poly, &mut r, target + 1);
            }
            match &*r {
                RealRegion::Exact(q) => Ball::from_rational(q, prec_for(q, target)),
                RealRegion::Interval { lo, hi, .. } => Ball::from_interval(lo, hi, prec_for(hi, target)),
            }
        } else {
            let j = (i - k) / 2;
            let mut d = self.upper[j].lock().unwrap();
            if d.rad.magnitude() > target {
                *d = complex::refine_disk(&self.poly, &d, target);
            }
            if (i - k).is_multiple_of(2) {
                d.clone()
            } else {
                d.conj()
            }
        }
    }

    fn region(&self, i: usize) -> Region {
        let k = self.real.len();
        if i < k {
            return match &*self.real[i].lock().unwrap() {
                RealRegion::Exact(q) => Region::Rational(q.clone()),
                RealRegion::Interval { lo, hi, .. } => Region::Interval {
                    lo: lo.clone(),
                    hi: hi.clone(),
                },
            };
        }
        let d = self.upper[(i - k) / 2].lock().unwrap().clone();
        let d = if (i - k).is_multiple_of(2) { d } else { d.conj() };
        // half-width 5r/4: contains D(c, r) and lies inside D(c, 2r)
        let h = d.rad.to_rational() * BigRational::new(5.into(), 4.into());
        let (re, im) = (d.re.to_rational(), d.im.to_rational());
        Region::Box {
            re: (&re - &h, &re + &h),
            im: (&im - &h, &im + &h),
        }
    }
}

fn prec_for(q: &BigRational, target: i64) -> u64 {
    let mag = q.numer().bits() as i64 - q.denom().bits() as i64;
    (mag.max(0) - target + 16).max(64) as u64
}

fn cache() -> &'static Mutex<HashMap<UPoly, Arc<RootSet>>> {
    static CACHE: OnceLock<Mutex<HashMap<UPoly, Arc<RootSet>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared isolation of the roots of a square-free primitive polynomial with
/// positive leading coefficient.
fn root_set(p: &UPoly) -> Arc<RootSet> {
    if let Some(s) = cache().lock().unwrap().get(p) {
        return s.clone();
    }
    let built = Arc::new(RootSet::build(p.clone()));
    cache().lock().unwrap().entry(p.clone()).or_insert(built).clone()
}

fn normalize(p: &UPoly) -> UPoly {
    assert!(!p.is_zero(), "zero polynomial");
    p.square_free()
}

/// Irreducible factors of `p` when they can be found, else `p` itself.
fn split(p: &UPoly) -> Vec<(UPoly, bool)> {
    let p = normalize(p);
    if p.degree() == 0 {
        return Vec::new();
    }
    if p.degree() == 1 {
        return vec![(p, true)];
    }
    if p.degree() > FACTOR_DEGREE_LIMIT {
        return vec![(p, false)];
    }
    match factor_square_free(&p) {
        Factorization::Complete(fs) => fs.into_iter().map(|f| (f, true)).collect(),
        Factorization::GaveUp => vec![(p, false)],
    }
}

fn roots_of_factors(factors: &[(UPoly, bool)]) -> Vec<AlgebraicNumber> {
    let mut out = Vec::new();
    for (f, irreducible) in factors {
        let set = root_set(f);
        if *irreducible {
            let _ = set.irreducible.set(true);
        }
        for index in 0..set.len() {
            out.push(AlgebraicNumber {
                set: set.clone(),
                index,
            });
        }
    }
    out
}

/// Picks the unique candidate consistent with the enclosures produced by
/// `enclose(t)` (balls of radius roughly `2^t` around the wanted value, or
/// `None` when no useful enclosure is available at that accuracy).
fn locate(candidates: Vec<AlgebraicNumber>, enclose: impl Fn(i64) -> Option<Ball>) -> AlgebraicNumber {
    assert!(!candidates.is_empty(), "no candidate roots");
    if candidates.len() == 1 {
        return candidates.into_iter().next().unwrap();
    }
    let mut alive = candidates;
    let mut t: i64 = -16;
    loop {
        if let Some(b) = enclose(t) {
            alive.retain(|c| c.ball(t).overlaps(&b));
            assert!(!alive.is_empty(), "enclosure excludes every candidate");
            if alive.len() == 1 {
                return alive.pop().unwrap();
            }
        }
        t = t.checked_mul(2).expect("candidate separation did not terminate");
        assert!(t > -(1 << 24), "candidate separation did not terminate");
    }
}

/// The root of `p` enclosed by `enclose`, with a minimal defining
/// polynomial when factorization succeeds.
fn root_of(p: &UPoly, enclose: impl Fn(i64) -> Option<Ball>) -> AlgebraicNumber {
    locate(roots_of_factors(&split(p)), enclose)
}

#[derive(Clone)]
pub struct AlgebraicNumber {
    set: Arc<RootSet>,
    index: usize,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraicNumber({}, {:?})",
            self.set.poly.to_string_in("x"),
            self.region()
        )
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx_strings(12);
        match im {
            None => write!(f, "{re}"),
            Some(im) => write!(f, "{re} + {im}*i"),
        }
    }
}

/// Real roots of `p` in ascending order (square-free part taken).
pub fn isolate_real_roots(p: &UPoly) -> Vec<AlgebraicNumber> {
    let mut rs: Vec<AlgebraicNumber> = roots_of_factors(&split(p))
        .into_iter()
        .filter(|a| a.is_real())
        .collect();
    rs.sort_by(|a, b| a.cmp_real(b).expect("real roots"));
    rs
}

/// All complex roots of `p` (square-free part taken): the real roots in
/// ascending order, then conjugate pairs with the upper member first.
pub fn isolate_complex_roots(p: &UPoly) -> Vec<AlgebraicNumber> {
    let all = roots_of_factors(&split(p));
    let (mut reals, nonreal): (Vec<_>, Vec<_>) = all.into_iter().partition(|a| a.is_real());
    reals.sort_by(|a, b| a.cmp_real(b).expect("real roots"));
    let mut uppers: Vec<AlgebraicNumber> = nonreal.into_iter().filter(|a| a.is_upper()).collect();
    uppers.sort_by(|a, b| {
        let (ar, ai) = a.approx();
        let (br, bi) = b.approx();
        ar.partial_cmp(&br)
            .unwrap_or(Ordering::Equal)
            .then(ai.partial_cmp(&bi).unwrap_or(Ordering::Equal))
    });
    let mut out = reals;
    for u in uppers {
        let c = u.conj();
        out.push(u);
        out.push(c);
    }
    out
}

/// `Res_y(pa(y), pb(x - y))`, whose roots are the sums of roots.
fn sum_poly(pa: &UPoly, pb: &UPoly) -> UPoly {
    let d = pa.degree() * pb.degree();
    let refl = pb.reflect();
    let xs: Vec<BigInt> = (0..=d as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs.iter().map(|x| pa.resultant(&refl.taylor_shift(&-x))).collect();
    interpolate(&xs, &ys)
}

/// `Res_y(pa(y), y^db pb(x/y))`, whose roots are the products of roots;
/// requires `pb(0) != 0`.
fn product_poly(pa: &UPoly, pb: &UPoly) -> UPoly {
    let d = pa.degree() * pb.degree();
    let db = pb.degree();
    let xs: Vec<BigInt> = (0..=d as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            let mut cs = vec![BigInt::zero(); db + 1];
            let mut xp = BigInt::one();
            for i in 0..=db {
                cs[db - i] = pb.coeff(i) * &xp;
                xp *= x;
            }
            pa.resultant(&UPoly::new(cs))
        })
        .collect();
    interpolate(&xs, &ys)
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> AlgebraicNumber {
        let p = UPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        let set = root_set(&p);
        let _ = set.irreducible.set(true);
        AlgebraicNumber { set, index: 0 }
    }

    pub fn from_int(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn zero() -> AlgebraicNumber {
        AlgebraicNumber::from_int(0)
    }

    pub fn one() -> AlgebraicNumber {
        AlgebraicNumber::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> AlgebraicNumber {
        isolate_complex_roots(&UPoly::from_i64s(&[1, 0, 1]))
            .into_iter()
            .find(|a| a.is_upper())
            .expect("i")
    }

    /// The root of `p` (nonzero) closest to `approx`, where the caller
    /// guarantees `approx` separates it from the other roots.
    pub fn root_near(p: &UPoly, re: f64, im: f64) -> AlgebraicNumber {
        let all = isolate_complex_roots(p);
        all.into_iter()
            .min_by(|a, b| {
                let (ar, ai) = a.approx();
                let (br, bi) = b.approx();
                let da = (ar - re).hypot(ai - im);
                let db = (br - re).hypot(bi - im);
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            })
            .expect("polynomial has roots")
    }

    /// Square-free, primitive, positive leading coefficient.
    pub fn defining_poly(&self) -> &UPoly {
        &self.set.poly
    }

    pub fn degree(&self) -> usize {
        self.set.poly.degree()
    }

    /// True when the defining polynomial is certified irreducible.
    pub fn is_minimal(&self) -> bool {
        self.set.is_irreducible()
    }

    pub fn is_real(&self) -> bool {
        self.index < self.set.real.len()
    }

    fn is_upper(&self) -> bool {
        !self.is_real() && (self.index - self.set.real.len()).is_multiple_of(2)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_real() {
            return None;
        }
        if self.set.poly.degree() == 1 {
            let p = &self.set.poly;
            return Some(BigRational::new(-p.coeff(0), p.coeff(1)));
        }
        match &*self.set.real[self.index].lock().unwrap() {
            RealRegion::Exact(q) => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_zero())
    }

    pub fn region(&self) -> Region {
        self.set.region(self.index)
    }

    /// Refines the stored region until its radius (half-width) is at most
    /// `2^target`.
    pub fn refine(&self, target: i64) {
        let _ = self.set.ball(self.index, target);
    }

    /// A ball containing the number with radius about `2^target`.
    pub fn ball(&self, target: i64) -> Ball {
        self.set.ball(self.index, target)
    }

    /// Floating point approximation `(re, im)`.
    pub fn approx(&self) -> (f64, f64) {
        let b = self.ball(-60);
        (b.re.to_f64(), b.im.to_f64())
    }

    pub fn conj(&self) -> AlgebraicNumber {
        if self.is_real() {
            return self.clone();
        }
        let k = self.set.real.len();
        let j = self.index - k;
        AlgebraicNumber {
            set: self.set.clone(),
            index: k + (j ^ 1),
        }
    }

    pub fn neg(&self) -> AlgebraicNumber {
        if let Some(q) = self.as_rational() {
            return AlgebraicNumber::from_rational(&-q);
        }
        let p = self.set.poly.reflect();
        self.same_degree_image(&p, |b, _| b.neg())
    }

    /// A root of `p`, which has the same degree as the defining polynomial
    /// and is irreducible whenever that one is.
    fn same_degree_image(&self, p: &UPoly, f: impl Fn(&Ball, u64) -> Ball) -> AlgebraicNumber {
        let p = normalize(p);
        let cands = if self.set.irreducible.get() == Some(&true) {
            roots_of_factors(&[(p, true)])
        } else {
            roots_of_factors(&split(&p))
        };
        locate(cands, |t| {
            let b = self.ball(t - 2);
            let prec = (64 - t + b.abs_upper().magnitude().max(0)) as u64;
            Some(f(&b, prec))
        })
    }

    pub fn add(&self, other: &AlgebraicNumber) -> AlgebraicNumber {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => AlgebraicNumber::from_rational(&(a + b)),
            (Some(q), None) => other.add_rational(&q),
            (None, Some(q)) => self.add_rational(&q),
            (None, None) => {
                let p = sum_poly(&self.set.poly, &other.set.poly);
                root_of(&p, |t| {
                    let prec = (64 - t) as u64;
                    Some(self.ball(t - 2).add(&other.ball(t - 2), prec))
                })
            }
        }
    }

    fn add_rational(&self, q: &BigRational) -> AlgebraicNumber {
        if q.is_zero() {
            return self.clone();
        }
        // p(x - q) scaled: d^n p((d x - n)/d)
        let p = self.set.poly.compose_linear(q.denom(), &-q.numer().clone(), q.denom());
        self.same_degree_image(&p, |b, prec| b.add(&Ball::from_rational(q, prec), prec))
    }

    pub fn sub(&self, other: &AlgebraicNumber) -> AlgebraicNumber {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &AlgebraicNumber) -> AlgebraicNumber {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => AlgebraicNumber::from_rational(&(a * b)),
            (Some(q), None) => other.mul_rational(&q),
            (None, Some(q)) => self.mul_rational(&q),
            (None, None) => {
                let p = product_poly(&self.set.poly, &other.set.poly);
                root_of(&p, |t| {
                    let ma = self.ball(-8).abs_upper().magnitude().max(0);
                    let mb = other.ball(-8).abs_upper().magnitude().max(0);
                    let prec = (64 - t + ma + mb) as u64;
                    Some(self.ball(t - 2 - mb).mul(&other.ball(t - 2 - ma), prec))
                })
            }
        }
    }

    fn mul_rational(&self, q: &BigRational) -> AlgebraicNumber {
        if q.is_zero() {
            return AlgebraicNumber::zero();
        }
        if q.is_one() {
            return self.clone();
        }
        // p(x / q) scaled: n^deg p(d x / n)
        let p = self.set.poly.compose_linear(q.denom(), &BigInt::zero(), q.numer());
        let mq = q.numer().bits() as i64 - q.denom().bits() as i64 + 1;
        self.same_degree_image(&p, |b, prec| b.scale(q, prec + mq.unsigned_abs()))
    }

    pub fn inv(&self) -> Result<AlgebraicNumber, AlgebraicError> {
        if let Some(q) = self.as_rational() {
            if q.is_zero() {
                return Err(AlgebraicError::DivisionByZero);
            }
            return Ok(AlgebraicNumber::from_rational(&q.recip()));
        }
        // a non-rational root of a square-free polynomial is never zero
        let p = normalize(&self.set.poly);
        let p = if p.coeff(0).is_zero() {
            p.exact_div(&UPoly::x()).expect("x divides")
        } else {
            p
        };
        let cands = roots_of_factors(&split(&p.reverse()));
        Ok(locate(cands, |t| {
            let b = self.ball(t - 4);
            let lo = b.abs_lower();
            if lo.is_zero() {
                return None;
            }
            let m = -lo.magnitude();
            b.inv((64 - t + 2 * m.max(0)) as u64)
        }))
    }

    pub fn div(&self, other: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgebraicError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Principal square root: argument in `(-π/2, π/2]`; the nonnegative
    /// root for nonnegative reals.
    pub fn sqrt(&self) -> AlgebraicNumber {
        if let Some(q) = self.as_rational() {
            if let Some(r) = rational_sqrt(&q) {
                return AlgebraicNumber::from_rational(&r);
            }
        }
        let q = self.set.poly.compose_square();
        let mut alive = roots_of_factors(&split(&q));
        let mut t: i64 = -16;
        loop {
            let b = self.ball(t);
            alive.retain(|s| {
                let sb = s.ball(t - 2);
                let prec = (64 - t + 2 * sb.abs_upper().magnitude().max(0)) as u64;
                sb.sqr(prec).overlaps(&b)
            });
            if alive.len() <= 2 {
                break;
            }
            t *= 2;
        }
        assert_eq!(alive.len(), 2, "square roots of a nonzero number");
        let (s0, s1) = (alive[0].clone(), alive[1].clone());
        // the pair is {s, -s}; choose by the sign of the real part, or of
        // the imaginary part when both are purely imaginary
        let negative_real = self.is_real() && self.sign().ok() == Some(-1);
        let mut t = -16;
        loop {
            let b = s0.ball(t);
            let (lo, hi) = if negative_real { b.im_bounds() } else { b.re_bounds() };
            if lo > BigRational::zero() {
                return s0;
            }
            if hi < BigRational::zero() {
                return s1;
            }
            t *= 2;
        }
    }

    /// `a * conj(a)`, a nonnegative real.
    pub fn modulus_squared(&self) -> AlgebraicNumber {
        if self.is_real() {
            return self.mul(self);
        }
        let r = self.mul(&self.conj());
        debug_assert!(r.is_real());
        r
    }

    pub fn real_part(&self) -> AlgebraicNumber {
        if self.is_real() {
            return self.clone();
        }
        self.add(&self.conj())
            .mul_rational(&BigRational::new(1.into(), 2.into()))
    }

    pub fn imag_part(&self) -> AlgebraicNumber {
        if self.is_real() {
            return AlgebraicNumber::zero();
        }
        // (a - conj a) / (2i) = (conj a - a) * i / 2
        self.conj()
            .sub(self)
            .mul(&AlgebraicNumber::i())
            .mul_rational(&BigRational::new(1.into(), 2.into()))
    }

    /// The root of the (pairwise coprime) factors in `parts` equal to self.
    fn restrict(&self, parts: &[UPoly]) -> AlgebraicNumber {
        let mut factors = Vec::new();
        for p in parts {
            if p.degree() > 0 {
                factors.extend(split(p));
            }
        }
        locate(roots_of_factors(&factors), |t| Some(self.ball(t)))
    }

    /// Exact equality.
    pub fn is_equal(&self, other: &AlgebraicNumber) -> bool {
        if Arc::ptr_eq(&self.set, &other.set) {
            return self.index == other.index;
        }
        if self.is_real() != other.is_real() {
            return false;
        }
        if self.is_minimal() && other.is_minimal() {
            // distinct minimal polynomials never share a root
            return false;
        }
        let (pa, pb) = (&self.set.poly, &other.set.poly);
        let g = pa.gcd(pb).primitive();
        if g.degree() == 0 {
            return false;
        }
        let ra = self.restrict(&[g.clone(), pa.exact_div(&g).expect("gcd divides")]);
        let rb = other.restrict(&[g.clone(), pb.exact_div(&g).expect("gcd divides")]);
        Arc::ptr_eq(&ra.set, &rb.set) && ra.index == rb.index
    }

    /// Sign of a real number.
    pub fn sign(&self) -> Result<i32, AlgebraicError> {
        if !self.is_real() {
            return Err(AlgebraicError::NotReal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(rational_sign(&q));
        }
        // the open isolating interval never holds 0 as the root here, so
        // refining until it excludes 0 terminates
        let mut t = -4;
        loop {
            let region = self.set.real[self.index].lock().unwrap().clone();
            match region {
                RealRegion::Exact(q) => return Ok(rational_sign(&q)),
                RealRegion::Interval { lo, hi, .. } => {
                    if !lo.is_negative() {
                        return Ok(1);
                    }
                    if !hi.is_positive() {
                        return Ok(-1);
                    }
                }
            }
            self.refine(t);
            t *= 2;
        }
    }

    /// Order of two real numbers.
    pub fn cmp_real(&self, other: &AlgebraicNumber) -> Result<Ordering, AlgebraicError> {
        if !self.is_real() || !other.is_real() {
            return Err(AlgebraicError::NotReal);
        }
        if self.is_equal(other) {
            return Ok(Ordering::Equal);
        }
        // unequal, so separating enclosures exist
        let mut t = -8;
        loop {
            let (alo, ahi) = self.ball(t).re_bounds();
            let (blo, bhi) = other.ball(t).re_bounds();
            if ahi < blo {
                return Ok(Ordering::Less);
            }
            if bhi < alo {
                return Ok(Ordering::Greater);
            }
            t *= 2;
        }
    }

    /// The value of `x` (an element of `Q[u]/(m)`) at `u = gen`, where `gen`
    /// is a root of the modulus `m` of `field`.
    pub fn from_field_element(field: &NumberField, x: &FieldElem, gen: &AlgebraicNumber) -> AlgebraicNumber {
        if let Some(q) = x.as_rational() {
            return AlgebraicNumber::from_rational(&q);
        }
        let q = x.to_qpoly();
        let cp = field.charpoly(x);
        let coeff_bits = x.num().coeffs().iter().map(|c| c.bits()).max().unwrap_or(1) as i64;
        let deg = x.num().degree() as i64;
        root_of(&cp, |t| {
            let g = gen.ball(t - coeff_bits - 4 * deg - 8);
            let gm = g.abs_upper().magnitude().max(0);
            let prec = (64 - t + coeff_bits + deg * gm) as u64;
            Some(Ball::eval_qpoly(&q, &g, prec))
        })
    }

    /// Exact evaluation of `f` at `point`, indexed like the variables of `f`.
    pub fn evaluate(f: &MultiPoly, point: &[AlgebraicNumber]) -> AlgebraicNumber {
        assert_eq!(f.nvars(), point.len());
        let mut powers: Vec<Vec<AlgebraicNumber>> =
            point.iter().map(|p| vec![AlgebraicNumber::one(), p.clone()]).collect();
        let mut acc = AlgebraicNumber::zero();
        for (m, c) in f.terms() {
            let mut term = AlgebraicNumber::from_rational(&BigRational::from_integer(c.clone()));
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&point[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Decimal approximations of the real part and, for non-real numbers,
    /// of the imaginary part, each truncated to `digits` significant digits.
    pub fn approx_strings(&self, digits: usize) -> (String, Option<String>) {
        if self.is_real() {
            return (render::truncated_decimal(self, digits), None);
        }
        let re = self.real_part();
        let im = self.imag_part();
        (
            render::truncated_decimal(&re, digits),
            Some(render::truncated_decimal(&im, digits)),
        )
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn rational_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
