//! Binary floating point numbers `m * 2^e` with arbitrary-precision mantissa
//! and explicit rounding direction, enough to drive root approximation and
//! rigorous ball arithmetic.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Nearest,
    /// Toward positive infinity.
    Up,
    /// Toward negative infinity.
    Down,
}

/// `m * 2^e`. Zero is stored as `m = 0, e = 0`; otherwise `m` is odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Float {
    m: BigInt,
    e: i64,
}

impl Float {
    pub fn zero() -> Float {
        Float {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn new(m: BigInt, e: i64) -> Float {
        if m.is_zero() {
            return Float::zero();
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        Float {
            m: m >> tz,
            e: e + tz as i64,
        }
    }

    pub fn from_int(v: i64) -> Float {
        Float::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Float {
        Float::new(v.clone(), 0)
    }

    pub fn pow2(e: i64) -> Float {
        Float { m: BigInt::one(), e }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// `floor(log2 |x|) + 1`, the position just above the leading bit;
    /// `i64::MIN` for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.m.bits() as i64 + self.e
        }
    }

    pub fn abs(&self) -> Float {
        Float {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Float {
        if self.is_zero() {
            return Float::zero();
        }
        Float {
            m: self.m.clone(),
            e: self.e + k,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as usize)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.m >> shift as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powi((self.e + shift).clamp(-2000, 2000) as i32)
    }

    /// Rounds the integer `m` to at most `prec` significant bits.
    fn round_mantissa(m: BigInt, e: i64, prec: u64, mode: Round) -> Float {
        let bits = m.bits();
        if bits <= prec {
            return Float::new(m, e);
        }
        let shift = bits - prec;
        let neg = m.is_negative();
        let a = m.abs();
        let q = &a >> shift as usize;
        let rem = &a - (&q << shift as usize);
        let inc = if rem.is_zero() {
            false
        } else {
            match mode {
                Round::Nearest => {
                    let half = BigInt::one() << (shift as usize - 1);
                    rem > half || (rem == half && q.is_odd())
                }
                Round::Up => !neg,
                Round::Down => neg,
            }
        };
        let q = if inc { q + 1 } else { q };
        Float::new(if neg { -q } else { q }, e + shift as i64)
    }

    pub fn round(&self, prec: u64, mode: Round) -> Float {
        Float::round_mantissa(self.m.clone(), self.e, prec, mode)
    }

    /// Nearest float to a rational with `prec` bits, rounded per `mode`.
    pub fn from_rational(q: &BigRational, prec: u64, mode: Round) -> Float {
        if q.is_zero() {
            return Float::zero();
        }
        let (n, d) = (q.numer(), q.denom());
        // scale so that the integer quotient has at least prec + 2 bits
        let s = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (num, den) = if s >= 0 {
            (n << s as usize, d.clone())
        } else {
            (n.clone(), d << (-s) as usize)
        };
        Float::div_int(&num, &den, -s, prec, mode)
    }

    /// Correctly rounded `(num/den) * 2^e` for `den > 0`.
    fn div_int(num: &BigInt, den: &BigInt, e: i64, prec: u64, mode: Round) -> Float {
        let (q, r) = num.div_mod_floor(den);
        if r.is_zero() {
            return Float::new(q, e).round(prec, mode);
        }
        // q is the floor; append a sticky bit so that rounding sees the
        // inexact tail correctly
        let sticky = (q << 1usize) + 1;
        Float::round_mantissa(sticky, e - 1, prec, mode)
    }

    pub fn add_exact(&self, other: &Float) -> Float {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.e.min(other.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &other.m << (other.e - e) as usize;
        Float::new(a + b, e)
    }

    pub fn mul_exact(&self, other: &Float) -> Float {
        if self.is_zero() || other.is_zero() {
            return Float::zero();
        }
        Float::new(&self.m * &other.m, self.e + other.e)
    }

    pub fn add(&self, other: &Float, prec: u64, mode: Round) -> Float {
        // avoid materializing huge shifts when exponents are far apart
        if !self.is_zero() && !other.is_zero() {
            let (big, small) = if self.magnitude() >= other.magnitude() {
                (self, other)
            } else {
                (other, self)
            };
            if big.m.bits() <= prec + 2 && big.magnitude() - small.magnitude() > prec as i64 + 4 {
                // big sits on a grid finer than the rounding grid, so the
                // small term only affects the rounding direction
                let ulp = big.magnitude() - prec as i64 - 4;
                let tiny = Float::pow2(ulp - 2);
                let nudged = if small.signum() > 0 {
                    big.add_exact(&tiny)
                } else {
                    big.add_exact(&tiny.neg())
                };
                return nudged.round(prec, mode);
            }
        }
        self.add_exact(other).round(prec, mode)
    }

    pub fn sub(&self, other: &Float, prec: u64, mode: Round) -> Float {
        self.add(&other.neg(), prec, mode)
    }

    pub fn mul(&self, other: &Float, prec: u64, mode: Round) -> Float {
        self.mul_exact(other).round(prec, mode)
    }

    pub fn div(&self, other: &Float, prec: u64, mode: Round) -> Float {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Float::zero();
        }
        let s = prec as i64 + 2 + other.m.bits() as i64 - self.m.bits() as i64;
        let s = s.max(0);
        let mut num = &self.m << s as usize;
        let mut den = other.m.clone();
        if den.is_negative() {
            den = -den;
            num = -num;
        }
        Float::div_int(&num, &den, self.e - other.e - s, prec, mode)
    }

    /// Square root of a nonnegative float.
    pub fn sqrt(&self, prec: u64, mode: Round) -> Float {
        assert!(!self.is_negative(), "sqrt of a negative float");
        if self.is_zero() {
            return Float::zero();
        }
        // make the exponent even and the mantissa wide enough
        let mut m = self.m.clone();
        let mut e = self.e;
        let want = 2 * (prec as i64 + 2);
        let mut shift = (want - m.bits() as i64).max(0);
        if (e - shift) % 2 != 0 {
            shift += 1;
        }
        m <<= shift as usize;
        e -= shift;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let half = e / 2;
        if exact {
            return Float::new(r, half).round(prec, mode);
        }
        let sticky = (r << 1usize) + 1;
        Float::round_mantissa(sticky, half - 1, prec, mode)
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn neg(&self) -> Float {
        Float {
            m: -self.m.clone(),
            e: self.e,
        }
    }

    pub fn max(&self, other: &Float) -> Float {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Float) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Float) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes first
        let (ma, mb) = (self.magnitude(), other.magnitude());
        if ma != mb {
            let o = ma.cmp(&mb);
            return if sa > 0 { o } else { o.reverse() };
        }
        let e = self.e.min(other.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &other.m << (other.e - e) as usize;
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rounding_directions_bracket_the_value() {
        let third = q(1, 3);
        let lo = Float::from_rational(&third, 20, Round::Down);
        let hi = Float::from_rational(&third, 20, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert_eq!(hi.to_rational() - lo.to_rational(), q(1, 1 << 21));
        let neg = Float::from_rational(&-third.clone(), 20, Round::Up);
        assert_eq!(neg, lo.neg());
    }

    #[test]
    fn exact_values_survive() {
        let x = Float::from_rational(&q(3, 8), 4, Round::Nearest);
        assert_eq!(x.to_rational(), q(3, 8));
        assert_eq!(Float::from_int(9).sqrt(10, Round::Down), Float::from_int(3));
    }

    #[test]
    fn sqrt_two_brackets() {
        let two = Float::from_int(2);
        let lo = two.sqrt(64, Round::Down).to_rational();
        let hi = two.sqrt(64, Round::Up).to_rational();
        let two_q = q(2, 1);
        assert!(&lo * &lo < two_q && two_q < &hi * &hi);
    }

    #[test]
    fn division_and_ordering() {
        let a = Float::from_int(1);
        let b = Float::from_int(-3);
        let d = a.div(&b, 30, Round::Up);
        assert!(d.to_rational() > q(-1, 3));
        assert!(Float::from_int(-5) < Float::from_int(-4));
        assert!(Float::pow2(-100) > Float::zero());
    }

    #[test]
    fn far_apart_addition_rounds_correctly() {
        let big = Float::from_int(1);
        let tiny = Float::pow2(-500);
        assert_eq!(big.add(&tiny, 10, Round::Nearest), big);
        assert!(big.add(&tiny, 10, Round::Up) > big);
        assert!(big.add(&tiny.neg(), 10, Round::Down) < big);
    }
}
