//! Certified decimal rendering: digits are only printed once the isolating
//! interval pins them down.

use super::AlgebraicNumber;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// `floor(log10 q)` for `q > 0`.
fn floor_log10(q: &BigRational) -> i64 {
    let est = ((q.numer().bits() as f64 - q.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let mut e = est - 1;
    // smallest adjustment so that 10^e <= q < 10^(e+1)
    loop {
        let lo = pow10_rational(e);
        let hi = pow10_rational(e + 1);
        if &lo <= q && q < &hi {
            return e;
        }
        if q < &lo {
            e -= 1;
        } else {
            e += 1;
        }
    }
}

fn pow10_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-e) as u32))
    }
}

/// `digits` significant digits of `q > 0`, truncated, with its exponent.
fn leading_digits(q: &BigRational, digits: usize) -> (BigInt, i64) {
    let e = floor_log10(q);
    let scaled = q * pow10_rational(digits as i64 - 1 - e);
    (scaled.to_integer(), e)
}

fn format(negative: bool, m: &BigInt, e: i64, digits: usize) -> String {
    let s = m.to_string();
    debug_assert_eq!(s.len(), digits);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if e >= 0 {
        let int_len = e as usize + 1;
        if int_len >= s.len() {
            out.push_str(&s);
            out.push_str(&"0".repeat(int_len - s.len()));
            out.push_str(".0");
        } else {
            out.push_str(&s[..int_len]);
            out.push('.');
            out.push_str(&s[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-e - 1) as usize));
        out.push_str(&s);
    }
    out
}

/// Exact decimal when it terminates within `digits` significant digits.
fn exact_decimal(q: &BigRational, digits: usize) -> Option<String> {
    if q.is_zero() {
        return Some("0.0".to_string());
    }
    let mut d = q.denom().clone();
    for f in [BigInt::from(2), BigInt::from(5)] {
        while d.is_multiple_of(&f) {
            d /= &f;
        }
    }
    if !d.is_one() {
        return None;
    }
    let mut k = 0u32;
    // smallest k with q * 10^k an integer
    while !(q * BigRational::from_integer(pow10(k))).is_integer() {
        k += 1;
    }
    let n = (q.abs() * BigRational::from_integer(pow10(k))).to_integer();
    let s = n.to_string();
    let sig = s.trim_start_matches('0').len();
    if sig > digits {
        return None;
    }
    let neg = if q.is_negative() { "-" } else { "" };
    if k == 0 {
        return Some(format!("{neg}{s}.0"));
    }
    let k = k as usize;
    let padded = if s.len() <= k {
        format!("{}{}", "0".repeat(k + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = padded.split_at(padded.len() - k);
    Some(format!("{neg}{int}.{frac}"))
}

/// `digits` significant digits of a real algebraic number, truncated toward
/// zero. Exact decimals are printed exactly.
pub fn truncated_decimal(a: &AlgebraicNumber, digits: usize) -> String {
    let digits = digits.max(1);
    if let Some(q) = a.as_rational() {
        if let Some(s) = exact_decimal(&q, digits) {
            return s;
        }
        let (m, e) = leading_digits(&q.abs(), digits);
        return format(q.is_negative(), &m, e, digits);
    }
    let mut t: i64 = -(digits as i64 * 4) - 8;
    loop {
        let (lo, hi) = a.ball(t).re_bounds();
        if lo.is_positive() || hi.is_negative() {
            let negative = hi.is_negative();
            let (l, h) = if negative { (-hi, -lo) } else { (lo, hi) };
            let (ml, el) = leading_digits(&l, digits);
            let (mh, eh) = leading_digits(&h, digits);
            if ml == mh && el == eh {
                return format(negative, &ml, el, digits);
            }
        }
        t = t.saturating_mul(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::univariate::UPoly;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_rationals() {
        assert_eq!(truncated_decimal(&AlgebraicNumber::from_int(4), 12), "4.0");
        assert_eq!(truncated_decimal(&AlgebraicNumber::from_rational(&q(1, 4)), 12), "0.25");
        assert_eq!(
            truncated_decimal(&AlgebraicNumber::from_rational(&q(-5, 2)), 12),
            "-2.5"
        );
        assert_eq!(
            truncated_decimal(&AlgebraicNumber::from_rational(&q(1, 3)), 5),
            "0.33333"
        );
        assert_eq!(truncated_decimal(&AlgebraicNumber::from_rational(&q(2, 3)), 3), "0.666");
        assert_eq!(
            truncated_decimal(&AlgebraicNumber::from_rational(&q(1, 800)), 12),
            "0.00125"
        );
        assert_eq!(truncated_decimal(&AlgebraicNumber::from_int(123456), 3), "123000.0");
    }

    #[test]
    fn seventeen_plus_twelve_root_two() {
        let roots = super::super::isolate_real_roots(&UPoly::from_i64s(&[1, -34, 1]));
        let big = roots.last().unwrap();
        assert_eq!(truncated_decimal(big, 20), "33.970562748477140585");
        assert_eq!(truncated_decimal(&roots[0], 6), "0.0294372");
        assert_eq!(truncated_decimal(&big.neg(), 4), "-33.97");
    }
}
