//! Dense univariate polynomials over the integers and the rationals.

pub mod factor;
pub mod field;
mod modp;
pub mod prs;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer polynomial, coefficients stored lowest degree first with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        prs::trim(&mut coeffs);
        UPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `x - a` for an integer `a`.
    pub fn linear_root(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    /// The primitive linear polynomial vanishing at the rational `q`.
    pub fn from_rational_root(q: &BigRational) -> Self {
        Self::new(vec![-q.numer().clone(), q.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        prs::content(&self.coeffs).abs()
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        UPoly::new(prs::primitive(&self.coeffs))
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::new(prs::scale(&self.coeffs, c))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^2)`.
    pub fn compose_square(&self) -> UPoly {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        UPoly::new(out)
    }

    /// `c^deg * p((a*x + b)/c)` for `c != 0`.
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> UPoly {
        let n = self.degree();
        let lin = UPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = UPoly::zero();
        let mut cpow = vec![BigInt::one()];
        for i in 1..=n {
            let next = &cpow[i - 1] * c;
            cpow.push(next);
        }
        for (i, coef) in self.coeffs.iter().enumerate().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(coef * &cpow[n - i]);
        }
        acc
    }

    /// `x^deg * p(1/x)`.
    pub fn reverse(&self) -> UPoly {
        let mut cs = self.coeffs.clone();
        cs.reverse();
        UPoly::new(cs)
    }

    /// `p(x + a)` for an integer shift.
    pub fn taylor_shift(&self, a: &BigInt) -> UPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        UPoly::new(c)
    }

    /// `2^(k*deg) p(x / 2^k)`, an integer polynomial with the roots scaled by 2^k.
    pub fn scale_roots_pow2(&self, k: i64) -> UPoly {
        let n = self.degree() as i64;
        if k >= 0 {
            UPoly::new(
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c << ((k * (n - i as i64)) as usize))
                    .collect(),
            )
        } else {
            // p(2^m x) for m = -k
            let m = (-k) as usize;
            UPoly::new(self.coeffs.iter().enumerate().map(|(i, c)| c << (m * i)).collect())
        }
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // homogenized Horner over the integers: sum c_i a^i b^(n-i)
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        BigRational::new(acc, b.pow(self.degree() as u32))
    }

    /// Sign of `p(x)` without building the rational value.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc.cmp(&BigInt::zero())
    }

    pub fn eval_q(&self) -> QPoly {
        QPoly::from_upoly(self)
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        UPoly::new(prs::subresultant_gcd(&self.coeffs, &other.coeffs)).primitive_keep_sign()
    }

    fn primitive_keep_sign(self) -> UPoly {
        if self.is_zero() {
            return self;
        }
        let mut p = self.primitive();
        if p.is_zero() {
            p = UPoly::one();
        }
        p
    }

    pub fn resultant(&self, other: &UPoly) -> BigInt {
        prs::resultant(&self.coeffs, &other.coeffs)
    }

    pub fn prem(&self, other: &UPoly) -> UPoly {
        UPoly::new(prs::prem(&self.coeffs, &other.coeffs))
    }

    /// Exact quotient over the integers, if it exists.
    pub fn exact_div(&self, other: &UPoly) -> Option<UPoly> {
        prs::exact_quotient(&self.coeffs, &other.coeffs, prs::bigint_divides).map(UPoly::new)
    }

    /// Remainder of `self` modulo `other` after scaling so that the result is
    /// integral; equals the rational remainder up to a positive constant.
    pub fn primitive_rem(&self, other: &UPoly) -> UPoly {
        let mut r = self.prem(other);
        let da = self.degree();
        let db = other.degree();
        // prem multiplies by lc^(da - db + 1); undo a negative multiplier
        if da >= db && other.lc().is_negative() && (da - db + 1) % 2 == 1 {
            r = -r;
        }
        r.primitive_abs()
    }

    fn primitive_abs(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        UPoly::new(prs::exact_div_scalar(&self.coeffs, &c))
    }

    /// Square-free part, primitive with positive leading coefficient.
    pub fn square_free(&self) -> UPoly {
        if self.degree() == 0 {
            return UPoly::one();
        }
        let p = self.primitive();
        let g = p.gcd(&p.derivative());
        if g.degree() == 0 {
            return p;
        }
        p.exact_div(&g).expect("gcd divides").primitive()
    }

    pub fn is_square_free(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Sum of absolute coefficient values.
    pub fn norm1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Upper bound `2^k` on the modulus of every complex root.
    pub fn root_bound_log2(&self) -> i64 {
        // Cauchy: |z| < 1 + max |c_i / c_n|
        let n = self.degree();
        if n == 0 {
            return 0;
        }
        let lc = self.lc().abs();
        let mut best: i64 = 0;
        for c in &self.coeffs[..n] {
            if c.is_zero() {
                continue;
            }
            let q = c.abs().div_ceil(&lc);
            best = best.max(q.bits() as i64);
        }
        best + 1
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

/// Polynomial over the rationals, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, d) = self.to_integer();
        write!(f, "({p})/{d}")
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_upoly(p: &UPoly) -> Self {
        Self::new(p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant value if the polynomial has degree 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Write as `p / d` with `p` integral and `d > 0` minimal.
    pub fn to_integer(&self) -> (UPoly, BigInt) {
        let d = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let p = UPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
                .collect(),
        );
        (p, d)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> QPoly {
        let l = self.lc();
        QPoly::new(self.coeffs.iter().map(|x| x / &l).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn div_rem(&self, other: &QPoly) -> (QPoly, QPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let db = other.degree();
        if r.len() < other.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        let lb = other.lc();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let c = &r[dr] / &lb;
            if !c.is_zero() {
                for (i, b) in other.coeffs.iter().enumerate() {
                    let t = b * &c;
                    r[i + dr - db] -= t;
                }
                q[dr - db] = c;
            }
            r.pop();
        }
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, other: &QPoly) -> QPoly {
        self.div_rem(other).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, m: &QPoly) -> Option<QPoly> {
        // extended Euclid tracking the coefficient of self
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != 0 {
            return None;
        }
        let inv = r0.coeffs[0].recip();
        Some(s0.scale(&inv).rem(m))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

/// Number of sign variations in a coefficient sequence, zeros skipped.
pub fn sign_variations(cs: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in cs {
        let s = match c.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm sequence of a square-free polynomial, with each remainder made
/// primitive by a positive constant so that signs are preserved.
pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.degree() == 0 {
            break;
        }
        let r = a.primitive_rem(b);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn sturm_variations_at(seq: &[UPoly], x: &BigRational) -> usize {
    let signs: Vec<BigInt> = seq
        .iter()
        .map(|p| match p.sign_at(x) {
            Ordering::Less => BigInt::from(-1),
            Ordering::Equal => BigInt::zero(),
            Ordering::Greater => BigInt::one(),
        })
        .collect();
    sign_variations(&signs)
}

fn sturm_variations_at_infinity(seq: &[UPoly], positive: bool) -> usize {
    let signs: Vec<BigInt> = seq
        .iter()
        .map(|p| {
            let s = p.lc();
            if !positive && p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    sign_variations(&signs)
}

/// Number of distinct real roots of `p`, by Sturm's theorem.
pub fn sturm_count_all(p: &UPoly) -> usize {
    let p = p.square_free();
    if p.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(&p);
    sturm_variations_at_infinity(&seq, false) - sturm_variations_at_infinity(&seq, true)
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn sturm_count(p: &UPoly, a: &BigRational, b: &BigRational) -> usize {
    let p = p.square_free();
    if p.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(&p);
    sturm_variations_at(&seq, a).saturating_sub(sturm_variations_at(&seq, b))
}
