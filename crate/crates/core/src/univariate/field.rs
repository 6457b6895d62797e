//! Arithmetic in `Q[u]/(m)` for an integer polynomial `m`, with elements
//! kept as an integer numerator polynomial over a single positive integer
//! denominator. When `m` is irreducible this is a number field.

use super::{QPoly, UPoly};
use crate::expr::MultiPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: UPoly,
}

/// Element `num(u) / den` with `den > 0`, `deg num < deg m` and no common
/// integer factor between `den` and the content of `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: UPoly,
    den: BigInt,
}

impl FieldElem {
    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.degree() {
            0 => Some(BigRational::new(self.num.coeff(0), self.den.clone())),
            _ => None,
        }
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_upoly(&self.num).scale(&BigRational::new(BigInt::one(), self.den.clone()))
    }
}

fn normalize(num: UPoly, den: BigInt) -> FieldElem {
    if num.is_zero() {
        return FieldElem {
            num,
            den: BigInt::one(),
        };
    }
    let mut g = num.content().gcd(&den);
    if den.is_negative() {
        g = -g;
    }
    if g.is_one() {
        FieldElem { num, den }
    } else {
        FieldElem {
            num: UPoly::new(num.coeffs().iter().map(|c| c / &g).collect()),
            den: den / g,
        }
    }
}

impl NumberField {
    /// `m` must have positive degree; it is made primitive.
    pub fn new(m: &UPoly) -> Self {
        assert!(m.degree() >= 1, "modulus must have positive degree");
        NumberField { modulus: m.primitive() }
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            num: UPoly::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, c: BigInt) -> FieldElem {
        normalize(UPoly::constant(c), BigInt::one())
    }

    pub fn from_rational(&self, q: &BigRational) -> FieldElem {
        normalize(UPoly::constant(q.numer().clone()), q.denom().clone())
    }

    /// The class of `u`.
    pub fn gen(&self) -> FieldElem {
        self.reduce(UPoly::x(), BigInt::one())
    }

    pub fn from_upoly(&self, p: &UPoly) -> FieldElem {
        self.reduce(p.clone(), BigInt::one())
    }

    pub fn from_qpoly(&self, p: &QPoly) -> FieldElem {
        let (num, den) = p.to_integer();
        self.reduce(num, den)
    }

    /// Reduces `num/den` modulo `m`.
    pub fn reduce(&self, num: UPoly, den: BigInt) -> FieldElem {
        let n = self.modulus.degree();
        if num.degree() < n || num.is_zero() {
            return normalize(num, den);
        }
        let lc = self.modulus.lc();
        if lc.is_one() {
            return normalize(num.prem(&self.modulus), den);
        }
        // lc^k * num = q*m + r
        let k = num.degree() - n + 1;
        let r = num.prem(&self.modulus);
        normalize(r, den * num_traits::pow(lc, k))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let l = a.den.lcm(&b.den);
        let num = &a.num.scale(&(&l / &a.den)) + &b.num.scale(&(&l / &b.den));
        normalize(num, l)
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            num: -a.num.clone(),
            den: a.den.clone(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        self.reduce(&a.num * &b.num, &a.den * &b.den)
    }

    pub fn scale(&self, a: &FieldElem, c: &BigRational) -> FieldElem {
        normalize(a.num.scale(c.numer()), &a.den * c.denom())
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Inverse, or `None` when `a` is a zero divisor.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        let inv = QPoly::from_upoly(&a.num).inverse_mod(&QPoly::from_upoly(&self.modulus))?;
        Some(self.scale(&self.from_qpoly(&inv), &BigRational::from_integer(a.den.clone())))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// `p(x)` by Horner's rule.
    pub fn compose(&self, p: &QPoly, x: &FieldElem) -> FieldElem {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_rational(c));
        }
        acc
    }

    /// `f(coords)`, with `coords` indexed like the variables of `f`.
    pub fn eval_multi(&self, f: &MultiPoly, coords: &[FieldElem]) -> FieldElem {
        assert_eq!(f.nvars(), coords.len());
        let powers: Vec<Vec<FieldElem>> = coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut v = vec![self.one()];
                for _ in 0..f.degree_in(i) {
                    let next = self.mul(v.last().unwrap(), c);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.zero();
        for (m, c) in f.terms() {
            let mut t = self.from_int(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = self.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// Characteristic polynomial of multiplication by `a`:
    /// `prod (den*y - num(α))` over the roots `α` of `m`, up to a positive
    /// constant, as a primitive integer polynomial in `y`. Computed by
    /// evaluating the resultant `Res_u(m(u), den*y - num(u))` at `deg m + 1`
    /// integer points and interpolating.
    pub fn charpoly(&self, a: &FieldElem) -> UPoly {
        let n = self.degree();
        if a.num.degree() == 0 {
            // (den*y - c)^n
            let lin = UPoly::new(vec![-a.num.coeff(0), a.den.clone()]);
            return lin.pow(n).primitive();
        }
        let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
        let ys: Vec<BigInt> = xs
            .iter()
            .map(|y| {
                let mut g = -a.num.clone();
                g = &g + &UPoly::constant(&a.den * y);
                self.modulus.resultant(&g)
            })
            .collect();
        interpolate(&xs, &ys).primitive()
    }
}

/// Newton interpolation through integer points with integer values; the
/// result is returned as an integer polynomial scaled to clear denominators.
pub(crate) fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> UPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = QPoly::zero();
    for i in (0..n).rev() {
        let lin = QPoly::new(vec![BigRational::from_integer(-xs[i].clone()), BigRational::one()]);
        acc = &(&acc * &lin) + &QPoly::constant(dd[i].clone());
    }
    acc.to_integer().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(xs: &[i64]) -> UPoly {
        UPoly::from_i64s(xs)
    }

    #[test]
    fn sqrt2_field() {
        let k = NumberField::new(&up(&[-2, 0, 1]));
        let s = k.gen();
        assert_eq!(k.mul(&s, &s), k.from_int(2.into()));
        let half_s = k.inv(&s).unwrap();
        assert_eq!(k.mul(&half_s, &s), k.one());
        // (1 + sqrt2)^2 = 3 + 2 sqrt2 has charpoly y^2 - 6y + 1
        let a = k.add(&k.one(), &s);
        assert_eq!(k.charpoly(&k.mul(&a, &a)), up(&[1, -6, 1]));
    }

    #[test]
    fn non_monic_modulus() {
        // 2u^2 - 1: u = 1/sqrt2
        let k = NumberField::new(&up(&[-1, 0, 2]));
        let u = k.gen();
        let u2 = k.mul(&u, &u);
        assert_eq!(u2.as_rational(), Some(BigRational::new(1.into(), 2.into())));
        let u3 = k.mul(&u2, &u);
        assert_eq!(k.scale(&u3, &BigRational::from_integer(2.into())), u);
        assert_eq!(k.charpoly(&u), up(&[-1, 0, 2]));
        assert_eq!(k.charpoly(&u2), up(&[1, -4, 4]));
    }

    #[test]
    fn zero_divisor_has_no_inverse() {
        let k = NumberField::new(&up(&[-1, 0, 1]));
        let a = k.add(&k.gen(), &k.one());
        assert!(k.inv(&a).is_none());
    }
}
