//! Sparse multivariate integer polynomials and the rational-function input
//! language.
//!
//! Terms are stored keyed by [`Monomial`], whose ordering is graded reverse
//! lexicographic; iteration from the largest term gives the canonical
//! printing order.

mod gcd;
mod parse;

pub use gcd::{coprime_check, gcd, CoprimeVerdict};
pub use parse::{parse_polynomial, parse_rational_function, ParseError};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::univariate::UPoly;

/// Exponent vector. Ordered by graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // larger when the last differing exponent is smaller
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with integer coefficients over named variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), BigInt::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer content (positive), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading (grevlex) coefficient positive.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.terms.values().next_back().unwrap().is_negative() {
            c = -c;
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a / &c)).collect(),
        }
    }

    /// Formal partial derivative with respect to variable `k`.
    pub fn partial_derivative(&self, k: usize) -> MultiPoly {
        assert!(k < self.nvars(), "variable index out of range");
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[k] = e - 1;
            out.add_term(m2, c * BigInt::from(e));
        }
        out
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars());
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-expresses the polynomial over `new_vars`, which must contain
    /// every variable that occurs.
    pub fn embed(&self, new_vars: &[String]) -> MultiPoly {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v).unwrap_or(usize::MAX))
            .collect();
        let mut out = Self::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    assert!(map[i] != usize::MAX, "variable {} missing", self.vars[i]);
                    e[map[i]] = x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// `p(t*z_1, ..., t*z_d)` where `t` is the variable at index `t_index`
    /// (which must not occur in `self`).
    pub fn homogenize_with(&self, t_index: usize) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            assert_eq!(m.0[t_index], 0, "scaling variable already occurs");
            let mut e = m.0.clone();
            e[t_index] = u32::try_from(m.degree()).expect("exponent overflow");
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Permutes variables: the variable at old index `perm[i]` moves to index `i`.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        let vars: Vec<String> = perm.iter().map(|&j| self.vars[j].clone()).collect();
        let mut out = Self::zero(&vars);
        for (m, c) in &self.terms {
            let e = perm.iter().map(|&j| m.0[j]).collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Restriction to the line `z_i = a_i + b_i s`.
    pub fn restrict_to_line(&self, a: &[BigInt], b: &[BigInt]) -> UPoly {
        let lines: Vec<UPoly> = a
            .iter()
            .zip(b)
            .map(|(a, b)| UPoly::new(vec![a.clone(), b.clone()]))
            .collect();
        let mut acc = UPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UPoly::constant(c.clone());
            for (l, &e) in lines.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * l;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// The polynomial as a univariate polynomial in variable `k`, if no other
    /// variable occurs.
    pub fn to_univariate(&self, k: usize) -> Option<UPoly> {
        let mut cs = vec![BigInt::zero(); self.degree_in(k) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != k && e > 0) {
                return None;
            }
            cs[m.0[k] as usize] += c;
        }
        Some(UPoly::new(cs))
    }

    pub fn from_univariate(vars: &[String], k: usize, p: &UPoly) -> MultiPoly {
        let mut out = Self::zero(vars);
        for (i, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[k] = i as u32;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Square-free part: the product of the distinct irreducible factors,
    /// primitive with positive leading coefficient.
    pub fn square_free_part(&self) -> MultiPoly {
        gcd::square_free_part(self)
    }

    /// Exact quotient, if `other` divides `self`.
    pub fn exact_div(&self, other: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(other);
        gcd::exact_div(self, other)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Renders in the input grammar, so the output reparses to the same
    /// polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    // the grammar has no unary minus
                    write!(f, "0 - ")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A user-supplied rational function `G/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionInput {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
    /// Set by the user; never inferred.
    pub combinatorial_asserted: bool,
}

impl RationalFunctionInput {
    pub fn vars(&self) -> &[String] {
        self.numerator.vars()
    }

    pub fn with_combinatorial(mut self, asserted: bool) -> Self {
        self.combinatorial_asserted = asserted;
        self
    }
}

/// Convenience for building variable lists.
pub fn var_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        var_names(&["x", "y"])
    }

    fn p(s: &str) -> MultiPoly {
        parse_polynomial(s, &vars()).unwrap()
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("1-x-y").partial_derivative(0), p("0-1"));
        assert_eq!(p("x^2*y^2-x*y+1").partial_derivative(0), p("2*x*y^2-y"));
    }

    #[test]
    fn derivative_of_extended_equation() {
        let v = var_names(&["x", "y", "z", "t"]);
        let e = parse_polynomial("x*y*z*t^3-x*z*t^2-y*z*t^2+x*t+y*t+z*t-1", &v).unwrap();
        let d = parse_polynomial("3*x*y*z*t^2-2*x*z*t-2*y*z*t+x+y+z", &v).unwrap();
        assert_eq!(e.partial_derivative(3), d);
        // finite-difference style check at integer points: e(t+1)-e(t) vs integral of d
        for pt in [[1i64, 2, 3, 1], [-2, 1, 4, 2], [3, -1, 2, -1]] {
            let x: Vec<BigInt> = pt.iter().map(|&v| BigInt::from(v)).collect();
            // e is cubic in t: e(t+h) - e(t-h) = 2h d(t) + (h^3/3) e'''(t)
            let h = BigInt::from(1);
            let mut up = x.clone();
            up[3] += &h;
            let mut dn = x.clone();
            dn[3] -= &h;
            let third = BigInt::from(6) * &x[0] * &x[1] * &x[2];
            let lhs = e.eval_int(&up) - e.eval_int(&dn);
            let rhs = BigInt::from(2) * d.eval_int(&x) + third / 3;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn grevlex_order() {
        let n = 3;
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        // same degree; last differing exponent: a has 1, b has 0 => a smaller
        assert!(a < b);
        assert!(Monomial::one(n) < Monomial::var(n, 2));
    }

    #[test]
    fn homogenize_scales_each_term() {
        let v = var_names(&["x", "y", "t"]);
        let h = parse_polynomial("1-x-y", &v).unwrap();
        assert_eq!(h.homogenize_with(2), parse_polynomial("1-t*x-t*y", &v).unwrap());
    }

    #[test]
    fn display_reparses() {
        let q = p("0-3*x^2*y+7*y-2");
        assert_eq!(p(&q.to_string()), q);
    }
}
