//! Recursive multivariate gcd, exact division and square-free parts.
//!
//! Internally polynomials are maps from trimmed exponent vectors (no
//! trailing zeros) to coefficients; with Rust's `Vec` ordering this is the
//! lexicographic monomial order, and the representation does not need to
//! know the number of variables, which lets it serve as a coefficient ring
//! for the subresultant routines.

use super::MultiPoly;
use crate::univariate::prs::{self, PrsRing};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct Sparse(BTreeMap<Vec<u32>, BigInt>);

fn trimmed(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl Sparse {
    fn from_multi(p: &MultiPoly) -> Sparse {
        Sparse(p.terms.iter().map(|(m, c)| (trimmed(m.0.clone()), c.clone())).collect())
    }

    fn to_multi(&self, vars: &[String]) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            self.0.iter().map(|(e, c)| {
                let mut v = e.clone();
                v.resize(vars.len(), 0);
                (v, c.clone())
            }),
        )
    }

    fn insert(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(trimmed(e)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.0.iter().next_back()
    }

    /// Highest variable index occurring.
    fn main_var(&self) -> Option<usize> {
        self.0.keys().filter_map(|e| e.len().checked_sub(1)).max()
    }

    fn coeffs_in(&self, v: usize) -> Vec<Sparse> {
        let mut out: Vec<Sparse> = Vec::new();
        for (e, c) in &self.0 {
            let k = e.get(v).copied().unwrap_or(0) as usize;
            if out.len() <= k {
                out.resize(k + 1, Sparse::default());
            }
            let mut e2 = e.clone();
            if v < e2.len() {
                e2[v] = 0;
            }
            out[k].insert(e2, c.clone());
        }
        out
    }

    fn from_coeffs(cs: &[Sparse], v: usize) -> Sparse {
        let mut out = Sparse::default();
        for (k, c) in cs.iter().enumerate() {
            for (e, a) in &c.0 {
                let mut e2 = e.clone();
                if e2.len() <= v {
                    e2.resize(v + 1, 0);
                }
                e2[v] += k as u32;
                out.insert(e2, a.clone());
            }
        }
        out
    }

    fn derivative(&self, v: usize) -> Sparse {
        let mut out = Sparse::default();
        for (e, c) in &self.0 {
            let k = e.get(v).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            out.insert(e2, c * BigInt::from(k));
        }
        out
    }

    fn int_content(&self) -> BigInt {
        self.0.values().fold(BigInt::zero(), |g, c| Integer::gcd(&g, c))
    }
}

fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0))
        .collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.to_vec();
    for (i, &e) in b.iter().enumerate() {
        out[i] = out[i].checked_sub(e)?;
    }
    Some(trimmed(out))
}

fn sparse_exact_div(a: &Sparse, b: &Sparse) -> Option<Sparse> {
    let (lb_e, lb_c) = b.leading().expect("division by zero polynomial");
    let (lb_e, lb_c) = (lb_e.clone(), lb_c.clone());
    let mut r = a.clone();
    let mut q = Sparse::default();
    while let Some((le, lc)) = r.leading() {
        let m = mono_div(le, &lb_e)?;
        let (c, rem) = lc.div_rem(&lb_c);
        if !rem.is_zero() {
            return None;
        }
        for (e, bc) in &b.0 {
            r.insert(mono_mul(e, &m), -(bc * &c));
        }
        q.insert(m, c);
    }
    Some(q)
}

impl PrsRing for Sparse {
    fn nil() -> Self {
        Sparse::default()
    }
    fn unit() -> Self {
        let mut s = Sparse::default();
        s.0.insert(Vec::new(), BigInt::one());
        s
    }
    fn is_nil(&self) -> bool {
        self.0.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.insert(e.clone(), c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.insert(e.clone(), -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Sparse::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                out.insert(mono_mul(e1, e2), c1 * c2);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Sparse(self.0.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }
    fn exact_div(&self, other: &Self) -> Self {
        sparse_exact_div(self, other).expect("inexact multivariate division")
    }
    fn gcd(&self, other: &Self) -> Self {
        sparse_gcd(self, other)
    }
    fn is_negative_unit_normal(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

fn normalize(p: &Sparse) -> Sparse {
    if p.is_nil() {
        return p.clone();
    }
    let mut c = p.int_content();
    if p.is_negative_unit_normal() {
        c = -c;
    }
    Sparse(p.0.iter().map(|(e, a)| (e.clone(), a / &c)).collect())
}

/// Gcd with positive leading coefficient (lex), including the integer content.
fn sparse_gcd(a: &Sparse, b: &Sparse) -> Sparse {
    if a.is_nil() {
        return abs_normal(b);
    }
    if b.is_nil() {
        return abs_normal(a);
    }
    let (va, vb) = (a.main_var(), b.main_var());
    let Some(v) = va.max(vb) else {
        // both constants
        let g = Integer::gcd(&a.int_content(), &b.int_content());
        return Sparse(BTreeMap::from([(Vec::new(), g)]));
    };
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    if ca.len() == 1 {
        return sparse_gcd(a, &cb.iter().fold(Sparse::nil(), |g, c| sparse_gcd(&g, c)));
    }
    if cb.len() == 1 {
        return sparse_gcd(b, &ca.iter().fold(Sparse::nil(), |g, c| sparse_gcd(&g, c)));
    }
    let g = prs::subresultant_gcd(&ca, &cb);
    abs_normal(&Sparse::from_coeffs(&g, v))
}

fn abs_normal(p: &Sparse) -> Sparse {
    if p.is_negative_unit_normal() {
        p.negate()
    } else {
        p.clone()
    }
}

fn sparse_square_free(p: &Sparse) -> Sparse {
    let Some(v) = p.main_var() else {
        return Sparse::unit();
    };
    let cs = p.coeffs_in(v);
    let content = cs.iter().fold(Sparse::nil(), |g, c| sparse_gcd(&g, c));
    let pp = sparse_exact_div(p, &content).expect("content divides");
    let g = sparse_gcd(&pp, &pp.derivative(v));
    let part = sparse_exact_div(&pp, &g).expect("gcd divides");
    normalize(&sparse_square_free(&content).times(&part))
}

pub(super) fn square_free_part(p: &MultiPoly) -> MultiPoly {
    assert!(!p.is_zero(), "square-free part of zero");
    let s = sparse_square_free(&Sparse::from_multi(p));
    s.to_multi(p.vars()).primitive()
}

pub(super) fn exact_div(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    sparse_exact_div(&Sparse::from_multi(a), &Sparse::from_multi(b)).map(|q| q.to_multi(a.vars()))
}

/// Greatest common divisor, primitive with positive leading coefficient.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.vars(), b.vars());
    sparse_gcd(&Sparse::from_multi(a), &Sparse::from_multi(b))
        .to_multi(a.vars())
        .primitive()
}

/// Outcome of the randomized coprimality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoprimeVerdict {
    /// No common factor was seen on any of `trials` random lines. This is a
    /// probabilistic verdict.
    ProbablyCoprime { trials: usize },
    /// A nonconstant common factor exists.
    NotCoprime { common_factor: MultiPoly },
}

/// Restricts `g` and `h` to random integer lines and checks that the
/// univariate gcds are constant. A shared factor on some line is confirmed
/// with an exact multivariate gcd before reporting failure.
pub fn coprime_check(g: &MultiPoly, h: &MultiPoly, trials: usize, seed: u64) -> CoprimeVerdict {
    assert!(!g.is_zero() && !h.is_zero(), "coprime check on zero polynomial");
    if g.is_constant() || h.is_constant() {
        return CoprimeVerdict::ProbablyCoprime { trials };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = g.nvars();
    for _ in 0..trials {
        let a: Vec<BigInt> = (0..d).map(|_| BigInt::from(rng.gen_range(-10i64..=10))).collect();
        let b: Vec<BigInt> = (0..d).map(|_| BigInt::from(rng.gen_range(-10i64..=10))).collect();
        let gl = g.restrict_to_line(&a, &b);
        let hl = h.restrict_to_line(&a, &b);
        if gl.is_zero() || hl.is_zero() {
            continue;
        }
        if gl.gcd(&hl).degree() > 0 {
            let common = gcd(g, h);
            if !common.is_constant() {
                return CoprimeVerdict::NotCoprime { common_factor: common };
            }
        }
    }
    CoprimeVerdict::ProbablyCoprime { trials }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_polynomial, var_names};

    fn p(s: &str) -> MultiPoly {
        parse_polynomial(s, &var_names(&["x", "y"])).unwrap()
    }

    #[test]
    fn square_free_examples() {
        assert_eq!(p("(1-x-y)^2").square_free_part(), p("1-x-y").primitive());
        assert_eq!(p("x^2*y").square_free_part(), p("x*y"));
        let f = p("(1-x-y)*(1-2*x)^2");
        let expected = p("(1-x-y)*(1-2*x)").primitive();
        assert_eq!(f.square_free_part(), expected);
    }

    #[test]
    fn multivariate_gcd() {
        let a = p("(1-x-y)*(x+3*y^2)");
        let b = p("(1-x-y)*(2-x*y)");
        assert_eq!(gcd(&a, &b), p("1-x-y").primitive());
        assert!(gcd(&p("x+y"), &p("x-y")).is_constant());
    }

    #[test]
    fn exact_division() {
        let a = p("(1-x-y)*(x+3*y^2)");
        assert_eq!(a.exact_div(&p("x+3*y^2")), Some(p("1-x-y")));
        assert_eq!(a.exact_div(&p("x+y")), None);
    }

    #[test]
    fn coprime_examples() {
        assert!(matches!(
            coprime_check(&p("1"), &p("1-x-y"), 5, 1),
            CoprimeVerdict::ProbablyCoprime { .. }
        ));
        assert!(matches!(
            coprime_check(&p("1-x-y"), &p("(1-x-y)*(1-2*x)"), 5, 1),
            CoprimeVerdict::NotCoprime { .. }
        ));
        let g = p("x^2*y^2-x*y+1");
        let h = p("1-(x+y+x*y-x*y^2-x^2*y+x^2*y^3+x^3*y^2)");
        assert_eq!(
            coprime_check(&g, &h, 5, 7),
            CoprimeVerdict::ProbablyCoprime { trials: 5 }
        );
    }
}
