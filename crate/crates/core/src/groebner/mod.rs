//! Gröbner bases over the integers by Buchberger's algorithm.
//!
//! Coefficients stay integral: reductions are fraction-free and every
//! intermediate polynomial is made primitive. Critical pairs are pruned with
//! the Gebauer–Möller installation of the product and chain criteria and
//! selected by the sugar strategy.

mod quotient;

pub use quotient::QuotientAlgebra;

use crate::expr::MultiPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic with the first variable largest.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of critical pairs reduced before giving up.
    pub max_pairs: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Gröbner basis computation exceeded the limit of {limit} critical pairs")]
    ResourceLimit { limit: usize },
    #[error("empty generator list")]
    EmptyInput,
}

type Term = (Vec<u32>, BigInt);

/// Polynomial as terms sorted in decreasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GPoly {
    pub(crate) terms: Vec<Term>,
    sugar: u64,
}

fn total_degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

impl GPoly {
    pub(crate) fn from_multi(p: &MultiPoly, order: MonomialOrder) -> GPoly {
        let mut terms: Vec<Term> = p.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|t| total_degree(&t.0)).max().unwrap_or(0);
        GPoly { terms, sugar }
    }

    pub(crate) fn to_multi(&self, vars: &[String]) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.iter().cloned())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &[u32] {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    /// Divides by the integer content and makes the leading coefficient positive.
    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
    }

    /// `a*self - c*m*q`.
    fn axpy(&self, a: &BigInt, c: &BigInt, m: &[u32], q: &GPoly, order: MonomialOrder) -> Vec<Term> {
        let mut out = Vec::with_capacity(self.terms.len() + q.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| -> Vec<u32> { q.terms[k].0.iter().zip(m).map(|(x, y)| x + y).collect() };
        let mut qj = (j < q.terms.len()).then(|| shifted(j));
        while i < self.terms.len() || qj.is_some() {
            let ord = match (&qj, self.terms.get(i)) {
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
                (Some(e), Some(t)) => order.cmp(&t.0, e),
            };
            match ord {
                Ordering::Greater => {
                    out.push((self.terms[i].0.clone(), a * &self.terms[i].1));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((qj.take().unwrap(), -(c * &q.terms[j].1)));
                    j += 1;
                    qj = (j < q.terms.len()).then(|| shifted(j));
                }
                Ordering::Equal => {
                    let v = a * &self.terms[i].1 - c * &q.terms[j].1;
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    qj = (j < q.terms.len()).then(|| shifted(j));
                }
            }
        }
        out
    }
}

/// Fraction-free full reduction of `p` by `basis`. Returns `(r, m)` with
/// `m > 0` and `m*p ≡ r` modulo the ideal, no term of `r` divisible by a
/// leading monomial of the basis. When `primitive` is set the multiplier is
/// not tracked and `r` is made primitive.
fn reduce(p: &GPoly, basis: &[&GPoly], order: MonomialOrder, primitive: bool) -> (GPoly, BigInt) {
    let mut p = p.clone();
    let mut rem: Vec<Term> = Vec::new();
    let mut mult = BigInt::one();
    let mut steps = 0usize;
    while !p.terms.is_empty() {
        let (lm, lc) = (p.terms[0].0.clone(), p.terms[0].1.clone());
        let Some(g) = basis.iter().find(|g| divides(g.lm(), &lm)) else {
            rem.push(p.terms.remove(0));
            continue;
        };
        let h = lc.gcd(g.lc());
        let mut a = g.lc() / &h;
        let mut c = &lc / &h;
        if a.is_negative() {
            a = -a;
            c = -c;
        }
        let m = quotient(&lm, g.lm());
        let sugar = p.sugar.max(g.sugar + total_degree(&m));
        p = GPoly {
            terms: p.axpy(&a, &c, &m, g, order),
            sugar,
        };
        if !a.is_one() {
            for t in &mut rem {
                t.1 = &t.1 * &a;
            }
            if !primitive {
                mult *= &a;
            }
        }
        steps += 1;
        if primitive && steps.is_multiple_of(16) {
            // keep the working polynomial small; the remainder is rescaled with it
            let mut g = BigInt::zero();
            for (_, c) in rem.iter().chain(&p.terms) {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if g > BigInt::one() {
                for t in rem.iter_mut().chain(p.terms.iter_mut()) {
                    t.1 = &t.1 / &g;
                }
            }
        }
    }
    let mut r = GPoly {
        terms: rem,
        sugar: p.sugar,
    };
    if primitive {
        r.make_primitive();
    } else if !r.terms.is_empty() {
        let mut g = mult.clone();
        for (_, c) in &r.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            for t in &mut r.terms {
                t.1 = &t.1 / &g;
            }
            mult /= &g;
        }
    } else {
        mult = BigInt::one();
    }
    (r, mult)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
    sugar: u64,
}

/// A reduced Gröbner basis. Generators are primitive with positive leading
/// coefficient and sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    vars: Vec<String>,
    order: MonomialOrder,
    polys: Vec<GPoly>,
}

/// The lexicographic case, with the variable order recorded in `vars()`
/// (first variable largest, the Kronecker variable last).
pub type LexIdealBasis = GroebnerBasis;

impl GroebnerBasis {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> Vec<MultiPoly> {
        self.polys.iter().map(|p| p.to_multi(&self.vars)).collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True if the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.polys.iter().map(|p| p.lm().to_vec()).collect()
    }

    /// True iff every variable has a pure power among the leading monomials.
    /// The unit ideal (no solutions) counts as zero-dimensional.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit_ideal() {
            return true;
        }
        (0..self.vars.len()).all(|v| {
            self.polys
                .iter()
                .any(|p| p.lm().iter().enumerate().all(|(k, &e)| (k == v) == (e > 0)))
        })
    }

    fn embed(&self, p: &MultiPoly) -> GPoly {
        GPoly::from_multi(&p.embed(&self.vars), self.order)
    }

    /// Normal form up to a positive integer multiplier: returns `(r, m)`
    /// with `m*p - r` in the ideal and no term of `r` in the leading ideal.
    pub fn normal_form_scaled(&self, p: &MultiPoly) -> (MultiPoly, BigInt) {
        let refs: Vec<&GPoly> = self.polys.iter().collect();
        let (r, m) = reduce(&self.embed(p), &refs, self.order, false);
        (r.to_multi(&self.vars), m)
    }

    pub(crate) fn reduce_gpoly(&self, p: &GPoly) -> (GPoly, BigInt) {
        let refs: Vec<&GPoly> = self.polys.iter().collect();
        reduce(p, &refs, self.order, false)
    }

    /// Remainder of `p` on division by the basis (see `normal_form_scaled`
    /// for the multiplier).
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        self.normal_form_scaled(p).0
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// The S-polynomial of generators `i` and `j`.
    pub fn s_polynomial(&self, i: usize, j: usize) -> MultiPoly {
        s_poly(&self.polys[i], &self.polys[j], self.order).to_multi(&self.vars)
    }
}

fn s_poly(f: &GPoly, g: &GPoly, order: MonomialOrder) -> GPoly {
    let l = lcm(f.lm(), g.lm());
    let mf = quotient(&l, f.lm());
    let mg = quotient(&l, g.lm());
    let h = f.lc().gcd(g.lc());
    let a = g.lc() / &h;
    let c = f.lc() / &h;
    let fm = GPoly {
        terms: f
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(&mf).map(|(x, y)| x + y).collect(), c.clone()))
            .collect(),
        sugar: f.sugar + total_degree(&mf),
    };
    GPoly {
        terms: fm.axpy(&a, &c, &mg, g, order),
        sugar: fm.sugar.max(g.sugar + total_degree(&mg)),
    }
}

/// Reduced Gröbner basis of the ideal generated by `polys` over `vars`
/// (every polynomial is re-expressed over `vars`).
pub fn groebner_basis(
    polys: &[MultiPoly],
    vars: &[String],
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    if polys.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    let mut input: Vec<GPoly> = polys
        .iter()
        .map(|p| {
            let mut g = GPoly::from_multi(&p.embed(vars), order);
            g.make_primitive();
            g
        })
        .filter(|g| !g.is_zero())
        .collect();
    // deterministic regardless of input order
    input.sort_by(|a, b| cmp_poly(a, b, order));
    input.dedup();

    let mut basis: Vec<GPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let unit = |vars: &[String]| GroebnerBasis {
        vars: vars.to_vec(),
        order,
        polys: vec![GPoly {
            terms: vec![(vec![0; vars.len()], BigInt::one())],
            sugar: 0,
        }],
    };

    for g in input {
        let refs: Vec<&GPoly> = basis.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let (h, _) = reduce(&g, &refs, order, true);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(vars));
        }
        update(&mut basis, &mut active, &mut pairs, h);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        processed += 1;
        if processed > config.max_pairs {
            return Err(GroebnerError::ResourceLimit {
                limit: config.max_pairs,
            });
        }
        let s = s_poly(&basis[pair.i], &basis[pair.j], order);
        let refs: Vec<&GPoly> = basis.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let (h, _) = reduce(&s, &refs, order, true);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(vars));
        }
        update(&mut basis, &mut active, &mut pairs, h);
    }

    let mut minimal: Vec<GPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut keep: Vec<GPoly> = Vec::new();
    for p in minimal {
        if !keep.iter().any(|q| divides(q.lm(), p.lm())) {
            keep.push(p);
        }
    }
    // inter-reduce the tails
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<&GPoly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let (r, _) = reduce(&keep[i], &others, order, true);
        debug_assert_eq!(r.lm(), keep[i].lm());
        reduced.push(r);
    }
    Ok(GroebnerBasis {
        vars: vars.to_vec(),
        order,
        polys: reduced,
    })
}

fn cmp_poly(a: &GPoly, b: &GPoly, order: MonomialOrder) -> Ordering {
    for (x, y) in a.terms.iter().zip(&b.terms) {
        let o = order.cmp(&x.0, &y.0).then_with(|| x.1.cmp(&y.1));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

/// Gebauer–Möller update: adds `h` to the basis and installs the new pairs.
fn update(basis: &mut Vec<GPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: GPoly) {
    let k = basis.len();
    let hm = h.lm().to_vec();
    let candidates: Vec<Pair> = (0..k)
        .filter(|&i| active[i])
        .map(|i| Pair {
            i,
            j: k,
            lcm: lcm(basis[i].lm(), &hm),
            sugar: (basis[i].sugar + total_degree(&lcm(basis[i].lm(), &hm)) - total_degree(basis[i].lm()))
                .max(h.sugar + total_degree(&lcm(basis[i].lm(), &hm)) - total_degree(&hm)),
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<Pair> = Vec::new();
    for (a, p) in candidates.iter().enumerate() {
        let is_coprime = coprime(basis[p.i].lm(), &hm);
        let dominated = candidates
            .iter()
            .enumerate()
            .any(|(b, q)| b != a && divides(&q.lcm, &p.lcm) && (q.lcm != p.lcm || b < a));
        if is_coprime || !dominated {
            kept.push(p.clone());
        }
    }
    // remove duplicates among equal lcms, then drop coprime pairs (product criterion)
    let mut new_pairs: Vec<Pair> = Vec::new();
    for p in kept {
        if new_pairs.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        new_pairs.push(p);
    }
    new_pairs.retain(|p| !coprime(basis[p.i].lm(), &hm));

    // chain criterion on old pairs
    pairs.retain(|p| {
        !(divides(&hm, &p.lcm) && lcm(basis[p.i].lm(), &hm) != p.lcm && lcm(basis[p.j].lm(), &hm) != p.lcm)
    });
    pairs.extend(new_pairs);

    for i in 0..k {
        if active[i] && divides(&hm, basis[i].lm()) {
            active[i] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

/// Reduced lexicographic Gröbner basis with `variable_order[0]` largest.
pub fn buchberger_lex(
    polys: &[MultiPoly],
    variable_order: &[String],
    config: &GroebnerConfig,
) -> Result<LexIdealBasis, GroebnerError> {
    groebner_basis(polys, variable_order, MonomialOrder::Lex, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_polynomial, var_names};

    fn polys(src: &[&str], vars: &[String]) -> Vec<MultiPoly> {
        src.iter().map(|s| parse_polynomial(s, vars).unwrap()).collect()
    }

    fn lex(src: &[&str], names: &[&str]) -> GroebnerBasis {
        let vars = var_names(names);
        buchberger_lex(&polys(src, &vars), &vars, &GroebnerConfig::default()).unwrap()
    }

    fn gens_as_strings(b: &GroebnerBasis) -> Vec<String> {
        let mut v: Vec<String> = b.generators().iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    fn expect(b: &GroebnerBasis, src: &[&str]) {
        let want = polys(src, b.vars());
        let mut want: Vec<String> = want.iter().map(|p| p.to_string()).collect();
        want.sort();
        assert_eq!(gens_as_strings(b), want);
    }

    #[test]
    fn linear_solve() {
        let b = lex(&["x+y-2", "x-y"], &["x", "y"]);
        expect(&b, &["x-1", "y-1"]);
        assert!(b.is_zero_dimensional());
    }

    #[test]
    fn circle_and_diagonal() {
        let b = lex(&["x^2+y^2-1", "x-y"], &["x", "y"]);
        expect(&b, &["x-y", "2*y^2-1"]);
    }

    #[test]
    fn binomial_critical_system() {
        let b = lex(&["1-x-y", "0-x-l", "0-y-l"], &["x", "y", "l"]);
        // {x+l, y+l, 2l+1} spans the same ideal but is not tail-reduced
        expect(&b, &["2*x-1", "2*y-1", "2*l+1"]);
        for p in polys(&["x+l", "y+l", "2*l+1"], b.vars()) {
            assert!(b.contains(&p));
        }
    }

    #[test]
    fn normal_forms() {
        let b = lex(&["x-1"], &["x"]);
        let vars = b.vars().to_vec();
        assert_eq!(
            b.normal_form(&parse_polynomial("x", &vars).unwrap()),
            MultiPoly::one(&vars)
        );

        let b = lex(&["x^2+y^2-1", "x-y"], &["x", "y"]);
        let vars = b.vars().to_vec();
        let (r, m) = b.normal_form_scaled(&parse_polynomial("x^2", &vars).unwrap());
        assert!(r.degree_in(0) == 0 && r.degree_in(1) <= 2);
        assert_eq!((r, m), (MultiPoly::one(&vars), BigInt::from(2)));

        let b = lex(&["x-1", "y-1"], &["x", "y"]);
        assert!(b.contains(&parse_polynomial("x+y-2", b.vars()).unwrap()));
    }

    #[test]
    fn zero_dimensionality() {
        assert!(!lex(&["x-y"], &["x", "y"]).is_zero_dimensional());
        assert!(lex(&["x^2-2", "y^3-x"], &["x", "y"]).is_zero_dimensional());
    }

    #[test]
    fn unit_ideal_detected() {
        let b = lex(&["x*y-1", "x"], &["x", "y"]);
        assert!(b.is_unit_ideal());
        let b = lex(&["1-x-y", "0-1", "0-1"], &["x", "y"]);
        assert!(b.is_unit_ideal());
    }

    #[test]
    fn grevlex_and_lex_generate_same_ideal() {
        let vars = var_names(&["x", "y", "z"]);
        let src = polys(&["x^2+y*z-2", "y^2-x*z+1", "z^2-x-y"], &vars);
        let cfg = GroebnerConfig::default();
        let g = groebner_basis(&src, &vars, MonomialOrder::GrevLex, &cfg).unwrap();
        let l = buchberger_lex(&src, &vars, &cfg).unwrap();
        for p in l.generators() {
            assert!(g.contains(&p));
        }
        for p in g.generators() {
            assert!(l.contains(&p));
        }
        for f in &src {
            assert!(l.contains(f) && g.contains(f));
        }
    }

    #[test]
    fn buchberger_criterion_holds() {
        let b = lex(&["x^2+y*z-2", "y^2-x*z+1", "z^2-x-y"], &["x", "y", "z"]);
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                assert!(b.normal_form(&b.s_polynomial(i, j)).is_zero());
            }
        }
    }

    #[test]
    fn resource_limit() {
        let vars = var_names(&["x", "y", "z"]);
        let src = polys(&["x^2+y*z-2", "y^2-x*z+1", "z^2-x-y"], &vars);
        let r = buchberger_lex(&src, &vars, &GroebnerConfig { max_pairs: 1 });
        assert_eq!(r, Err(GroebnerError::ResourceLimit { limit: 1 }));
    }
}
