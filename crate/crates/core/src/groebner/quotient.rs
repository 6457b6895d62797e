//! Linear algebra in the finite-dimensional quotient `Q[vars]/I` of a
//! zero-dimensional ideal: standard monomials, coordinates, minimal
//! polynomials of elements and their powers as a basis (the shape lemma).

use super::{GPoly, GroebnerBasis};
use crate::expr::MultiPoly;
use crate::univariate::QPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

pub struct QuotientAlgebra<'a> {
    basis: &'a GroebnerBasis,
    standard: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

/// Incremental row echelon form over Q that remembers how each row was
/// formed from the inserted vectors.
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
}

impl Echelon {
    /// Reduces `x` against the rows; `combo` starts as the combination that
    /// `x` represents and is updated alongside.
    fn reduce(&self, x: &mut [BigRational], combo: &mut Vec<BigRational>) {
        for (pivot, row, rc) in &self.rows {
            if x[*pivot].is_zero() {
                continue;
            }
            let f = x[*pivot].clone();
            for (xi, ri) in x.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *xi -= &f * ri;
                }
            }
            if combo.len() < rc.len() {
                combo.resize(rc.len(), BigRational::zero());
            }
            for (ci, ri) in combo.iter_mut().zip(rc) {
                if !ri.is_zero() {
                    *ci -= &f * ri;
                }
            }
        }
    }

    fn insert(&mut self, mut x: Vec<BigRational>, mut combo: Vec<BigRational>) {
        let pivot = x.iter().position(|c| !c.is_zero()).expect("nonzero row");
        let inv = x[pivot].recip();
        for c in x.iter_mut().chain(combo.iter_mut()) {
            *c *= &inv;
        }
        self.rows.push((pivot, x, combo));
    }
}

impl<'a> QuotientAlgebra<'a> {
    /// `None` if the ideal is not zero-dimensional.
    pub fn new(basis: &'a GroebnerBasis) -> Option<Self> {
        if !basis.is_zero_dimensional() {
            return None;
        }
        let n = basis.vars().len();
        let lms = basis.leading_monomials();
        let mut standard = Vec::new();
        if !basis.is_unit_ideal() {
            let bounds: Vec<u32> = (0..n)
                .map(|v| {
                    lms.iter()
                        .filter(|m| m.iter().enumerate().all(|(k, &e)| k == v || e == 0))
                        .map(|m| m[v])
                        .min()
                        .expect("zero-dimensional")
                })
                .collect();
            let mut cur = vec![0u32; n];
            enumerate(0, &bounds, &lms, &mut cur, &mut standard);
        }
        standard.sort_by(|a, b| basis.order().cmp(a, b));
        let index = standard.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Some(QuotientAlgebra { basis, standard, index })
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> &[Vec<u32>] {
        &self.standard
    }

    fn coords_of_reduced(&self, r: &GPoly, scale: &BigRational) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (e, c) in &r.terms {
            out[self.index[e]] = BigRational::from_integer(c.clone()) * scale;
        }
        out
    }

    /// Coordinates of `p` in the standard-monomial basis.
    pub fn coordinates(&self, p: &MultiPoly) -> Vec<BigRational> {
        let (r, m) = self.basis.normal_form_scaled(p);
        let g = GPoly::from_multi(&r, self.basis.order());
        self.coords_of_reduced(&g, &BigRational::new(BigInt::one(), m))
    }

    /// Minimal polynomial `m` of the element `f` (monic, rational) together
    /// with, when `f` generates the algebra (`deg m == dim`), the
    /// representation of each element of `targets` as a polynomial in `f`
    /// of degree below `deg m`.
    pub fn minimal_polynomial_and_shape(&self, f: &MultiPoly, targets: &[MultiPoly]) -> (QPoly, Option<Vec<QPoly>>) {
        let order = self.basis.order();
        let vars = self.basis.vars();
        let f = f.embed(vars);
        let mut ech = Echelon { rows: Vec::new() };
        // power = s * f^k as an integer polynomial in normal form
        let mut power = GPoly::from_multi(&MultiPoly::one(vars), order);
        let mut s = BigRational::one();
        let mut k = 0usize;
        let minpoly = loop {
            let mut x = self.coords_of_reduced(&power, &s.recip());
            let mut combo = vec![BigRational::zero(); k + 1];
            combo[k] = BigRational::one();
            ech.reduce(&mut x, &mut combo);
            if x.iter().all(|c| c.is_zero()) {
                combo.resize(k + 1, BigRational::zero());
                break QPoly::new(combo).monic();
            }
            ech.insert(x, combo);
            k += 1;
            let prod = GPoly::from_multi(&(&power.to_multi(vars) * &f), order);
            let (r, m) = self.basis.reduce_gpoly(&prod);
            s *= BigRational::from_integer(m);
            power = r;
        };
        if minpoly.degree() != self.dim() {
            return (minpoly, None);
        }
        let shapes = targets
            .iter()
            .map(|t| {
                let mut x = self.coordinates(t);
                let mut combo = Vec::new();
                ech.reduce(&mut x, &mut combo);
                debug_assert!(x.iter().all(|c| c.is_zero()));
                // x - sum(row combos) = 0, so t = -combo
                QPoly::new(combo.into_iter().map(|c| -c).collect())
            })
            .collect();
        (minpoly, Some(shapes))
    }
}

fn enumerate(v: usize, bounds: &[u32], lms: &[Vec<u32>], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if v == bounds.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..bounds[v] {
        cur[v] = e;
        // prune: a prefix already divisible stays divisible
        let blocked = lms.iter().any(|m| {
            m.iter()
                .enumerate()
                .all(|(k, &x)| if k <= v { x <= cur[k] } else { x == 0 })
        });
        if blocked {
            break;
        }
        enumerate(v + 1, bounds, lms, cur, out);
    }
    cur[v] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_polynomial, var_names};
    use crate::groebner::{groebner_basis, GroebnerConfig, MonomialOrder};

    fn q(xs: &[i64]) -> QPoly {
        QPoly::new(xs.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn shape_of_two_points() {
        // solutions (1, 2) and (-1, 3)
        let vars = var_names(&["x", "y"]);
        let src: Vec<MultiPoly> = ["x^2-1", "2*y+x-5"]
            .iter()
            .map(|s| parse_polynomial(s, &vars).unwrap())
            .collect();
        let b = groebner_basis(&src, &vars, MonomialOrder::GrevLex, &GroebnerConfig::default()).unwrap();
        let alg = QuotientAlgebra::new(&b).unwrap();
        assert_eq!(alg.dim(), 2);
        let x = parse_polynomial("x", &vars).unwrap();
        let y = parse_polynomial("y", &vars).unwrap();
        let (m, shape) = alg.minimal_polynomial_and_shape(&y, std::slice::from_ref(&x));
        // y in {2, 3}
        assert_eq!(m, q(&[6, -5, 1]));
        // x = 5 - 2y
        assert_eq!(shape.unwrap()[0], q(&[5, -2]));
        // x alone also separates
        let (m, shape) = alg.minimal_polynomial_and_shape(&x, &[y]);
        assert_eq!(m, q(&[-1, 0, 1]));
        assert!(shape.is_some());
    }

    #[test]
    fn non_separating_element() {
        // four points (±1, ±1): x does not separate
        let vars = var_names(&["x", "y"]);
        let src: Vec<MultiPoly> = ["x^2-1", "y^2-1"]
            .iter()
            .map(|s| parse_polynomial(s, &vars).unwrap())
            .collect();
        let b = groebner_basis(&src, &vars, MonomialOrder::GrevLex, &GroebnerConfig::default()).unwrap();
        let alg = QuotientAlgebra::new(&b).unwrap();
        assert_eq!(alg.dim(), 4);
        let (m, shape) = alg.minimal_polynomial_and_shape(&parse_polynomial("x", &vars).unwrap(), &[]);
        assert_eq!(m.degree(), 2);
        assert!(shape.is_none());
        let (m, shape) = alg.minimal_polynomial_and_shape(&parse_polynomial("x+2*y", &vars).unwrap(), &[]);
        assert_eq!(m.degree(), 4);
        assert!(shape.is_some());
    }
}
