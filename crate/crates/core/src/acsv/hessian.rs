//! The phase Hessian at a critical point.

use super::points::CriticalPoint;
use super::{AcsvError, Direction};
use crate::algnum::AlgebraicNumber;
use crate::expr::MultiPoly;
use crate::univariate::field::{FieldElem, NumberField};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug)]
pub struct PhaseHessian {
    /// `(d-1) x (d-1)`, symmetric.
    pub entries: Vec<Vec<AlgebraicNumber>>,
    pub determinant: AlgebraicNumber,
    /// `U_{i,j} = w_i w_j H_{z_i z_j}(w) / (w_d H_{z_d}(w))`, `d x d`.
    pub u: Vec<Vec<AlgebraicNumber>>,
    /// `V_i = r_i / r_d`.
    pub v: Vec<BigRational>,
    /// Variable order used: position `i` holds original variable
    /// `permutation[i]`. The identity unless `H_{z_d}(w) = 0`.
    pub permutation: Vec<usize>,
    pub(crate) det_elem: FieldElem,
}

impl PhaseHessian {
    /// Index (in the original order) of the variable playing the role of `z_d`.
    pub fn last_variable(&self) -> usize {
        *self.permutation.last().expect("d >= 1")
    }
}

/// Determinant by cofactor expansion along the first row.
pub(crate) fn cofactor_det<T: Clone>(
    m: &[Vec<T>],
    one: &T,
    add: &impl Fn(&T, &T) -> T,
    sub: &impl Fn(&T, &T) -> T,
    mul: &impl Fn(&T, &T) -> T,
) -> T {
    let n = m.len();
    match n {
        0 => one.clone(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc: Option<T> = None;
            for j in 0..n {
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = mul(&m[0][j], &cofactor_det(&minor, one, add, sub, mul));
                acc = Some(match acc {
                    None => term,
                    Some(a) if j % 2 == 0 => add(&a, &term),
                    Some(a) => sub(&a, &term),
                });
            }
            acc.expect("n >= 2")
        }
    }
}

/// Evaluates `f` at the point's `z` coordinates in the point's field.
pub(crate) fn eval_at(f: &MultiPoly, w: &CriticalPoint) -> FieldElem {
    w.factor.field.eval_multi(f, w.factor.z())
}

/// Chooses the variable to put last: `d` itself when `H_{z_d}(w) != 0`,
/// otherwise the largest index with a nonvanishing partial.
pub(crate) fn choose_last(partials: &[FieldElem]) -> Option<usize> {
    (0..partials.len()).rev().find(|&k| !partials[k].is_zero())
}

pub fn phase_hessian(h: &MultiPoly, w: &CriticalPoint, r: &Direction) -> Result<PhaseHessian, AcsvError> {
    let d = h.nvars();
    let field: &NumberField = &w.factor.field;
    let z = w.factor.z();
    let partials: Vec<FieldElem> = (0..d).map(|k| eval_at(&h.partial_derivative(k), w)).collect();
    let last = choose_last(&partials).ok_or_else(|| AcsvError::SingularContributor { point: point_string(w) })?;
    let mut perm: Vec<usize> = (0..d).collect();
    perm.swap(last, d - 1);

    let denom = field.mul(&z[perm[d - 1]], &partials[perm[d - 1]]);
    let denom_inv = field.inv(&denom).expect("nonzero in a field");
    let mut u = vec![vec![field.zero(); d]; d];
    for i in 0..d {
        for j in i..d {
            let (a, b) = (perm[i], perm[j]);
            let hij = eval_at(&h.partial_derivative(a).partial_derivative(b), w);
            let val = field.mul(&field.mul(&field.mul(&z[a], &z[b]), &hij), &denom_inv);
            u[i][j] = val.clone();
            u[j][i] = val;
        }
    }
    let rd = BigInt::from(r.get(perm[d - 1]));
    let v: Vec<BigRational> = (0..d)
        .map(|i| BigRational::new(BigInt::from(r.get(perm[i])), rd.clone()))
        .collect();

    let q = |x: &BigRational| field.from_rational(x);
    let mut hes = vec![vec![field.zero(); d - 1]; d - 1];
    for i in 0..d - 1 {
        for j in i..d - 1 {
            let vv = &v[i] * &v[j];
            let mut e = field.add(&q(&vv), &u[i][j]);
            e = field.sub(&e, &field.scale(&u[i][d - 1], &v[j]));
            e = field.sub(&e, &field.scale(&u[j][d - 1], &v[i]));
            e = field.add(&e, &field.scale(&u[d - 1][d - 1], &vv));
            if i == j {
                e = field.add(&e, &q(&v[i]));
            }
            hes[i][j] = e.clone();
            hes[j][i] = e;
        }
    }
    let det_elem = cofactor_det(
        &hes,
        &field.one(),
        &|a, b| field.add(a, b),
        &|a, b| field.sub(a, b),
        &|a, b| field.mul(a, b),
    );

    let lift = |x: &FieldElem| AlgebraicNumber::from_field_element(field, x, &w.u_root);
    Ok(PhaseHessian {
        entries: hes.iter().map(|row| row.iter().map(lift).collect()).collect(),
        determinant: lift(&det_elem),
        u: u.iter().map(|row| row.iter().map(lift).collect()).collect(),
        v,
        permutation: perm,
        det_elem,
    })
}

pub(crate) fn point_string(w: &CriticalPoint) -> String {
    let parts: Vec<String> = w.coords.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}
