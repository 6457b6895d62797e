//! Leading-order asymptotic terms `C ρ^n (π n)^α` from contributing points.

use super::hessian::{eval_at, phase_hessian, point_string, PhaseHessian};
use super::points::CriticalPoint;
use super::{AcsvError, Direction};
use crate::algnum::AlgebraicNumber;
use crate::expr::RationalFunctionInput;
use crate::univariate::field::FieldElem;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug)]
pub struct Term {
    pub c: AlgebraicNumber,
    pub rho: AlgebraicNumber,
    /// Exponent of `π n`.
    pub alpha: BigRational,
}

/// The term contributed by one point, before merging.
#[derive(Clone, Debug)]
pub struct Contribution {
    pub point: CriticalPoint,
    pub hessian: PhaseHessian,
    pub term: Term,
}

/// `sum_k C_k ρ_k^n (π n)^α (1 + O(1/n))`.
#[derive(Clone, Debug)]
pub struct AsymptoticExpansion {
    /// Distinct `ρ` values, in order of first appearance among the contributors.
    pub terms: Vec<Term>,
    pub contributions: Vec<Contribution>,
}

impl AsymptoticExpansion {
    /// Exponent of the relative error factor `O(n^e)`.
    pub fn error_order(&self) -> BigRational {
        BigRational::from_integer((-1).into())
    }

    pub fn alpha(&self) -> BigRational {
        self.terms[0].alpha.clone()
    }
}

fn contribution(f: &RationalFunctionInput, r: &Direction, w: &CriticalPoint) -> Result<Contribution, AcsvError> {
    let h = &f.denominator;
    let d = h.nvars();
    let field = &w.factor.field;
    let z = w.factor.z();
    let hes = phase_hessian(h, w, r)?;
    if hes.det_elem.is_zero() {
        return Err(AcsvError::DegenerateHessian { point: point_string(w) });
    }
    let k = hes.last_variable();
    let g = eval_at(&f.numerator, w);
    if g.is_zero() {
        return Err(AcsvError::VanishingNumerator { point: point_string(w) });
    }
    let hk = eval_at(&h.partial_derivative(k), w);
    let a = field.neg(&field.div(&g, &field.mul(&z[k], &hk)).expect("nonzero partial"));

    let mut prod: FieldElem = field.one();
    for (i, zi) in z.iter().enumerate() {
        prod = field.mul(&prod, &field.pow(zi, r.get(i)));
    }
    let rho = field.inv(&prod).expect("nonzero coordinates");

    // C = A (2 r_d)^((1-d)/2) / sqrt(det) = A / sqrt(det (2 r_d)^(d-1)),
    // the positive real factor not affecting the principal branch
    let two_rd = BigInt::from(2 * r.get(k));
    let scaled = field.mul(&hes.det_elem, &field.from_int(num_traits::pow(two_rd, d - 1)));
    let lift = |x: &FieldElem| AlgebraicNumber::from_field_element(field, x, &w.u_root);
    let c = lift(&a).div(&lift(&scaled).sqrt()).expect("nonzero determinant");
    let alpha = BigRational::new(BigInt::from(1 - d as i64), BigInt::from(2));
    Ok(Contribution {
        point: w.clone(),
        hessian: hes,
        term: Term {
            c,
            rho: lift(&rho),
            alpha,
        },
    })
}

/// One term per contributor, with equal `ρ` merged by summing `C`. Merged
/// terms whose constants cancel exactly are dropped.
pub fn asymptotic_expansion(
    f: &RationalFunctionInput,
    r: &Direction,
    contributors: &[CriticalPoint],
) -> Result<AsymptoticExpansion, AcsvError> {
    assert!(!contributors.is_empty(), "no contributing points");
    let contributions: Vec<Contribution> = contributors
        .iter()
        .map(|w| contribution(f, r, w))
        .collect::<Result<_, _>>()?;
    let mut terms: Vec<Term> = Vec::new();
    for c in &contributions {
        match terms.iter_mut().find(|t| t.rho.is_equal(&c.term.rho)) {
            Some(t) => t.c = t.c.add(&c.term.c),
            None => terms.push(c.term.clone()),
        }
    }
    terms.retain(|t| !t.c.is_zero());
    if terms.is_empty() {
        return Err(AcsvError::VanishingLeadingTerm);
    }
    Ok(AsymptoticExpansion { terms, contributions })
}
