//! Solutions of the extended system, minimality, and grouping by modulus.
//!
//! Solutions are handled one irreducible factor of `P` at a time. Every
//! coordinate is an element of the number field `Q[u]/(factor)`, so a test
//! such as `t = 1` is a single exact field computation that holds for all
//! roots of the factor at once.

use super::{AcsvError, Direction};
use crate::algnum::{isolate_complex_roots, isolate_real_roots, AlgebraicNumber, Ball};
use crate::expr::MultiPoly;
use crate::kronecker::KroneckerRep;
use crate::univariate::factor::{factor_square_free, Factorization};
use crate::univariate::field::{FieldElem, NumberField};
use crate::univariate::UPoly;
use num_rational::BigRational;
use std::sync::Arc;

/// One irreducible factor of `P` with the solution coordinates
/// `z_1, ..., z_d, λ, t` as elements of its field.
#[derive(Debug)]
pub(crate) struct FactorField {
    pub(crate) field: NumberField,
    pub(crate) elems: Vec<FieldElem>,
}

impl FactorField {
    pub(crate) fn poly(&self) -> &UPoly {
        self.field.modulus()
    }

    /// `z` coordinates only.
    pub(crate) fn z(&self) -> &[FieldElem] {
        &self.elems[..self.elems.len() - 2]
    }

    fn t(&self) -> &FieldElem {
        self.elems.last().expect("t")
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub coords: Vec<AlgebraicNumber>,
    pub lambda: AlgebraicNumber,
    pub t: AlgebraicNumber,
    /// The root of `P` this solution corresponds to.
    pub u_root: AlgebraicNumber,
    pub real_positive: bool,
    pub minimal: bool,
    pub contributing: bool,
    pub(crate) factor: Arc<FactorField>,
}

impl CriticalPoint {
    /// True when both points have exactly the same coordinates.
    pub fn same_point(&self, other: &CriticalPoint) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| close(a, b) && a.is_equal(b))
    }
}

/// Cheap rejection: false only when enclosures prove `a != b`.
fn close(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    a.ball(-64).overlaps(&b.ball(-64))
}

/// Enclosure of `x(gen)`.
fn enclose(x: &FieldElem, gen: &AlgebraicNumber, t: i64) -> Ball {
    let bits = x.num().coeffs().iter().map(|c| c.bits()).max().unwrap_or(1) as i64;
    let deg = x.num().degree() as i64;
    let g = gen.ball(t - bits - 4 * deg - 8);
    let gm = g.abs_upper().magnitude().max(0);
    let prec = (64 - t + bits + deg * gm) as u64;
    Ball::eval_qpoly(&x.to_qpoly(), &g, prec)
}

/// Splits `P` into irreducible factors and expresses every variable in each
/// factor's field. Every equation of `system` is checked to vanish exactly.
pub(crate) fn solution_fields(rep: &KroneckerRep, system: &[MultiPoly]) -> Result<Vec<Arc<FactorField>>, AcsvError> {
    if rep.p().degree() == 0 {
        return Ok(Vec::new());
    }
    let factors = match factor_square_free(rep.p()) {
        Factorization::Complete(fs) => fs,
        Factorization::GaveUp => {
            return Err(AcsvError::ResourceLimit(format!(
                "could not factor the degree {} polynomial P",
                rep.p().degree()
            )))
        }
    };
    let mut out = Vec::new();
    for f in factors {
        let field = NumberField::new(&f);
        let elems = rep.coordinates(&field);
        for eq in system {
            if !field.eval_multi(eq, &elems).is_zero() {
                return Err(AcsvError::Inconsistent(format!(
                    "the Kronecker representation does not satisfy {eq}"
                )));
            }
        }
        out.push(Arc::new(FactorField { field, elems }));
    }
    Ok(out)
}

/// All critical points: solutions with `t` identically 1 on their factor.
pub(crate) fn critical_points(fields: &[Arc<FactorField>]) -> Vec<CriticalPoint> {
    let mut out = Vec::new();
    for ff in fields {
        let one = ff.field.one();
        if ff.t() != &one {
            continue;
        }
        let d = ff.z().len();
        for gen in isolate_complex_roots(ff.poly()) {
            let coords: Vec<AlgebraicNumber> = ff
                .z()
                .iter()
                .map(|x| AlgebraicNumber::from_field_element(&ff.field, x, &gen))
                .collect();
            // λ and the z_i are real whenever u is
            let real_positive = gen.is_real() && coords.iter().all(|c| c.sign() == Ok(1));
            out.push(CriticalPoint {
                lambda: AlgebraicNumber::from_field_element(&ff.field, &ff.elems[d], &gen),
                t: AlgebraicNumber::one(),
                coords,
                u_root: gen,
                real_positive,
                minimal: false,
                contributing: false,
                factor: ff.clone(),
            });
        }
    }
    out
}

/// Real solutions with `z = w` and `0 < t < 1`, as `t` values.
pub(crate) fn torus_witnesses(fields: &[Arc<FactorField>], w: &[AlgebraicNumber]) -> Vec<AlgebraicNumber> {
    let mut out = Vec::new();
    for ff in fields {
        if ff.t() == &ff.field.one() {
            continue;
        }
        for gen in isolate_real_roots(ff.poly()) {
            let tb = enclose(ff.t(), &gen, -40);
            let (lo, hi) = tb.re_bounds();
            if hi <= BigRational::from_integer(0.into()) || lo >= BigRational::from_integer(1.into()) {
                continue;
            }
            let same_z = ff
                .z()
                .iter()
                .zip(w)
                .all(|(x, wi)| enclose(x, &gen, -64).overlaps(&wi.ball(-64)));
            if !same_z {
                continue;
            }
            let t = AlgebraicNumber::from_field_element(&ff.field, ff.t(), &gen);
            let in_unit = t.sign() == Ok(1) && t.sub(&AlgebraicNumber::one()).sign() == Ok(-1);
            if !in_unit {
                continue;
            }
            let z_equal = ff
                .z()
                .iter()
                .zip(w)
                .all(|(x, wi)| AlgebraicNumber::from_field_element(&ff.field, x, &gen).is_equal(wi));
            if z_equal {
                out.push(t);
            }
        }
    }
    out
}

/// Marks minimal points among the positive real critical points. Errors when
/// none or more than one survives.
pub(crate) fn mark_minimal(points: &mut [CriticalPoint], fields: &[Arc<FactorField>]) -> Result<usize, AcsvError> {
    let mut minimal = Vec::new();
    for (i, p) in points.iter_mut().enumerate() {
        if p.real_positive && torus_witnesses(fields, &p.coords).is_empty() {
            p.minimal = true;
            minimal.push(i);
        }
    }
    match minimal.len() {
        0 => Err(AcsvError::NoMinimalPoint {
            critical_points: points.len(),
            positive: points.iter().filter(|p| p.real_positive).count(),
        }),
        1 => Ok(minimal[0]),
        n => Err(AcsvError::MultipleMinimalPoints { count: n }),
    }
}

/// All critical points, with the minimal flag set on the unique positive
/// real minimal one.
pub fn find_minimal_critical_points(
    h: &MultiPoly,
    r: &Direction,
    rep: &KroneckerRep,
) -> Result<Vec<CriticalPoint>, AcsvError> {
    let system = super::build_extended_system(h, r);
    let fields = solution_fields(rep, &system)?;
    let mut points = critical_points(&fields);
    mark_minimal(&mut points, &fields)?;
    Ok(points)
}

/// True when `|y_i| = w_i` for every coordinate.
fn same_modulus(y: &CriticalPoint, w: &CriticalPoint) -> bool {
    let w2: Vec<AlgebraicNumber> = w.coords.iter().map(|c| c.mul(c)).collect();
    let quick = y.coords.iter().zip(&w2).all(|(yi, wi)| {
        let b = yi.ball(-64);
        b.mul(&b.conj(), 128).overlaps(&wi.ball(-64))
    });
    quick
        && y.coords
            .iter()
            .zip(&w2)
            .all(|(yi, wi)| yi.modulus_squared().is_equal(wi))
}

/// Critical points with the same coordinate-wise modulus as `w_star`,
/// `w_star` first. The result is checked to be closed under conjugation.
pub fn group_by_modulus(all_points: &[CriticalPoint], w_star: &CriticalPoint) -> Result<Vec<CriticalPoint>, AcsvError> {
    let mut out = vec![w_star.clone()];
    for p in all_points {
        if p.same_point(w_star) {
            continue;
        }
        if same_modulus(p, w_star) {
            out.push(p.clone());
        }
    }
    for p in out.iter_mut() {
        p.contributing = true;
    }
    for p in &out {
        let conj = CriticalPoint {
            coords: p.coords.iter().map(|c| c.conj()).collect(),
            ..p.clone()
        };
        if !out.iter().any(|q| q.same_point(&conj)) {
            return Err(AcsvError::Inconsistent(
                "contributing points are not closed under conjugation".into(),
            ));
        }
    }
    Ok(out)
}
