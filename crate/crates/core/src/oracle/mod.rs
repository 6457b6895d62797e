//! Brute-force power-series coefficients of `G/H` from the convolution
//! recurrence `sum_j H_j f_(i-j) = G_i`, used to check asymptotic
//! expansions against exact values.
//!
//! With `c = H(0)`, the table stores the integers `a_i = c^(|i|+1) f_i`,
//! which satisfy `a_i = c^|i| G_i - sum_(j != 0) H_j c^(|j|-1) a_(i-j)`.
//! No rational arithmetic is needed, and for `c = ±1` the stored values
//! are the coefficients themselves up to sign.

mod validate;

pub use validate::{empirical_validation, estimate, pi_ball, Sample, ValidationConfig, ValidationReport};

use crate::expr::{MultiPoly, RationalFunctionInput};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Default bound on the number of table entries.
pub const DEFAULT_MEMORY_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("H(0) = 0: the function has no power series expansion at the origin")]
    NoSeries,
    #[error("the table would need {needed} entries, above the cap of {cap}")]
    MemoryCap { needed: u128, cap: usize },
    #[error("coefficient {n} is zero but the expansion evaluates to a nonzero value")]
    UnexplainedZero { n: u64 },
    #[error("the expansion could not be separated from zero at n = {n} although the coefficient is nonzero")]
    VanishingEstimate { n: u64 },
}

/// Dense table of `f_i` for all `i <= bounds` componentwise.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    bounds: Vec<u32>,
    strides: Vec<usize>,
    scaled: Vec<BigInt>,
    h0: BigInt,
}

fn strides_of(bounds: &[u32]) -> Vec<usize> {
    let mut s = vec![1usize; bounds.len()];
    for k in (0..bounds.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * (bounds[k + 1] as usize + 1);
    }
    s
}

fn unflatten(mut flat: usize, bounds: &[u32], strides: &[usize]) -> Vec<u32> {
    let mut idx = vec![0u32; bounds.len()];
    for k in 0..bounds.len() {
        idx[k] = (flat / strides[k]) as u32;
        flat %= strides[k];
    }
    idx
}

/// Number of entries in the box `0..=bounds`, saturating.
pub fn table_size(bounds: &[u32]) -> u128 {
    bounds.iter().fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1))
}

/// Sparse terms `(exponents, flat offset, coefficient)` of `p`.
fn offsets(p: &MultiPoly, strides: &[usize]) -> Vec<(Vec<u32>, usize, BigInt)> {
    p.terms()
        .map(|(m, c)| {
            let e = m.exps().to_vec();
            let off = e.iter().zip(strides).map(|(&x, &s)| x as usize * s).sum();
            (e, off, c.clone())
        })
        .collect()
}

/// Coefficients `f_i` of `G/H` for every `i <= bounds`, filled in graded
/// order.
pub fn series_coefficients(
    f: &RationalFunctionInput,
    bounds: &[u32],
    cap: usize,
) -> Result<CoefficientTable, OracleError> {
    let h = &f.denominator;
    let g = &f.numerator;
    assert_eq!(bounds.len(), h.nvars(), "bounds length");
    let c = h.constant_term();
    if c.is_zero() {
        return Err(OracleError::NoSeries);
    }
    let needed = table_size(bounds);
    if needed > cap as u128 {
        return Err(OracleError::MemoryCap { needed, cap });
    }
    let n = needed as usize;
    let strides = strides_of(bounds);

    // graded order: bucket flat indices by total degree
    let max_deg: usize = bounds.iter().map(|&b| b as usize).sum();
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for flat in 0..n {
        let deg: u32 = unflatten(flat, bounds, &strides).iter().sum();
        by_degree[deg as usize].push(flat);
    }

    let h_terms: Vec<_> = offsets(h, &strides)
        .into_iter()
        .filter(|(e, _, _)| e.iter().any(|&x| x > 0))
        .map(|(e, off, coeff)| {
            let deg: u32 = e.iter().sum();
            let w = coeff * num_traits::pow(c.clone(), deg as usize - 1);
            (e, off, w)
        })
        .collect();
    let mut g_at = vec![BigInt::zero(); n];
    for (e, off, coeff) in offsets(g, &strides) {
        if e.iter().zip(bounds).all(|(x, b)| x <= b) {
            g_at[off] = coeff;
        }
    }
    let mut c_pow = vec![BigInt::one()];
    for k in 1..=max_deg {
        let next = &c_pow[k - 1] * &c;
        c_pow.push(next);
    }

    let mut scaled = vec![BigInt::zero(); n];
    for (deg, flats) in by_degree.iter().enumerate() {
        for &flat in flats {
            let idx = unflatten(flat, bounds, &strides);
            let mut acc = if !g_at[flat].is_zero() {
                &g_at[flat] * &c_pow[deg]
            } else {
                BigInt::zero()
            };
            for (e, off, w) in &h_terms {
                if e.iter().zip(&idx).all(|(a, b)| a <= b) {
                    acc -= w * &scaled[flat - off];
                }
            }
            scaled[flat] = acc;
        }
    }
    Ok(CoefficientTable {
        bounds: bounds.to_vec(),
        strides,
        scaled,
        h0: c,
    })
}

impl CoefficientTable {
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scaled.is_empty()
    }

    fn flat(&self, idx: &[u32]) -> usize {
        assert_eq!(idx.len(), self.bounds.len());
        assert!(
            idx.iter().zip(&self.bounds).all(|(i, b)| i <= b),
            "index outside the table"
        );
        idx.iter().zip(&self.strides).map(|(&i, &s)| i as usize * s).sum()
    }

    /// `f_idx`.
    pub fn get(&self, idx: &[u32]) -> BigRational {
        let deg: u32 = idx.iter().sum();
        let den = num_traits::pow(self.h0.clone(), deg as usize + 1);
        BigRational::new(self.scaled[self.flat(idx)].clone(), den)
    }

    /// `f_(n r)`.
    pub fn diagonal(&self, r: &[u64], n: u64) -> BigRational {
        let idx: Vec<u32> = r
            .iter()
            .map(|&x| u32::try_from(x * n).expect("index overflow"))
            .collect();
        self.get(&idx)
    }

    /// Re-checks `sum_j H_j f_(i-j) = G_i` at every index with rational
    /// arithmetic, independently of the recurrence that filled the table.
    pub fn convolution_holds(&self, f: &RationalFunctionInput) -> bool {
        let h: Vec<(Vec<u32>, BigInt)> = f
            .denominator
            .terms()
            .map(|(m, c)| (m.exps().to_vec(), c.clone()))
            .collect();
        for flat in 0..self.len() {
            let idx = unflatten(flat, &self.bounds, &self.strides);
            let mut sum = BigRational::zero();
            for (e, c) in &h {
                if e.iter().zip(&idx).all(|(a, b)| a <= b) {
                    let shifted: Vec<u32> = idx.iter().zip(e).map(|(a, b)| a - b).collect();
                    sum += BigRational::from_integer(c.clone()) * self.get(&shifted);
                }
            }
            let g = f.numerator.coeff(&idx);
            if sum != BigRational::from_integer(g) {
                return false;
            }
        }
        true
    }

    /// Indices with negative coefficients and total degree above `min_degree`.
    pub fn negative_beyond(&self, min_degree: u64) -> Vec<Vec<u32>> {
        let sign = if self.h0.is_negative() { -1 } else { 1 };
        let mut out = Vec::new();
        for (flat, a) in self.scaled.iter().enumerate() {
            let idx = unflatten(flat, &self.bounds, &self.strides);
            let deg: u64 = idx.iter().map(|&x| x as u64).sum();
            // sign of f = sign(a) * sign(c)^(deg+1)
            let s = if sign < 0 && deg.is_multiple_of(2) {
                -a.signum()
            } else {
                a.signum()
            };
            if deg > min_degree && s.is_negative() {
                out.push(idx);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests;
