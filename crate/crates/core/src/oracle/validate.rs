//! Comparison of exact diagonal coefficients with a certified evaluation of
//! the asymptotic expansion.

use super::{series_coefficients, OracleError, DEFAULT_MEMORY_CAP};
use crate::acsv::{AsymptoticExpansion, Direction};
use crate::algnum::{Ball, Float, Round};
use crate::expr::RationalFunctionInput;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct ValidationConfig {
    pub memory_cap: usize,
    /// Largest tolerated ratio between consecutive values of `n * e_n`.
    pub growth_factor: f64,
    /// Required relative accuracy of each estimate.
    pub rel_width: f64,
    /// Working precision ceiling, in bits.
    pub max_prec: u64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            memory_cap: DEFAULT_MEMORY_CAP,
            growth_factor: 2.0,
            rel_width: 1e-6,
            max_prec: 1 << 14,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub n: u64,
    pub coefficient: BigRational,
    /// Real part of the estimate, to double precision.
    pub estimate: f64,
    /// Bounds on `|f_(nr) / estimate(n) - 1|`; `None` for vanishing samples.
    pub rel_error: Option<(f64, f64)>,
    /// The coefficient is zero and so is the estimate, to within its width.
    pub vanishing: bool,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub samples: Vec<Sample>,
    /// Non-monotone growth of `n * e_n` beyond the configured factor.
    pub flags: Vec<String>,
    /// Negative coefficients far from the origin, which contradict the
    /// combinatorial assertion.
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn sample(&self, n: u64) -> Option<&Sample> {
        self.samples.iter().find(|s| s.n == n)
    }

    /// Whether `e_(2n) < e_n` is certified; `None` when either sample is
    /// missing or vanishing.
    pub fn decays_at(&self, n: u64) -> Option<bool> {
        let (_, hi2) = self.sample(2 * n)?.rel_error?;
        let (lo1, _) = self.sample(n)?.rel_error?;
        Some(hi2 < lo1)
    }

    /// Largest upper bound of `n * e_n` over the non-vanishing samples.
    pub fn max_scaled_error(&self) -> f64 {
        self.samples
            .iter()
            .filter_map(|s| s.rel_error.map(|(_, hi)| s.n as f64 * hi))
            .fold(0.0, f64::max)
    }
}

/// `atan(1/x) * 2^p` truncated, with an error bound in units of `2^-p`.
fn atan_inv_fixed(x: u64, p: u64) -> (BigInt, BigInt) {
    let one = BigInt::one() << p as usize;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &x2;
        k += 1;
    }
    // one unit per truncated division plus the omitted tail
    (sum, BigInt::from(2 * k + 2))
}

/// Rational bounds `lo < π < hi` with `hi - lo` about `2^-prec`.
pub fn pi_ball(prec: u64) -> (BigRational, BigRational) {
    let p = prec + 16;
    let (a, ea) = atan_inv_fixed(5, p);
    let (b, eb) = atan_inv_fixed(239, p);
    let s = BigInt::from(16) * a - BigInt::from(4) * b;
    let e = BigInt::from(16) * ea + BigInt::from(4) * eb;
    let den = BigInt::one() << p as usize;
    (BigRational::new(&s - &e, den.clone()), BigRational::new(s + e, den))
}

/// Rational interval around `(π n)^α` for `α` a multiple of `1/2`.
fn pi_n_power(alpha: &BigRational, n: u64, prec: u64) -> (BigRational, BigRational) {
    let twice = alpha * BigRational::from_integer(2.into());
    assert!(twice.is_integer(), "alpha must be a multiple of 1/2");
    let m = twice.to_integer();
    let k = m.abs().to_u64().expect("small exponent");
    let (plo, phi) = pi_ball(prec + 2 * k + 16);
    let nq = BigRational::from_integer(n.into());
    let (lo, hi) = (plo * &nq, phi * &nq);
    // (π n)^(k/2)
    let half = k / 2;
    let (mut lo_p, mut hi_p) = (
        num_traits::pow(lo.clone(), half as usize),
        num_traits::pow(hi.clone(), half as usize),
    );
    if k % 2 == 1 {
        let w = prec + 32;
        let sl = Float::from_rational(&lo, w, Round::Down)
            .sqrt(w, Round::Down)
            .to_rational();
        let sh = Float::from_rational(&hi, w, Round::Up).sqrt(w, Round::Up).to_rational();
        lo_p *= sl;
        hi_p *= sh;
    }
    if m.is_negative() {
        (hi_p.recip(), lo_p.recip())
    } else {
        (lo_p, hi_p)
    }
}

/// Ball around `sum_k C_k ρ_k^n (π n)^α`, together with an upper bound on
/// `sum_k |C_k ρ_k^n| (π n)^α`.
pub fn estimate(expansion: &AsymptoticExpansion, n: u64, prec: u64) -> (Ball, Float) {
    let nbits = 64 - n.leading_zeros() as i64;
    let t = -(prec as i64) - 2 * nbits - 16;
    let w = prec + 64;
    let mut sum = Ball::real(Float::zero());
    let mut scale = Float::zero();
    for term in &expansion.terms {
        let c = term.c.ball(t);
        let rho = term.rho.ball(t - 8);
        let mut pw = Ball::real(Float::from_int(1));
        let mut base = rho;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                pw = pw.mul(&base, w);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(w);
            }
        }
        let v = c.mul(&pw, w);
        scale = scale.add(&v.abs_upper(), 64, Round::Up);
        sum = sum.add(&v, w);
    }
    let (flo, fhi) = pi_n_power(&expansion.alpha(), n, prec + 16);
    let factor = Ball::from_interval(&flo, &fhi, w);
    let fhi_f = Float::from_rational(&fhi, 64, Round::Up);
    (sum.mul(&factor, w), scale.mul(&fhi_f, 64, Round::Up))
}

fn shade(x: f64, up: bool) -> f64 {
    let eps = 4.0 * f64::EPSILON * x.abs() + f64::MIN_POSITIVE;
    if up {
        x + eps
    } else {
        (x - eps).max(0.0)
    }
}

fn sample_at(
    expansion: &AsymptoticExpansion,
    n: u64,
    f: &BigRational,
    config: &ValidationConfig,
) -> Result<Sample, OracleError> {
    let tol = Float::from_rational(
        &BigRational::from_float(config.rel_width).expect("finite tolerance"),
        64,
        Round::Down,
    );
    let mut prec = 128u64;
    loop {
        let (e, scale) = estimate(expansion, n, prec);
        let width_ok = |reference: &Float| e.rad <= tol.mul(reference, 64, Round::Down);
        if f.is_zero() {
            if e.abs_upper() <= tol.mul(&scale, 64, Round::Down) {
                return Ok(Sample {
                    n,
                    coefficient: f.clone(),
                    estimate: e.re.to_f64(),
                    rel_error: None,
                    vanishing: true,
                });
            }
            if !e.contains_zero() && width_ok(&e.abs_lower()) {
                return Err(OracleError::UnexplainedZero { n });
            }
        } else if !e.contains_zero() && width_ok(&e.abs_lower()) {
            let fb = Ball::from_rational(f, prec + 64);
            let ratio = fb.div(&e, prec + 64).expect("estimate excludes zero");
            let diff = ratio.sub(&Ball::real(Float::from_int(1)), prec + 64);
            return Ok(Sample {
                n,
                coefficient: f.clone(),
                estimate: e.re.to_f64(),
                rel_error: Some((
                    shade(diff.abs_lower().to_f64(), false),
                    shade(diff.abs_upper().to_f64(), true),
                )),
                vanishing: false,
            });
        }
        prec *= 2;
        if prec > config.max_prec {
            return Err(if f.is_zero() {
                OracleError::UnexplainedZero { n }
            } else {
                OracleError::VanishingEstimate { n }
            });
        }
    }
}

/// Relative errors `e_n = |f_(nr) / estimate(n) - 1|` at each sampled `n`.
pub fn empirical_validation(
    f: &RationalFunctionInput,
    r: &Direction,
    expansion: &AsymptoticExpansion,
    n_values: &[u64],
    config: &ValidationConfig,
) -> Result<ValidationReport, OracleError> {
    let mut ns = n_values.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let n_max = ns.last().copied().unwrap_or(0);
    let bounds: Vec<u32> = r
        .as_slice()
        .iter()
        .map(|&x| u32::try_from(x.saturating_mul(n_max)).unwrap_or(u32::MAX))
        .collect();
    let table = series_coefficients(f, &bounds, config.memory_cap)?;

    let mut warnings = Vec::new();
    let deg_h = f.denominator.total_degree();
    let negative = table.negative_beyond(2 * deg_h);
    if let Some(first) = negative.first() {
        warnings.push(format!(
            "{} negative coefficients beyond total degree {}, first at {:?}: the combinatorial assertion looks false",
            negative.len(),
            2 * deg_h,
            first
        ));
    }

    let mut samples = Vec::new();
    for &n in &ns {
        let fc = table.diagonal(r.as_slice(), n);
        samples.push(sample_at(expansion, n, &fc, config)?);
    }

    let mut flags = Vec::new();
    let scaled: Vec<(u64, f64)> = samples
        .iter()
        .filter_map(|s| s.rel_error.map(|(lo, hi)| (s.n, s.n as f64 * (lo + hi) / 2.0)))
        .collect();
    for pair in scaled.windows(2) {
        let ((n1, a), (n2, b)) = (pair[0], pair[1]);
        if b > config.growth_factor * a {
            flags.push(format!("n*e_n grows from {a:.3e} at n = {n1} to {b:.3e} at n = {n2}"));
        }
    }
    Ok(ValidationReport {
        samples,
        flags,
        warnings,
    })
}
