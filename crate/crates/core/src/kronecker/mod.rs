//! Kronecker representations of zero-dimensional systems.
//!
//! A representation consists of a separating integer linear form
//! `u = κ·z`, a square-free integer polynomial `P(u)` and integer
//! polynomials `Q_i(u)` such that the solutions are exactly
//! `z_i = Q_i(u) / (d_i P'(u))` as `u` runs over the roots of `P`. The
//! denominators `d_i` are 1 whenever the representation is integral, as in
//! the classical definition; they are kept so that no information is lost
//! when it is not.

use crate::expr::MultiPoly;
use crate::groebner::{groebner_basis, GroebnerBasis, GroebnerConfig, GroebnerError, MonomialOrder, QuotientAlgebra};
use crate::univariate::field::{FieldElem, NumberField};
use crate::univariate::{QPoly, UPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KroneckerError {
    #[error("the system has infinitely many solutions")]
    NotZeroDimensional,
    #[error("the linear form {kappa:?} does not separate the solutions")]
    NotSeparating { kappa: Vec<i64> },
    #[error("no separating linear form found after {attempts} attempts")]
    SeparationFailed { attempts: usize },
    #[error("linear form has {got} coefficients but the system has {expected} variables")]
    LinearFormLength { expected: usize, got: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Clone, Debug)]
pub struct KroneckerConfig {
    /// Use exactly this linear form; fail instead of retrying.
    pub linear_form: Option<Vec<i64>>,
    pub seed: u64,
    pub retries: usize,
    /// Random coefficients are drawn from `-coeff_range..=coeff_range`.
    pub coeff_range: i64,
    pub groebner: GroebnerConfig,
}

impl Default for KroneckerConfig {
    fn default() -> Self {
        KroneckerConfig {
            linear_form: None,
            seed: 0,
            retries: 10,
            coeff_range: 10,
            groebner: GroebnerConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerRep {
    vars: Vec<String>,
    kappa: Vec<i64>,
    p: UPoly,
    q: Vec<UPoly>,
    q_den: Vec<BigInt>,
}

impl KroneckerRep {
    /// Assembles a representation from its parts; `verify_kronecker` checks
    /// whether it actually describes a given system.
    pub fn from_parts(vars: Vec<String>, kappa: Vec<i64>, p: UPoly, q: Vec<UPoly>, q_den: Vec<BigInt>) -> Self {
        assert_eq!(vars.len(), kappa.len());
        assert_eq!(vars.len(), q.len());
        assert_eq!(vars.len(), q_den.len());
        KroneckerRep {
            vars,
            kappa,
            p,
            q,
            q_den,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn kappa(&self) -> &[i64] {
        &self.kappa
    }

    pub fn p(&self) -> &UPoly {
        &self.p
    }

    /// Numerator of variable `i`.
    pub fn q(&self, i: usize) -> &UPoly {
        &self.q[i]
    }

    pub fn q_den(&self, i: usize) -> &BigInt {
        &self.q_den[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring `Q[u]/P`, or `None` when there are no solutions.
    pub fn field(&self) -> Option<NumberField> {
        (self.p.degree() > 0).then(|| NumberField::new(&self.p))
    }

    /// All variables as elements of `Q[u]/P`, i.e. `Q_i / (d_i P')`.
    pub fn coordinates(&self, field: &NumberField) -> Vec<FieldElem> {
        let dp = field.from_upoly(&self.p.derivative());
        let inv = field.inv(&dp).expect("P square-free");
        (0..self.vars.len())
            .map(|i| {
                let qi = field.reduce(self.q[i].clone(), self.q_den[i].clone());
                field.mul(&qi, &inv)
            })
            .collect()
    }

    /// Number of solutions.
    pub fn solution_count(&self) -> usize {
        self.p.degree()
    }
}

pub fn solution_count(rep: &KroneckerRep) -> usize {
    rep.solution_count()
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<i64> {
    loop {
        let k: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        if k.iter().any(|&c| c != 0) {
            return k;
        }
    }
}

fn linear_poly(vars: &[String], kappa: &[i64]) -> MultiPoly {
    let mut u = MultiPoly::zero(vars);
    for (i, &k) in kappa.iter().enumerate() {
        if k != 0 {
            u = &u + &MultiPoly::var(vars, i).scale(&BigInt::from(k));
        }
    }
    u
}

fn square_free_q(m: &QPoly) -> QPoly {
    let g = m.gcd(&m.derivative());
    m.div_rem(&g).0.monic()
}

/// Adds the square-free part of each variable's minimal polynomial; the
/// result generates the radical of a zero-dimensional ideal.
fn radicalize(
    system: &[MultiPoly],
    basis: &GroebnerBasis,
    vars: &[String],
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    let alg = QuotientAlgebra::new(basis).expect("zero-dimensional");
    let mut extended = system.to_vec();
    for i in 0..vars.len() {
        let (m, _) = alg.minimal_polynomial_and_shape(&MultiPoly::var(vars, i), &[]);
        let sf = square_free_q(&m);
        if sf.degree() < m.degree() {
            let (int, _) = sf.to_integer();
            extended.push(MultiPoly::from_univariate(vars, i, &int));
        }
    }
    groebner_basis(&extended, vars, MonomialOrder::GrevLex, config)
}

/// Builds the representation from a Gröbner basis of a zero-dimensional
/// radical ideal, if `kappa` separates.
fn try_form(basis: &GroebnerBasis, vars: &[String], kappa: &[i64]) -> Option<KroneckerRep> {
    let alg = QuotientAlgebra::new(basis).expect("zero-dimensional");
    let u = linear_poly(vars, kappa);
    let targets: Vec<MultiPoly> = (0..vars.len()).map(|i| MultiPoly::var(vars, i)).collect();
    let (minpoly, shape) = alg.minimal_polynomial_and_shape(&u, &targets);
    let shape = shape?;
    Some(assemble(vars, kappa, &minpoly, &shape))
}

fn assemble(vars: &[String], kappa: &[i64], minpoly: &QPoly, shape: &[QPoly]) -> KroneckerRep {
    let sf = square_free_q(minpoly);
    let (mut p, _) = sf.to_integer();
    p = p.primitive();
    if p.lc().is_negative() {
        p = -p;
    }
    let pq = QPoly::from_upoly(&p);
    let dp = QPoly::from_upoly(&p.derivative());
    let mut q = Vec::new();
    let mut q_den = Vec::new();
    for r in shape {
        let qi = (&r.rem(&pq) * &dp).rem(&pq);
        let (num, den) = qi.to_integer();
        q.push(num);
        q_den.push(den);
    }
    KroneckerRep {
        vars: vars.to_vec(),
        kappa: kappa.to_vec(),
        p,
        q,
        q_den,
    }
}

/// Kronecker representation of the solutions of `system` in the variables
/// `vars`.
pub fn kronecker_rep(
    system: &[MultiPoly],
    vars: &[String],
    config: &KroneckerConfig,
) -> Result<KroneckerRep, KroneckerError> {
    let n = vars.len();
    if let Some(k) = &config.linear_form {
        if k.len() != n {
            return Err(KroneckerError::LinearFormLength {
                expected: n,
                got: k.len(),
            });
        }
    }
    let mut basis = groebner_basis(system, vars, MonomialOrder::GrevLex, &config.groebner)?;
    if basis.is_unit_ideal() {
        let kappa = config.linear_form.clone().unwrap_or_else(|| vec![1; n]);
        return Ok(KroneckerRep {
            vars: vars.to_vec(),
            kappa,
            p: UPoly::one(),
            q: vec![UPoly::zero(); n],
            q_den: vec![BigInt::one(); n],
        });
    }
    if !basis.is_zero_dimensional() {
        return Err(KroneckerError::NotZeroDimensional);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut radical = false;
    let attempts = if config.linear_form.is_some() {
        1
    } else {
        config.retries.max(1)
    };
    for _ in 0..attempts {
        let kappa = match &config.linear_form {
            Some(k) => k.clone(),
            None => random_form(&mut rng, n, config.coeff_range),
        };
        if let Some(rep) = try_form(&basis, vars, &kappa) {
            return Ok(rep);
        }
        if !radical {
            basis = radicalize(system, &basis, vars, &config.groebner)?;
            radical = true;
            if let Some(rep) = try_form(&basis, vars, &kappa) {
                return Ok(rep);
            }
        }
        if config.linear_form.is_some() {
            return Err(KroneckerError::NotSeparating { kappa });
        }
    }
    Err(KroneckerError::SeparationFailed { attempts })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// gcd(P, P') = 1.
    pub square_free: bool,
    /// Substitution identity for each system polynomial, in input order.
    pub identities: Vec<bool>,
    /// κ·z ≡ u modulo P.
    pub linear_form_recovers_u: bool,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.square_free && self.linear_form_recovers_u && self.identities.iter().all(|&b| b)
    }
}

/// Checks the defining identities of `rep` against `system`.
pub fn verify_kronecker(rep: &KroneckerRep, system: &[MultiPoly]) -> VerificationReport {
    let p = &rep.p;
    let square_free = !p.is_zero() && (p.degree() == 0 || p.gcd(&p.derivative()).degree() == 0);
    if !square_free {
        return VerificationReport {
            square_free,
            identities: vec![false; system.len()],
            linear_form_recovers_u: false,
        };
    }
    let Some(k) = rep.field() else {
        // no solutions: every identity holds vacuously only if the system is inconsistent
        return VerificationReport {
            square_free,
            identities: vec![true; system.len()],
            linear_form_recovers_u: true,
        };
    };
    let coords = rep.coordinates(&k);
    let identities = system
        .iter()
        .map(|f| k.eval_multi(&f.embed(&rep.vars), &coords).is_zero())
        .collect();
    let lhs = k.eval_multi(&linear_poly(&rep.vars, &rep.kappa), &coords);
    VerificationReport {
        square_free,
        identities,
        linear_form_recovers_u: k.sub(&lhs, &k.gen()).is_zero(),
    }
}

/// Exact test that two representations over the same variables describe
/// the same solution set.
pub fn same_solution_set(a: &KroneckerRep, b: &KroneckerRep) -> bool {
    if a.vars != b.vars || a.p.degree() != b.p.degree() {
        return false;
    }
    if a.p.degree() == 0 {
        return true;
    }
    // Every point of b must be a point of a: u_a(z_b) is a root of P_a and
    // a's coordinates at that root reproduce z_b. Equal counts of distinct
    // points then give equality.
    let kb = b.field().unwrap();
    let ka = a.field().unwrap();
    let zb = b.coordinates(&kb);
    let ua = kb.eval_multi(&linear_poly(&a.vars, &a.kappa), &zb);
    if !kb.compose(&QPoly::from_upoly(&a.p), &ua).is_zero() {
        return false;
    }
    a.coordinates(&ka)
        .iter()
        .zip(&zb)
        .all(|(za, zb)| kb.sub(&kb.compose(&za.to_qpoly(), &ua), zb).is_zero())
}

impl std::fmt::Display for KroneckerRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "u = {}", linear_poly(&self.vars, &self.kappa))?;
        writeln!(f, "P(u) = {}", self.p.to_string_in("u"))?;
        for (i, v) in self.vars.iter().enumerate() {
            if self.q_den[i].is_one() {
                writeln!(f, "Q_{v}(u) = {}", self.q[i].to_string_in("u"))?;
            } else {
                writeln!(f, "Q_{v}(u) = ({}) / {}", self.q[i].to_string_in("u"), self.q_den[i])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_polynomial, var_names};
    use num_rational::BigRational;

    fn sys(src: &[&str], vars: &[String]) -> Vec<MultiPoly> {
        src.iter().map(|s| parse_polynomial(s, vars).unwrap()).collect()
    }

    #[test]
    fn single_point() {
        let vars = var_names(&["x"]);
        let s = sys(&["x-1"], &vars);
        let cfg = KroneckerConfig {
            linear_form: Some(vec![1]),
            ..Default::default()
        };
        let rep = kronecker_rep(&s, &vars, &cfg).unwrap();
        assert_eq!(rep.p(), &UPoly::from_i64s(&[-1, 1]));
        assert_eq!(rep.q(0), &UPoly::from_i64s(&[1]));
        assert_eq!(rep.solution_count(), 1);
        assert!(verify_kronecker(&rep, &s).all_pass());
    }

    #[test]
    fn binomial_extended_system() {
        let vars = var_names(&["x", "y", "l", "t"]);
        let s = sys(&["1-x-y", "1-t*x-t*y", "0-x-l", "0-y-l"], &vars);
        let rep = kronecker_rep(&s, &vars, &KroneckerConfig::default()).unwrap();
        // the only solution is (1/2, 1/2, -1/2, 1)
        assert_eq!(rep.solution_count(), 1);
        assert!(verify_kronecker(&rep, &s).all_pass());
        let k = rep.field().unwrap();
        let z = rep.coordinates(&k);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(z[0].as_rational(), Some(half));
        assert_eq!(z[3].as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn non_radical_input_is_reduced() {
        let vars = var_names(&["x", "y"]);
        let s = sys(&["x^2", "y-x-1"], &vars);
        let rep = kronecker_rep(&s, &vars, &KroneckerConfig::default()).unwrap();
        assert_eq!(rep.solution_count(), 1);
        assert!(verify_kronecker(&rep, &s).all_pass());
        let s = sys(&["(x^2-1)^2", "(y^2-1)^3", "x*y-1"], &vars);
        let rep = kronecker_rep(&s, &vars, &KroneckerConfig::default()).unwrap();
        assert_eq!(rep.solution_count(), 2);
    }

    #[test]
    fn forced_non_separating_form_fails() {
        let vars = var_names(&["x", "y"]);
        let s = sys(&["x^2-1", "y^2-1"], &vars);
        let cfg = KroneckerConfig {
            linear_form: Some(vec![1, 1]),
            ..Default::default()
        };
        assert_eq!(
            kronecker_rep(&s, &vars, &cfg),
            Err(KroneckerError::NotSeparating { kappa: vec![1, 1] })
        );
        let rep = kronecker_rep(&s, &vars, &KroneckerConfig::default()).unwrap();
        assert_eq!(rep.solution_count(), 4);
    }

    #[test]
    fn positive_dimensional_rejected() {
        let vars = var_names(&["x", "y"]);
        let s = sys(&["x-y"], &vars);
        assert_eq!(
            kronecker_rep(&s, &vars, &KroneckerConfig::default()),
            Err(KroneckerError::NotZeroDimensional)
        );
    }

    #[test]
    fn broken_representations_fail_verification() {
        let vars = var_names(&["x", "y"]);
        let s = sys(&["x^2-2", "y-x-1"], &vars);
        let rep = kronecker_rep(&s, &vars, &KroneckerConfig::default()).unwrap();
        assert!(verify_kronecker(&rep, &s).all_pass());

        let extra = &rep.p * &UPoly::from_i64s(&[-99, 1]);
        let bad = KroneckerRep {
            p: extra,
            ..rep.clone()
        };
        let report = verify_kronecker(&bad, &s);
        assert!(report.square_free);
        assert!(!report.identities.iter().all(|&b| b));

        let mut q = rep.q.clone();
        q[0] = &q[0] + &UPoly::one();
        let bad = KroneckerRep { q, ..rep.clone() };
        assert!(!verify_kronecker(&bad, &s).identities.iter().all(|&b| b));
    }

    #[test]
    fn different_seeds_same_solutions() {
        let vars = var_names(&["x", "y"]);
        let s = sys(&["x^2+y^2-5", "x*y-2"], &vars);
        let a = kronecker_rep(
            &s,
            &vars,
            &KroneckerConfig {
                seed: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let b = kronecker_rep(
            &s,
            &vars,
            &KroneckerConfig {
                seed: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.solution_count(), 4);
        assert!(same_solution_set(&a, &b));
        let other = sys(&["x^2+y^2-5", "x*y+2"], &vars);
        let c = kronecker_rep(
            &other,
            &vars,
            &KroneckerConfig {
                seed: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!same_solution_set(&a, &c));
    }
}
