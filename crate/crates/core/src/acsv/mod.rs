//! Certified leading asymptotics of rational diagonals.
//!
//! The pipeline checks the hypotheses one at a time: `H(0) != 0`,
//! smoothness of `H = 0`, finiteness of the extended critical-point system
//! and existence of a unique positive real minimal critical point,
//! nondegeneracy of the phase Hessian and `G(w) != 0` at every contributing
//! point. Each failure is a distinct [`AcsvError`]. Combinatoriality cannot
//! be decided and must be asserted by the caller.

mod expansion;
mod hessian;
mod points;
mod systems;

pub use expansion::{asymptotic_expansion, AsymptoticExpansion, Contribution, Term};
pub use hessian::{phase_hessian, PhaseHessian};
pub use points::{find_minimal_critical_points, group_by_modulus, CriticalPoint};
pub use systems::{build_critical_system, build_extended_system, extended_vars};

use crate::expr::{gcd, MultiPoly, RationalFunctionInput};
use crate::groebner::{groebner_basis, GroebnerError, MonomialOrder};
use crate::kronecker::{kronecker_rep, verify_kronecker, KroneckerConfig, KroneckerError, KroneckerRep};
use std::fmt;
use thiserror::Error;

/// Direction vector of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction(Vec<u64>);

impl Direction {
    pub fn new(r: Vec<u64>) -> Result<Direction, AcsvError> {
        if r.is_empty() || r.contains(&0) {
            return Err(AcsvError::InvalidDirection(format!("{r:?}: entries must be positive")));
        }
        Ok(Direction(r))
    }

    pub fn ones(d: usize) -> Direction {
        Direction(vec![1; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug, Error)]
pub enum AcsvError {
    #[error("the input must be asserted combinatorial (all but finitely many coefficients nonnegative); this cannot be decided automatically")]
    NotAsserted,
    #[error("invalid direction {0}")]
    InvalidDirection(String),
    #[error("H(0) = 0: the origin lies on the singular variety")]
    OriginOnVariety,
    #[error("the singular variety is not smooth: H and its partial derivatives vanish simultaneously at {point}")]
    SingularContributor { point: String },
    #[error("H is not square-free; {note}. Asymptotics for higher-order poles are not supported")]
    HigherOrderPole { note: String },
    #[error("the extended critical-point system has infinitely many solutions")]
    NotZeroDimensional,
    #[error(
        "no minimal critical point among {critical_points} critical points ({positive} with positive coordinates)"
    )]
    NoMinimalPoint { critical_points: usize, positive: usize },
    #[error("{count} positive real minimal critical points, at most one is possible under the hypotheses")]
    MultipleMinimalPoints { count: usize },
    #[error("the phase Hessian is singular at {point}")]
    DegenerateHessian { point: String },
    #[error("G vanishes at the contributing point {point}, so the leading term vanishes; higher-order terms would be needed")]
    VanishingNumerator { point: String },
    #[error("the contributions of all points cancel, so the leading term vanishes")]
    VanishingLeadingTerm,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("kronecker representation failed: {0}")]
    Kronecker(KroneckerError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl AcsvError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            AcsvError::NotAsserted => 6,
            AcsvError::InvalidDirection(_) => 2,
            AcsvError::NoMinimalPoint { .. } | AcsvError::MultipleMinimalPoints { .. } => 4,
            AcsvError::ResourceLimit(_) | AcsvError::Kronecker(_) => 5,
            AcsvError::Inconsistent(_) => 1,
            _ => 3,
        }
    }

    /// Short category name.
    pub fn category(&self) -> &'static str {
        match self {
            AcsvError::NotAsserted => "combinatorial-assertion",
            AcsvError::InvalidDirection(_) => "input",
            AcsvError::OriginOnVariety => "origin-on-variety",
            AcsvError::SingularContributor { .. } | AcsvError::HigherOrderPole { .. } => "non-smooth",
            AcsvError::NotZeroDimensional
            | AcsvError::NoMinimalPoint { .. }
            | AcsvError::MultipleMinimalPoints { .. } => "critical-points",
            AcsvError::DegenerateHessian { .. } => "degenerate-hessian",
            AcsvError::VanishingNumerator { .. } | AcsvError::VanishingLeadingTerm => "vanishing-numerator",
            AcsvError::ResourceLimit(_) | AcsvError::Kronecker(_) => "resource-limit",
            AcsvError::Inconsistent(_) => "internal",
        }
    }
}

impl From<GroebnerError> for AcsvError {
    fn from(e: GroebnerError) -> Self {
        AcsvError::ResourceLimit(e.to_string())
    }
}

impl From<KroneckerError> for AcsvError {
    fn from(e: KroneckerError) -> Self {
        match e {
            KroneckerError::NotZeroDimensional => AcsvError::NotZeroDimensional,
            KroneckerError::Groebner(g) => g.into(),
            other => AcsvError::Kronecker(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Passed a weaker, local version of the check.
    WeakPass,
    /// Taken on trust from the caller.
    Asserted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::WeakPass => "weak-pass",
            Verdict::Asserted => "asserted",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AssumptionCheck {
    pub name: &'static str,
    pub verdict: Verdict,
    pub note: String,
}

#[derive(Clone, Debug, Default)]
pub struct CertificationReport {
    pub assumptions: Vec<AssumptionCheck>,
    pub seed: u64,
    pub linear_form: Vec<i64>,
    /// Input rewrites applied before the analysis.
    pub notes: Vec<String>,
}

impl CertificationReport {
    fn push(&mut self, name: &'static str, verdict: Verdict, note: impl Into<String>) {
        self.assumptions.push(AssumptionCheck {
            name,
            verdict,
            note: note.into(),
        });
    }
}

#[derive(Clone, Debug, Default)]
pub struct AcsvConfig {
    pub kronecker: KroneckerConfig,
}

/// Everything the pipeline computed.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub direction: Direction,
    /// The input after removing common factors of `G` and `H`.
    pub function: RationalFunctionInput,
    pub extended_system: Vec<MultiPoly>,
    pub kronecker: KroneckerRep,
    pub critical_points: Vec<CriticalPoint>,
    pub minimal_point: CriticalPoint,
    /// The minimal point first.
    pub contributors: Vec<CriticalPoint>,
    pub expansion: AsymptoticExpansion,
    pub report: CertificationReport,
}

/// `G/H` with common factors removed.
fn reduce(f: &RationalFunctionInput) -> (RationalFunctionInput, Option<String>) {
    let g = gcd(&f.numerator, &f.denominator);
    if g.total_degree() == 0 {
        return (f.clone(), None);
    }
    let num = f.numerator.exact_div(&g).expect("gcd divides");
    let den = f.denominator.exact_div(&g).expect("gcd divides");
    let note = format!("cancelled the common factor {g} of numerator and denominator");
    let reduced = RationalFunctionInput {
        numerator: num,
        denominator: den,
        combinatorial_asserted: f.combinatorial_asserted,
    };
    (reduced, Some(note))
}

/// True when `H` and all its partial derivatives have no common zero.
fn smooth(h: &MultiPoly, config: &AcsvConfig) -> Result<bool, AcsvError> {
    let mut gens = vec![h.clone()];
    gens.extend((0..h.nvars()).map(|k| h.partial_derivative(k)));
    let basis = groebner_basis(&gens, h.vars(), MonomialOrder::GrevLex, &config.kronecker.groebner)?;
    Ok(basis.is_unit_ideal())
}

struct Located {
    rep: KroneckerRep,
    system: Vec<MultiPoly>,
    points: Vec<CriticalPoint>,
    minimal: usize,
}

fn locate_minimal(h: &MultiPoly, r: &Direction, config: &AcsvConfig) -> Result<Located, AcsvError> {
    let system = build_extended_system(h, r);
    let vars = system[0].vars().to_vec();
    let rep = kronecker_rep(&system, &vars, &config.kronecker)?;
    let check = verify_kronecker(&rep, &system);
    if !check.all_pass() {
        return Err(AcsvError::Inconsistent(format!(
            "Kronecker representation failed verification: {check:?}"
        )));
    }
    let fields = points::solution_fields(&rep, &system)?;
    let mut points = points::critical_points(&fields);
    let minimal = points::mark_minimal(&mut points, &fields)?;
    Ok(Located {
        rep,
        system,
        points,
        minimal,
    })
}

/// Runs the full pipeline on `f` in direction `r`.
pub fn diagonal_asymptotics(
    f: &RationalFunctionInput,
    r: &Direction,
    config: &AcsvConfig,
) -> Result<Analysis, AcsvError> {
    if !f.combinatorial_asserted {
        return Err(AcsvError::NotAsserted);
    }
    let d = f.vars().len();
    if r.dim() != d {
        return Err(AcsvError::InvalidDirection(format!(
            "{:?} has {} entries but there are {d} variables",
            r.as_slice(),
            r.dim()
        )));
    }
    let mut report = CertificationReport {
        seed: config.kronecker.seed,
        ..Default::default()
    };
    let (f, note) = reduce(f);
    report.notes.extend(note);
    let h = &f.denominator;

    let h0 = h.constant_term();
    if h0 == 0.into() {
        return Err(AcsvError::OriginOnVariety);
    }
    report.push("H(0) != 0", Verdict::Pass, format!("H(0) = {h0}"));

    let smooth_verdict = if smooth(h, config)? {
        report.push(
            "smooth singular variety",
            Verdict::Pass,
            "H and its partial derivatives generate the unit ideal",
        );
        Verdict::Pass
    } else {
        let sqf = h.square_free_part();
        if sqf.total_degree() < h.total_degree() {
            let located = locate_minimal(&sqf, r, config).map(|l| l.points[l.minimal].clone());
            let note = match located {
                Ok(w) => format!(
                    "its square-free part {sqf} has the minimal critical point {}",
                    hessian::point_string(&w)
                ),
                Err(e) => format!("its square-free part {sqf} could not be analysed either: {e}"),
            };
            return Err(AcsvError::HigherOrderPole { note });
        }
        Verdict::WeakPass
    };

    let Located {
        rep,
        system,
        mut points,
        minimal,
    } = locate_minimal(h, r, config)?;
    report.linear_form = rep.kappa().to_vec();
    let minimal_point = points[minimal].clone();
    report.push(
        "finite critical set with a minimal point",
        Verdict::Pass,
        format!(
            "{} solutions of the extended system, {} critical points, unique minimal point {}",
            rep.solution_count(),
            points.len(),
            hessian::point_string(&minimal_point)
        ),
    );

    let contributors = group_by_modulus(&points, &minimal_point)?;
    for p in points.iter_mut() {
        p.contributing = contributors.iter().any(|c| c.same_point(p));
    }
    if smooth_verdict == Verdict::WeakPass {
        for c in &contributors {
            let grad_zero = (0..d).all(|k| hessian::eval_at(&h.partial_derivative(k), c).is_zero());
            if grad_zero {
                return Err(AcsvError::SingularContributor {
                    point: hessian::point_string(c),
                });
            }
        }
        report.push(
            "smooth singular variety",
            Verdict::WeakPass,
            "H has singular points, but none of the contributing points is singular",
        );
    }

    let expansion = asymptotic_expansion(&f, r, &contributors)?;
    report.push(
        "nonsingular phase Hessian",
        Verdict::Pass,
        format!("det != 0 at all {} contributing points", contributors.len()),
    );
    report.push(
        "nonvanishing numerator",
        Verdict::Pass,
        "G(w) != 0 at every contributing point".to_string(),
    );
    report.push(
        "combinatorial",
        Verdict::Asserted,
        "asserted by the caller; not decidable in general",
    );
    report.push(
        "finitely many same-modulus points",
        Verdict::Asserted,
        format!(
            "{} critical points share the modulus of the minimal point; other points of H = 0 are not enumerated",
            contributors.len()
        ),
    );
    report.assumptions.sort_by_key(|a| assumption_rank(a.name));

    Ok(Analysis {
        direction: r.clone(),
        function: f.clone(),
        extended_system: system,
        kronecker: rep,
        critical_points: points,
        minimal_point,
        contributors,
        expansion,
        report,
    })
}

fn assumption_rank(name: &str) -> usize {
    [
        "H(0) != 0",
        "smooth singular variety",
        "finite critical set with a minimal point",
        "nonsingular phase Hessian",
        "nonvanishing numerator",
        "combinatorial",
        "finitely many same-modulus points",
    ]
    .iter()
    .position(|&n| n == name)
    .unwrap_or(usize::MAX)
}

/// Runs the pipeline and returns only its certification report.
pub fn check_assumptions(
    f: &RationalFunctionInput,
    r: &Direction,
    config: &AcsvConfig,
) -> Result<CertificationReport, AcsvError> {
    diagonal_asymptotics(f, r, config).map(|a| a.report)
}

#[cfg(test)]
mod tests;
