//! Text, exact and JSON renderings of a run.

use crate::RunResult;
use acsv::acsv::CriticalPoint;
use acsv::algnum::{AlgebraicNumber, Region};
use acsv::oracle::ValidationReport;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumberJson {
    pub minpoly: String,
    pub approx: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag_approx: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub rho: NumberJson,
    pub alpha: String,
    pub pi_power: String,
    #[serde(rename = "C")]
    pub c: NumberJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: Vec<NumberJson>,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionJson {
    pub name: String,
    pub verdict: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationJson {
    pub assumptions: Vec<AssumptionJson>,
    pub seed: u64,
    pub linear_form: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub n: u64,
    pub coefficient: String,
    pub estimate: f64,
    pub rel_error: Option<[f64; 2]>,
    pub vanishing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationJson {
    pub samples: Vec<SampleJson>,
    pub flags: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputJson {
    pub direction: Vec<u64>,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointJson>>,
    pub certification: CertificationJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationJson>,
}

fn number(a: &AlgebraicNumber, digits: usize) -> NumberJson {
    let (approx, imag_approx) = a.approx_strings(digits);
    NumberJson {
        minpoly: a.defining_poly().to_string().replace(' ', ""),
        approx,
        imag_approx,
    }
}

fn validation_json(v: &ValidationReport) -> ValidationJson {
    ValidationJson {
        samples: v
            .samples
            .iter()
            .map(|s| SampleJson {
                n: s.n,
                coefficient: s.coefficient.to_string(),
                estimate: s.estimate,
                rel_error: s.rel_error.map(|(lo, hi)| [lo, hi]),
                vanishing: s.vanishing,
            })
            .collect(),
        flags: v.flags.clone(),
        warnings: v.warnings.clone(),
    }
}

fn points_json(points: &[CriticalPoint], digits: usize) -> Vec<PointJson> {
    points
        .iter()
        .map(|p| PointJson {
            coords: p.coords.iter().map(|c| number(c, digits)).collect(),
            minimal: p.minimal,
        })
        .collect()
}

pub fn to_json(result: &RunResult, digits: usize, return_points: bool) -> OutputJson {
    let a = &result.analysis;
    OutputJson {
        direction: result.direction.as_slice().to_vec(),
        terms: a
            .expansion
            .terms
            .iter()
            .map(|t| TermJson {
                rho: number(&t.rho, digits),
                alpha: t.alpha.to_string(),
                pi_power: t.alpha.to_string(),
                c: number(&t.c, digits),
            })
            .collect(),
        points: return_points.then(|| points_json(&a.contributors, digits)),
        certification: CertificationJson {
            assumptions: a
                .report
                .assumptions
                .iter()
                .map(|c| AssumptionJson {
                    name: c.name.to_string(),
                    verdict: c.verdict.to_string(),
                    note: c.note.clone(),
                })
                .collect(),
            seed: a.report.seed,
            linear_form: a.report.linear_form.clone(),
            notes: a.report.notes.clone(),
        },
        validation: result.validation.as_ref().map(validation_json),
    }
}

/// Pretty JSON with a trailing newline.
pub fn json_text(out: &OutputJson) -> String {
    let mut s = serde_json::to_string_pretty(out).expect("serializable");
    s.push('\n');
    s
}

/// `4.0` becomes `4`.
fn trim_integral(s: &str) -> &str {
    s.strip_suffix(".0").unwrap_or(s)
}

/// Decimal form, parenthesised unless it is a nonnegative real.
fn factor(a: &AlgebraicNumber, digits: usize) -> String {
    let (re, im) = a.approx_strings(digits);
    let re = trim_integral(&re);
    match im {
        None if re.starts_with('-') => format!("({re})"),
        None => re.to_string(),
        Some(im) => {
            let im = trim_integral(&im);
            match im.strip_prefix('-') {
                Some(abs) => format!("({re}-{abs}*I)"),
                None => format!("({re}+{im}*I)"),
            }
        }
    }
}

fn exponent(q: &BigRational) -> String {
    if q.is_integer() && q >= &BigRational::from_integer(0.into()) {
        q.to_string()
    } else {
        format!("({q})")
    }
}

/// `C*ρ^n*(pi*n)^α + ... + O(|ρ|^n*n^(α-1))` on one line.
pub fn expansion_line(result: &RunResult, digits: usize) -> String {
    let e = &result.analysis.expansion;
    let alpha = e.alpha();
    let pi_part = if alpha == BigRational::from_integer(0.into()) {
        String::new()
    } else {
        format!("*(pi*n)^{}", exponent(&alpha))
    };
    let mut parts: Vec<String> = e
        .terms
        .iter()
        .map(|t| format!("{}*{}^n{pi_part}", factor(&t.c, digits), factor(&t.rho, digits)))
        .collect();
    let minimal = e
        .contributions
        .iter()
        .find(|c| c.point.minimal)
        .expect("minimal point contributes");
    let modulus = factor(&minimal.term.rho, digits);
    let err = &alpha + e.error_order();
    parts.push(format!("O({modulus}^n*n^{})", exponent(&err)));
    parts.join(" + ")
}

fn region(a: &AlgebraicNumber) -> String {
    match a.region() {
        Region::Rational(q) => format!("exactly {q}"),
        Region::Interval { lo, hi } => format!("({lo}, {hi})"),
        Region::Box { re, im } => format!("[{}, {}] + [{}, {}]*I", re.0, re.1, im.0, im.1),
    }
}

fn exact_number(out: &mut String, label: &str, a: &AlgebraicNumber, digits: usize) {
    let n = number(a, digits);
    let approx = match &n.imag_approx {
        None => n.approx.clone(),
        Some(im) => format!("{} + {}*I", n.approx, im),
    };
    writeln!(
        out,
        "  {label}: minpoly {}; region {}; approx {approx}",
        n.minpoly,
        region(a)
    )
    .unwrap();
}

fn points_text(out: &mut String, result: &RunResult, digits: usize) {
    let vars = result.analysis.function.vars();
    for (i, p) in result.analysis.contributors.iter().enumerate() {
        let tag = if p.minimal { " (minimal)" } else { "" };
        writeln!(out, "point {}{tag}", i + 1).unwrap();
        for (v, c) in vars.iter().zip(&p.coords) {
            exact_number(out, v, c, digits);
        }
    }
}

fn validation_text(out: &mut String, v: &ValidationReport) {
    for s in &v.samples {
        match s.rel_error {
            Some((lo, hi)) => writeln!(
                out,
                "n = {}: e_n in [{lo:.6e}, {hi:.6e}], n*e_n <= {:.6}",
                s.n,
                hi * s.n as f64
            )
            .unwrap(),
            None => writeln!(out, "n = {}: coefficient and estimate both vanish", s.n).unwrap(),
        }
    }
}

pub fn symbolic(result: &RunResult, digits: usize, return_points: bool) -> String {
    let mut out = expansion_line(result, digits);
    out.push('\n');
    if return_points {
        points_text(&mut out, result, digits);
    }
    if let Some(v) = &result.validation {
        validation_text(&mut out, v);
    }
    out
}

pub fn exact(result: &RunResult, digits: usize, return_points: bool) -> String {
    let a = &result.analysis;
    let mut out = String::new();
    writeln!(out, "direction: {:?}", result.direction.as_slice()).unwrap();
    for (i, t) in a.expansion.terms.iter().enumerate() {
        writeln!(out, "term {}", i + 1).unwrap();
        exact_number(&mut out, "rho", &t.rho, digits);
        writeln!(out, "  alpha: {}", t.alpha).unwrap();
        exact_number(&mut out, "C", &t.c, digits);
    }
    if return_points {
        points_text(&mut out, result, digits);
    }
    writeln!(
        out,
        "certification (seed {}, linear form {:?})",
        a.report.seed, a.report.linear_form
    )
    .unwrap();
    for c in &a.report.assumptions {
        writeln!(out, "  {}: {} ({})", c.name, c.verdict, c.note).unwrap();
    }
    for n in &a.report.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
    if let Some(v) = &result.validation {
        validation_text(&mut out, v);
    }
    out
}
