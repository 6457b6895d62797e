//! Front end for `acsv`: argument handling, the pipeline run and the three
//! output formats.

pub mod render;

use acsv::acsv::{diagonal_asymptotics, AcsvConfig, Analysis, Direction};
use acsv::expr::{parse_rational_function, RationalFunctionInput};
use acsv::kronecker::KroneckerConfig;
use acsv::oracle::{empirical_validation, OracleError, ValidationConfig, ValidationReport};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Symbolic,
    Exact,
    Json,
}

/// Leading asymptotics of the diagonal coefficients of a rational function.
#[derive(Clone, Debug, Parser)]
#[command(name = "acsv", version)]
pub struct RunConfig {
    /// Rational function G/H, e.g. "1/(1-x-y)".
    #[arg(long = "function")]
    pub function_text: String,
    /// Comma-separated variable names.
    #[arg(long = "vars", value_delimiter = ',', required = true)]
    pub variables: Vec<String>,
    /// Comma-separated positive integers; all ones by default.
    #[arg(long, value_delimiter = ',')]
    pub direction: Option<Vec<u64>>,
    /// Integer coefficients of the separating form over the variables,
    /// then lambda and t.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub linear_form: Option<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "output", value_enum, default_value_t = OutputMode::Symbolic)]
    pub output_mode: OutputMode,
    /// Significant digits in decimal approximations.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    /// Also print the contributing critical points.
    #[arg(long)]
    pub return_points: bool,
    /// Compare with exact coefficients at these n.
    #[arg(long = "validate", value_delimiter = ',')]
    pub validate_n: Option<Vec<u64>>,
    /// Assert that all but finitely many coefficients are nonnegative.
    #[arg(long)]
    pub combinatorial: bool,
}

/// Exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(status: i32, category: &str, message: impl std::fmt::Display) -> Outcome {
        Outcome {
            status,
            stdout: String::new(),
            stderr: format!("error [{category}]: {message}\n"),
        }
    }
}

fn oracle_status(e: &OracleError) -> (i32, &'static str) {
    match e {
        OracleError::MemoryCap { .. } => (5, "resource-limit"),
        OracleError::NoSeries => (3, "origin-on-variety"),
        OracleError::UnexplainedZero { .. } | OracleError::VanishingEstimate { .. } => (3, "validation"),
    }
}

/// Everything a renderer needs.
pub struct RunResult {
    pub analysis: Analysis,
    pub direction: Direction,
    pub validation: Option<ValidationReport>,
}

fn parse_input(config: &RunConfig) -> Result<(RationalFunctionInput, Direction), Outcome> {
    let f = parse_rational_function(&config.function_text, &config.variables)
        .map_err(|e| Outcome::failure(2, "parse", e))?
        .with_combinatorial(config.combinatorial);
    let d = config.variables.len();
    let r = match &config.direction {
        None => Direction::ones(d),
        Some(r) => Direction::new(r.clone()).map_err(|e| Outcome::failure(2, "input", e))?,
    };
    if r.dim() != d {
        return Err(Outcome::failure(
            2,
            "input",
            format!("direction has {} entries for {d} variables", r.dim()),
        ));
    }
    if let Some(k) = &config.linear_form {
        if k.len() != d + 2 {
            return Err(Outcome::failure(
                2,
                "input",
                format!(
                    "linear form needs {} coefficients (variables, lambda, t), got {}",
                    d + 2,
                    k.len()
                ),
            ));
        }
    }
    Ok((f, r))
}

/// Runs the pipeline without rendering.
pub fn analyze(config: &RunConfig) -> Result<RunResult, Outcome> {
    let (f, r) = parse_input(config)?;
    let acsv_config = AcsvConfig {
        kronecker: KroneckerConfig {
            linear_form: config.linear_form.clone(),
            seed: config.seed,
            ..KroneckerConfig::default()
        },
    };
    let analysis =
        diagonal_asymptotics(&f, &r, &acsv_config).map_err(|e| Outcome::failure(e.exit_code(), e.category(), e))?;
    let validation = match &config.validate_n {
        None => None,
        Some(ns) => Some(
            empirical_validation(&f, &r, &analysis.expansion, ns, &ValidationConfig::default()).map_err(|e| {
                let (status, category) = oracle_status(&e);
                Outcome::failure(status, category, e)
            })?,
        ),
    };
    Ok(RunResult {
        analysis,
        direction: r,
        validation,
    })
}

/// Parses, analyses and renders according to `config`.
pub fn run(config: &RunConfig) -> Outcome {
    let result = match analyze(config) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let digits = config.digits as usize;
    let stdout = match config.output_mode {
        OutputMode::Symbolic => render::symbolic(&result, digits, config.return_points),
        OutputMode::Exact => render::exact(&result, digits, config.return_points),
        OutputMode::Json => render::json_text(&render::to_json(&result, digits, config.return_points)),
    };
    let stderr = result
        .validation
        .iter()
        .flat_map(|v| v.warnings.iter().chain(&v.flags))
        .map(|w| format!("warning: {w}\n"))
        .collect();
    Outcome {
        status: 0,
        stdout,
        stderr,
    }
}
