use super::*;
use crate::algnum::AlgebraicNumber;
use crate::expr::{parse_rational_function, var_names};
use crate::univariate::field::NumberField;
use crate::univariate::UPoly;
use num_rational::BigRational;

fn input(text: &str, vars: &[&str]) -> RationalFunctionInput {
    parse_rational_function(text, &var_names(vars))
        .unwrap()
        .with_combinatorial(true)
}

fn run(text: &str, vars: &[&str], r: &[u64]) -> Result<Analysis, AcsvError> {
    diagonal_asymptotics(
        &input(text, vars),
        &Direction::new(r.to_vec()).unwrap(),
        &AcsvConfig::default(),
    )
}

fn q(n: i64, d: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(&BigRational::new(n.into(), d.into()))
}

#[test]
fn central_binomial() {
    let a = run("1/(1-x-y)", &["x", "y"], &[1, 1]).unwrap();
    assert_eq!(a.expansion.terms.len(), 1);
    let t = &a.expansion.terms[0];
    assert!(t.c.is_equal(&q(1, 1)));
    assert!(t.rho.is_equal(&q(4, 1)));
    assert_eq!(t.alpha, BigRational::new((-1).into(), 2.into()));
    let w = &a.minimal_point;
    assert!(w.coords[0].is_equal(&q(1, 2)) && w.coords[1].is_equal(&q(1, 2)));
    assert_eq!(a.contributors.len(), 1);
    let hes = &a.expansion.contributions[0].hessian;
    assert!(hes.entries[0][0].is_equal(&q(2, 1)));
    assert!(hes.determinant.is_equal(&q(2, 1)));
    assert!(hes.u.iter().flatten().all(|u| u.is_zero()));
    assert_eq!(hes.permutation, vec![0, 1]);
}

#[test]
fn skew_direction_on_the_binomial_denominator() {
    let a = run("1/(1-x-y)", &["x", "y"], &[2, 1]).unwrap();
    let w = &a.minimal_point;
    assert!(w.coords[0].is_equal(&q(2, 3)) && w.coords[1].is_equal(&q(1, 3)));
    let hes = &a.expansion.contributions[0].hessian;
    assert!(hes.entries[0][0].is_equal(&q(6, 1)));
    let t = &a.expansion.terms[0];
    assert!(t.rho.is_equal(&q(27, 4)));
    // C = sqrt(3)/2
    assert!(t.c.mul(&t.c).is_equal(&q(3, 4)));
    assert_eq!(t.c.sign(), Ok(1));
}

#[test]
fn univariate_geometric_series() {
    let a = run("1/(1-2*z)", &["z"], &[1]).unwrap();
    let t = &a.expansion.terms[0];
    assert!(t.rho.is_equal(&q(2, 1)) && t.c.is_equal(&q(1, 1)));
    assert_eq!(t.alpha, BigRational::from_integer(0.into()));
    let hes = &a.expansion.contributions[0].hessian;
    assert!(hes.entries.is_empty());
    assert!(hes.determinant.is_equal(&q(1, 1)));
}

#[test]
fn four_same_modulus_points_merge_into_two_terms() {
    let a = run("1/(1-2*x^2-2*y^2)", &["x", "y"], &[1, 1]).unwrap();
    assert_eq!(a.contributors.len(), 4);
    for p in &a.contributors {
        for c in &p.coords {
            assert!(c.is_equal(&q(1, 2)) || c.is_equal(&q(-1, 2)));
        }
    }
    assert_eq!(a.expansion.terms.len(), 2);
    let rhos: Vec<_> = a.expansion.terms.iter().map(|t| t.rho.clone()).collect();
    assert!(rhos.iter().any(|r| r.is_equal(&q(4, 1))) && rhos.iter().any(|r| r.is_equal(&q(-4, 1))));
    // the two constants agree, so odd diagonal coefficients cancel
    assert!(a.expansion.terms[0].c.is_equal(&a.expansion.terms[1].c));
}

#[test]
fn origin_on_the_variety() {
    assert!(matches!(
        run("1/(x+y)", &["x", "y"], &[1, 1]),
        Err(AcsvError::OriginOnVariety)
    ));
}

#[test]
fn vanishing_numerator_is_an_error() {
    let e = run("(2-4*x)/(1-x-y)", &["x", "y"], &[1, 1]).unwrap_err();
    assert!(matches!(e, AcsvError::VanishingNumerator { .. }), "{e}");
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn missing_assertion_is_refused() {
    let f = parse_rational_function("1/(1-x-y)", &var_names(&["x", "y"])).unwrap();
    let e = diagonal_asymptotics(&f, &Direction::ones(2), &AcsvConfig::default()).unwrap_err();
    assert!(matches!(e, AcsvError::NotAsserted));
    assert_eq!(e.exit_code(), 6);
}

#[test]
fn direction_length_is_checked() {
    let e = run("1/(1-x-y)", &["x", "y"], &[1, 1, 1]).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(Direction::new(vec![1, 0]).is_err());
}

#[test]
fn squared_denominator_is_reported_as_a_higher_order_pole() {
    let e = run("1/(1-x-y)^2", &["x", "y"], &[1, 1]).unwrap_err();
    match e {
        AcsvError::HigherOrderPole { note } => assert!(note.contains("0.5"), "{note}"),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn common_factors_are_cancelled() {
    let a = run("(1-x-y)*(1+x)/((1-x-y)^2*(1+x))", &["x", "y"], &[1, 1]).unwrap();
    assert_eq!(a.report.notes.len(), 1);
    assert!(a.expansion.terms[0].rho.is_equal(&q(4, 1)));
}

#[test]
fn critical_points_satisfy_the_extended_equations() {
    let a = run("1/(1-2*x^2-2*y^2)", &["x", "y"], &[1, 1]).unwrap();
    let f = &a.function;
    let r = &a.direction;
    for p in &a.critical_points {
        assert!(AlgebraicNumber::evaluate(&f.denominator, &p.coords).is_zero());
        for k in 0..2 {
            let zh = AlgebraicNumber::evaluate(&f.denominator.partial_derivative(k), &p.coords).mul(&p.coords[k]);
            let rl = p.lambda.mul(&q(r.get(k) as i64, 1));
            assert!(zh.is_equal(&rl));
        }
    }
}

#[test]
fn extended_solutions_over_the_binomial_minimal_point() {
    // the only t with z = (1/2, 1/2) is t = 1, outside (0, 1)
    let a = run("1/(1-x-y)", &["x", "y"], &[1, 1]).unwrap();
    let fields = points::solution_fields(&a.kronecker, &a.extended_system).unwrap();
    assert!(points::torus_witnesses(&fields, &a.minimal_point.coords).is_empty());
    assert_eq!(a.kronecker.solution_count(), 1);
}

#[test]
fn non_minimal_positive_point_is_filtered() {
    // (1/2, 1/2) is critical for the first factor, but t = 1/3 puts
    // t*(1/2, 1/2) on the second one
    let a = run("1/((1-x-y)*(1-3*x-3*y))", &["x", "y"], &[1, 1]).unwrap();
    let w = &a.minimal_point;
    assert!(w.coords[0].is_equal(&q(1, 6)));
    let positive: Vec<_> = a.critical_points.iter().filter(|p| p.real_positive).collect();
    assert_eq!(positive.len(), 2);
    assert_eq!(positive.iter().filter(|p| p.minimal).count(), 1);
}

#[test]
fn determinant_matches_cofactor_expansion_of_entries() {
    let a = run("1/(1-x-y-z)", &["x", "y", "z"], &[1, 1, 1]).unwrap();
    let hes = &a.expansion.contributions[0].hessian;
    let det = hessian::cofactor_det(
        &hes.entries,
        &AlgebraicNumber::one(),
        &|a, b| a.add(b),
        &|a, b| a.sub(b),
        &|a, b| a.mul(b),
    );
    assert!(det.is_equal(&hes.determinant));
    assert!(hes.entries[0][1].is_equal(&hes.entries[1][0]));
    // multinomial (3n)!/n!^3 ~ 27^n * sqrt(3)/(2 pi n)
    let t = &a.expansion.terms[0];
    assert!(t.rho.is_equal(&q(27, 1)));
    assert!(t.c.mul(&t.c).is_equal(&q(3, 4)));
}

#[test]
fn last_variable_choice_skips_vanishing_partials() {
    let field = NumberField::new(&UPoly::from_i64s(&[-2, 0, 1]));
    let parts = vec![field.one(), field.gen(), field.zero()];
    assert_eq!(hessian::choose_last(&parts), Some(1));
    assert_eq!(hessian::choose_last(&[field.zero(), field.zero()]), None);
}

#[test]
fn scaling_the_direction_keeps_the_critical_points() {
    let a = run("1/(1-x-y)", &["x", "y"], &[2, 1]).unwrap();
    let b = run("1/(1-x-y)", &["x", "y"], &[4, 2]).unwrap();
    assert!(a.minimal_point.same_point(&b.minimal_point));
    // rho scales to rho^2
    let ra = &a.expansion.terms[0].rho;
    assert!(ra.mul(ra).is_equal(&b.expansion.terms[0].rho));
}

#[test]
fn permuting_variables_keeps_rho_alpha_and_modulus_of_c() {
    let a = run("1/(1-x-2*y)", &["x", "y"], &[1, 2]).unwrap();
    let b = run("1/(1-2*y-x)", &["y", "x"], &[2, 1]).unwrap();
    let (ta, tb) = (&a.expansion.terms[0], &b.expansion.terms[0]);
    assert!(ta.rho.is_equal(&tb.rho));
    assert_eq!(ta.alpha, tb.alpha);
    assert!(ta.c.modulus_squared().is_equal(&tb.c.modulus_squared()));
}

#[test]
fn report_lists_every_assumption() {
    let a = run("1/(1-x-y)", &["x", "y"], &[1, 1]).unwrap();
    let names: Vec<_> = a.report.assumptions.iter().map(|c| c.name).collect();
    assert_eq!(names[0], "H(0) != 0");
    assert_eq!(names.len(), 7);
    assert!(a.report.assumptions.iter().take(5).all(|c| c.verdict == Verdict::Pass));
    assert_eq!(a.report.linear_form.len(), 4);
}
