use super::*;
use crate::acsv::{diagonal_asymptotics, AcsvConfig, Direction};
use crate::expr::{parse_rational_function, var_names};
use num_integer::binomial;

fn input(text: &str, vars: &[&str]) -> RationalFunctionInput {
    parse_rational_function(text, &var_names(vars))
        .unwrap()
        .with_combinatorial(true)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Independent formula for the Apéry numbers.
fn apery(n: u64) -> BigInt {
    (0..=n)
        .map(|k| {
            let a = binomial(BigInt::from(n), BigInt::from(k));
            let b = binomial(BigInt::from(n + k), BigInt::from(k));
            &a * &a * &b * &b
        })
        .sum()
}

#[test]
fn binomial_table() {
    let f = input("1/(1-x-y)", &["x", "y"]);
    let t = series_coefficients(&f, &[6, 6], DEFAULT_MEMORY_CAP).unwrap();
    assert_eq!(t.get(&[1, 1]), int(2));
    assert_eq!(t.get(&[2, 2]), int(6));
    assert_eq!(t.get(&[3, 3]), int(20));
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            let want = binomial(BigInt::from(a + b), BigInt::from(a));
            assert_eq!(t.get(&[a, b]), BigRational::from_integer(want));
        }
    }
    assert!(t.convolution_holds(&f));
}

#[test]
fn constant_function() {
    let f = input("1", &["x", "y"]);
    let t = series_coefficients(&f, &[3, 3], DEFAULT_MEMORY_CAP).unwrap();
    assert_eq!(t.get(&[0, 0]), int(1));
    assert!((0..=3).all(|a| (0..=3).all(|b| (a, b) == (0, 0) || t.get(&[a, b]).is_zero())));
}

#[test]
fn apery_diagonal_matches_the_sum_formula() {
    let f = input("1/(1-w*(1+x)*(1+y)*(1+z)*(x*y*z+y*z+y+z+1))", &["w", "x", "y", "z"]);
    let t = series_coefficients(&f, &[6, 6, 6, 6], DEFAULT_MEMORY_CAP).unwrap();
    assert_eq!(t.get(&[1, 1, 1, 1]), int(5));
    assert_eq!(t.get(&[2, 2, 2, 2]), int(73));
    for n in 0..=6 {
        assert_eq!(t.diagonal(&[1, 1, 1, 1], n), BigRational::from_integer(apery(n)));
    }
}

#[test]
fn non_unit_constant_term_gives_rationals() {
    // 1/(2-x) = sum x^n / 2^(n+1)
    let f = input("1/(2-x)", &["x"]);
    let t = series_coefficients(&f, &[5], DEFAULT_MEMORY_CAP).unwrap();
    for n in 0..=5u32 {
        assert_eq!(t.get(&[n]), BigRational::new(1.into(), BigInt::from(2).pow(n + 1)));
    }
    assert!(t.convolution_holds(&f));
    let g = input("(1+x)/(3-x-y)", &["x", "y"]);
    let t = series_coefficients(&g, &[4, 4], DEFAULT_MEMORY_CAP).unwrap();
    assert!(t.convolution_holds(&g));
}

#[test]
fn memory_cap_and_origin() {
    let f = input("1/(1-x-y)", &["x", "y"]);
    assert!(matches!(
        series_coefficients(&f, &[999, 999], 1000),
        Err(OracleError::MemoryCap {
            needed: 1_000_000,
            cap: 1000
        })
    ));
    let g = input("1/(x+y)", &["x", "y"]);
    assert_eq!(
        series_coefficients(&g, &[1, 1], 100).unwrap_err(),
        OracleError::NoSeries
    );
}

#[test]
fn negative_coefficients_are_found() {
    let f = input("1/(1+x)", &["x"]);
    let t = series_coefficients(&f, &[6], 100).unwrap();
    assert_eq!(t.negative_beyond(2), vec![vec![3], vec![5]]);
    let f = input("1/(0-1-x)", &["x"]);
    let t = series_coefficients(&f, &[4], 100).unwrap();
    // -1/(1+x) = -1 + x - x^2 + ...
    assert_eq!(t.negative_beyond(0), vec![vec![2], vec![4]]);
}

#[test]
fn pi_enclosure() {
    let (lo, hi) = pi_ball(200);
    let approx = BigRational::new(314159265358979323u64.into(), 100000000000000000u64.into());
    let next = BigRational::new(314159265358979324u64.into(), 100000000000000000u64.into());
    assert!(lo > approx && hi < next);
    assert!(&hi - &lo < BigRational::new(1.into(), BigInt::one() << 190));
}

#[test]
fn binomial_errors_follow_one_over_8n() {
    let f = input("1/(1-x-y)", &["x", "y"]);
    let r = Direction::ones(2);
    let a = diagonal_asymptotics(&f, &r, &AcsvConfig::default()).unwrap();
    let rep = empirical_validation(&f, &r, &a.expansion, &[10, 20, 40], &ValidationConfig::default()).unwrap();
    for s in &rep.samples {
        let (lo, hi) = s.rel_error.unwrap();
        let n = s.n as f64;
        assert!(hi < 1.0 / (4.0 * n), "n = {n}: {hi}");
        assert!(
            lo > 1.0 / (8.0 * n) * 0.9 && hi < 1.0 / (8.0 * n) * 1.1,
            "n = {n}: {lo}"
        );
    }
    assert_eq!(rep.decays_at(10), Some(true));
    assert!(rep.flags.is_empty() && rep.warnings.is_empty());
}

#[test]
fn parity_example_vanishes_at_odd_n() {
    let f = input("1/(1-2*x^2-2*y^2)", &["x", "y"]);
    let r = Direction::ones(2);
    let a = diagonal_asymptotics(&f, &r, &AcsvConfig::default()).unwrap();
    let rep = empirical_validation(&f, &r, &a.expansion, &[5, 7, 10, 20], &ValidationConfig::default()).unwrap();
    assert!(rep.sample(5).unwrap().vanishing && rep.sample(7).unwrap().vanishing);
    assert!(!rep.sample(10).unwrap().vanishing);
    assert_eq!(rep.decays_at(10), Some(true));
    assert_eq!(rep.decays_at(5), None);
}
