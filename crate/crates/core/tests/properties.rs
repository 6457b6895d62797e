use acsv::acsv::{diagonal_asymptotics, AcsvConfig, Direction};
use acsv::algnum::AlgebraicNumber;
use acsv::expr::{parse_rational_function, var_names, MultiPoly, RationalFunctionInput};
use acsv::oracle::{series_coefficients, DEFAULT_MEMORY_CAP};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(&BigRational::new(n.into(), d.into()))
}

fn poly(vars: &[String], terms: &[((u32, u32), i64)]) -> MultiPoly {
    MultiPoly::from_terms(vars, terms.iter().map(|&((a, b), c)| (vec![a, b], BigInt::from(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For `1/(1 - a x - b y)` the minimal point, growth and constant are
    /// known in closed form for every direction.
    #[test]
    fn linear_denominators_match_the_multinomial_formula(a in 1i64..4, b in 1i64..4, r1 in 1u64..4, r2 in 1u64..4) {
        let text = format!("1/(1-{a}*x-{b}*y)");
        let f = parse_rational_function(&text, &var_names(&["x", "y"])).unwrap().with_combinatorial(true);
        let an = diagonal_asymptotics(&f, &Direction::new(vec![r1, r2]).unwrap(), &AcsvConfig::default()).unwrap();
        prop_assert_eq!(an.expansion.terms.len(), 1);
        let t = &an.expansion.terms[0];
        let s = (r1 + r2) as i64;
        let rho = q(s * a, r1 as i64).pow(r1 as u32).mul(&q(s * b, r2 as i64).pow(r2 as u32));
        prop_assert!(t.rho.is_equal(&rho));
        prop_assert_eq!(&t.alpha, &BigRational::new((-1).into(), 2.into()));
        prop_assert!(t.c.mul(&t.c).is_equal(&q(s, 2 * (r1 * r2) as i64)));
        prop_assert_eq!(t.c.sign(), Ok(1));
        let w = &an.minimal_point.coords;
        prop_assert!(w[0].is_equal(&q(r1 as i64, s * a)) && w[1].is_equal(&q(r2 as i64, s * b)));
    }

    /// The oracle table of `1/(1 - x - y)` is Pascal's triangle.
    #[test]
    fn binomial_table_is_pascal(m in 0u32..12, n in 0u32..12) {
        let f = parse_rational_function("1/(1-x-y)", &var_names(&["x", "y"])).unwrap();
        let t = series_coefficients(&f, &[m, n], DEFAULT_MEMORY_CAP).unwrap();
        let want = binomial(BigInt::from(m + n), BigInt::from(m));
        prop_assert_eq!(t.get(&[m, n]), BigRational::from_integer(want));
    }

    /// The table satisfies `H * F = G` on its whole box for random `G/H`.
    #[test]
    fn convolution_identity(
        h0 in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
        h in prop::collection::vec(((0u32..3, 0u32..3), -3i64..4), 1..5),
        g in prop::collection::vec(((0u32..3, 0u32..3), -3i64..4), 1..4),
    ) {
        let vars = var_names(&["x", "y"]);
        let mut hs: Vec<_> = h.into_iter().filter(|(e, _)| *e != (0, 0)).collect();
        hs.push(((0, 0), h0));
        let f = RationalFunctionInput {
            numerator: poly(&vars, &g),
            denominator: poly(&vars, &hs),
            combinatorial_asserted: false,
        };
        let t = series_coefficients(&f, &[5, 5], DEFAULT_MEMORY_CAP).unwrap();
        prop_assert!(t.convolution_holds(&f));
    }

    /// Square roots of rationals square back exactly.
    #[test]
    fn rational_square_roots(n in 0i64..200, d in 1i64..50) {
        let x = q(n, d);
        let s = x.sqrt();
        prop_assert!(s.mul(&s).is_equal(&x));
        prop_assert!(s.sign() != Ok(-1));
    }
}
