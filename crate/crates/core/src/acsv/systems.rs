//! The critical-point system and the extended system used for minimality.

use super::Direction;
use crate::expr::MultiPoly;
use num_bigint::BigInt;

/// `H` together with `r_k z_1 H_{z_1} - r_1 z_k H_{z_k}` for `k = 2..d`.
pub fn build_critical_system(h: &MultiPoly, r: &Direction) -> Vec<MultiPoly> {
    assert!(!h.is_zero(), "H must be nonzero");
    let d = h.nvars();
    assert_eq!(d, r.dim(), "direction length");
    let vars = h.vars();
    let z1h1 = &MultiPoly::var(vars, 0) * &h.partial_derivative(0);
    let mut out = vec![h.clone()];
    for k in 1..d {
        let zkhk = &MultiPoly::var(vars, k) * &h.partial_derivative(k);
        let e = &z1h1.scale(&BigInt::from(r.get(k))) - &zkhk.scale(&BigInt::from(r.get(0)));
        out.push(e);
    }
    out
}

/// A variable name not among `taken`.
fn fresh(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// The variables of the extended system: the original ones, then `λ`, then `t`.
pub fn extended_vars(z: &[String]) -> Vec<String> {
    let mut vars = z.to_vec();
    let lambda = fresh("lambda", &vars);
    vars.push(lambda);
    let t = fresh("t", &vars);
    vars.push(t);
    vars
}

/// `H(z)`, `H(t z)` and `z_i H_{z_i} - r_i λ`, over [`extended_vars`].
pub fn build_extended_system(h: &MultiPoly, r: &Direction) -> Vec<MultiPoly> {
    assert!(!h.is_zero(), "H must be nonzero");
    let d = h.nvars();
    assert_eq!(d, r.dim(), "direction length");
    let vars = extended_vars(h.vars());
    let he = h.embed(&vars);
    let lambda = MultiPoly::var(&vars, d);
    let mut out = vec![he.clone(), he.homogenize_with(d + 1)];
    for i in 0..d {
        let zh = &MultiPoly::var(&vars, i) * &he.partial_derivative(i);
        out.push(&zh - &lambda.scale(&BigInt::from(r.get(i))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_polynomial, var_names};

    fn poly(s: &str, vars: &[String]) -> MultiPoly {
        parse_polynomial(s, vars).unwrap()
    }

    #[test]
    fn critical_system_of_the_binomial_denominator() {
        let v = var_names(&["x", "y"]);
        let h = poly("1-x-y", &v);
        let sys = build_critical_system(&h, &Direction::ones(2));
        assert_eq!(sys, vec![h.clone(), poly("y-x", &v)]);
        let sys = build_critical_system(&h, &Direction::new(vec![2, 1]).unwrap());
        assert_eq!(sys, vec![h, poly("2*y-x", &v)]);
    }

    #[test]
    fn univariate_critical_system_is_just_h() {
        let v = var_names(&["z"]);
        let h = poly("1-2*z", &v);
        assert_eq!(build_critical_system(&h, &Direction::ones(1)), vec![h]);
    }

    #[test]
    fn extended_systems() {
        let v = var_names(&["x", "y"]);
        let ext = build_extended_system(&poly("1-x-y", &v), &Direction::ones(2));
        let ev = var_names(&["x", "y", "lambda", "t"]);
        let want: Vec<MultiPoly> = ["1-x-y", "1-t*x-t*y", "0-x-lambda", "0-y-lambda"]
            .iter()
            .map(|s| poly(s, &ev))
            .collect();
        assert_eq!(ext, want);

        let v = var_names(&["z"]);
        let ext = build_extended_system(&poly("1-2*z", &v), &Direction::ones(1));
        let ev = var_names(&["z", "lambda", "t"]);
        let want: Vec<MultiPoly> = ["1-2*z", "1-2*t*z", "0-2*z-lambda"]
            .iter()
            .map(|s| poly(s, &ev))
            .collect();
        assert_eq!(ext, want);
    }

    #[test]
    fn fresh_names_avoid_user_variables() {
        let vars = extended_vars(&var_names(&["t", "lambda"]));
        assert_eq!(vars, var_names(&["t", "lambda", "lambda_", "t_"]));
    }
}
