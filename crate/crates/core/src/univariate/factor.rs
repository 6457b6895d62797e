//! Factorization of square-free integer polynomials (Zassenhaus: modular
//! factorization, quadratic Hensel lifting, subset recombination).
//!
//! Used to shrink defining polynomials of algebraic numbers down to minimal
//! polynomials. Recombination is exhaustive, so inputs whose modular image
//! splits into too many factors are reported as [`Factorization::GaveUp`]
//! rather than spending exponential time.

use super::modp::{Fp, FpPoly};
use super::UPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest number of modular factors we are willing to recombine.
pub const MAX_RECOMBINATION_FACTORS: usize = 18;

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379,
    383, 389, 397, 401, 409, 419, 421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521,
    523, 541, 547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659, 661,
    673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797, 809, 811, 821, 823, 827,
    829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929, 937, 941, 947, 953, 967, 971, 977, 983, 991,
    997,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// Irreducible primitive factors with positive leading coefficients.
    Complete(Vec<UPoly>),
    /// Too many modular factors to recombine.
    GaveUp,
}

/// Factors a square-free polynomial of positive degree over the integers.
pub fn factor_square_free(f: &UPoly) -> Factorization {
    let f = f.primitive();
    assert!(f.degree() >= 1, "factoring a constant");
    let mut out = Vec::new();
    // strip the factor x first so that f(0) != 0
    let f = if f.coeff(0).is_zero() {
        out.push(UPoly::x());
        f.exact_div(&UPoly::x()).expect("x divides")
    } else {
        f
    };
    if f.degree() == 0 {
        return Factorization::Complete(out);
    }
    if f.degree() == 1 {
        out.push(f);
        return Factorization::Complete(out);
    }
    match zassenhaus(&f) {
        Some(mut fs) => {
            out.append(&mut fs);
            Factorization::Complete(out)
        }
        None => Factorization::GaveUp,
    }
}

/// True when `f` is irreducible over the rationals, `None` if undecided.
pub fn is_irreducible(f: &UPoly) -> Option<bool> {
    if f.degree() <= 1 {
        return Some(f.degree() == 1);
    }
    if !f.is_square_free() {
        return Some(false);
    }
    match factor_square_free(f) {
        Factorization::Complete(fs) => Some(fs.len() == 1),
        Factorization::GaveUp => None,
    }
}

fn degree_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut possible = vec![false; n + 1];
    possible[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if possible[s - d] {
                possible[s] = true;
            }
        }
    }
    possible
}

struct ModularImage {
    fp: Fp,
    factors: Vec<FpPoly>,
}

fn modular_factorization(f: &UPoly, fp: Fp, rng: &mut ChaCha8Rng) -> Option<ModularImage> {
    let lc = fp.residue(&f.lc());
    if lc == 0 {
        return None;
    }
    let fm = fp.reduce(f.coeffs());
    if fm.len() != f.degree() + 1 || !fp.is_square_free(&fm) {
        return None;
    }
    let monic = fp.monic(&fm);
    let mut factors = Vec::new();
    for (d, g) in fp.ddf(&monic) {
        factors.extend(fp.edf(&g, d, rng));
    }
    Some(ModularImage { fp, factors })
}

fn zassenhaus(f: &UPoly) -> Option<Vec<UPoly>> {
    let n = f.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut best: Option<ModularImage> = None;
    let mut allowed = vec![true; n + 1];
    let mut tried = 0;
    for &p in PRIMES {
        let Some(img) = modular_factorization(f, Fp::new(p), &mut rng) else {
            continue;
        };
        tried += 1;
        let degs: Vec<usize> = img.factors.iter().map(|g| g.len() - 1).collect();
        let sums = degree_sums(&degs, n);
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if img.factors.len() == 1 || (1..n).all(|d| !allowed[d]) {
            return Some(vec![f.clone()]);
        }
        if best.as_ref().is_none_or(|b| img.factors.len() < b.factors.len()) {
            best = Some(img);
        }
        if tried >= 6 {
            break;
        }
    }
    let img = best?;
    if img.factors.len() > MAX_RECOMBINATION_FACTORS {
        return None;
    }
    let p = BigInt::from(img.fp.p);
    // bound on coefficients of lc(f) * g for any factor g
    let bound: BigInt = (BigInt::one() << n) * f.norm1() * f.lc().abs();
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= &bound * 2 {
        k += 1;
        modulus *= &p;
    }
    let lifted = hensel_lift(f, &img.factors, img.fp, &p, k);
    Some(recombine(f, lifted, &modulus, &allowed))
}

fn recombine(f: &UPoly, mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt, allowed: &[bool]) -> Vec<UPoly> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].len() - 1).sum();
            if allowed.get(deg).copied().unwrap_or(true) {
                if let Some(g) = trial_factor(&f, &lifted, &idx, modulus) {
                    found = Some((g, idx.clone()));
                    break;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        match found {
            Some((g, idx)) => {
                f = f.exact_div(&g).expect("trial division succeeded");
                out.push(g);
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if f.degree() > 0 {
        out.push(f.primitive());
    }
    out
}

fn trial_factor(f: &UPoly, lifted: &[Vec<BigInt>], idx: &[usize], modulus: &BigInt) -> Option<UPoly> {
    let lc = f.lc();
    // constant-term test before the full product
    let mut c0 = lc.clone();
    for &i in idx {
        c0 = (c0 * &lifted[i][0]).mod_floor(modulus);
    }
    let c0 = symmetric(&c0, modulus);
    if c0.is_zero() || !(&lc * f.coeff(0)).is_multiple_of(&c0) {
        return None;
    }
    let mut g = vec![lc.mod_floor(modulus)];
    for &i in idx {
        g = mul_mod(&g, &lifted[i], modulus);
    }
    let g = UPoly::new(g.iter().map(|c| symmetric(c, modulus)).collect()).primitive();
    f.exact_div(&g).map(|_| g)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c * 2 > *m {
        c - m
    } else {
        c
    }
}

fn reduce(v: &mut Vec<BigInt>, m: &BigInt) {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&mut out, m);
    out
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&mut out, m);
    out
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&mut out, m);
    out
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = a.to_vec();
    reduce(&mut r, m);
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[i + dr - db] = (&r[i + dr - db] - bc * &c).mod_floor(m);
            }
            q[dr - db] = c;
        }
        r.pop();
    }
    reduce(&mut r, m);
    reduce(&mut q, m);
    (q, r)
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts a factorization `f = lc(f) * prod(factors) mod p` to monic factors
/// modulo `p^k`.
fn hensel_lift(f: &UPoly, factors: &[FpPoly], fp: Fp, p: &BigInt, k: u32) -> Vec<Vec<BigInt>> {
    let pk = p.pow(k);
    let lc = f.lc().mod_floor(&pk);
    let inv = mod_inverse(&lc, &pk);
    let mut target: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &inv).mod_floor(&pk)).collect();
    reduce(&mut target, &pk);
    lift_tree(&target, factors, fp, p, k)
}

fn lift_tree(target: &[BigInt], factors: &[FpPoly], fp: Fp, p: &BigInt, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![target.to_vec()];
    }
    let (a, b) = factors.split_at(factors.len() / 2);
    let g0 = a.iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let h0 = b.iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let (one, s0, t0) = fp.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (to_big(&g0), to_big(&h0), to_big(&s0), to_big(&t0));
    let mut m = p.clone();
    let mut e = 1u32;
    while e < k {
        let mm = &m * &m;
        let f_mm: Vec<BigInt> = {
            let mut v = target.to_vec();
            reduce(&mut v, &mm);
            v
        };
        let err = sub_mod(&f_mm, &mul_mod(&g, &h, &mm), &mm);
        let (q, r) = div_rem_monic(&mul_mod(&s, &err, &mm), &h, &mm);
        let g1 = add_mod(&add_mod(&g, &mul_mod(&t, &err, &mm), &mm), &mul_mod(&q, &g, &mm), &mm);
        let h1 = add_mod(&h, &r, &mm);
        let bb = sub_mod(
            &add_mod(&mul_mod(&s, &g1, &mm), &mul_mod(&t, &h1, &mm), &mm),
            &[BigInt::one()],
            &mm,
        );
        let (c, d) = div_rem_monic(&mul_mod(&s, &bb, &mm), &h1, &mm);
        let s1 = sub_mod(&s, &d, &mm);
        let t1 = sub_mod(&sub_mod(&t, &mul_mod(&t, &bb, &mm), &mm), &mul_mod(&c, &g1, &mm), &mm);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = mm;
        e *= 2;
    }
    let pk = p.pow(k);
    reduce(&mut g, &pk);
    reduce(&mut h, &pk);
    let mut out = lift_tree(&g, a, fp, p, k);
    out.extend(lift_tree(&h, b, fp, p, k));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(f: &UPoly) -> Vec<UPoly> {
        match factor_square_free(f) {
            Factorization::Complete(mut v) => {
                v.sort_by_key(|g| (g.degree(), format!("{g}")));
                v
            }
            Factorization::GaveUp => panic!("gave up"),
        }
    }

    #[test]
    fn factors_product_of_quadratics() {
        let a = UPoly::from_i64s(&[-2, 0, 1]);
        let b = UPoly::from_i64s(&[1, 1, 1]);
        let c = UPoly::from_i64s(&[-3, 2]);
        let f = &(&a * &b) * &c;
        let fs = complete(&f);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(UPoly::one(), |acc, g| &acc * g);
        assert_eq!(prod.primitive(), f.primitive());
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime
        let f = UPoly::from_i64s(&[1, 0, -10, 0, 1]);
        assert_eq!(complete(&f), vec![f.clone()]);
        assert_eq!(is_irreducible(&f), Some(true));
    }

    #[test]
    fn cyclotomic_split() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = UPoly::from_i64s(&[-1, 0, 0, 0, 0, 0, 1]);
        let fs = complete(&f);
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn non_monic_factors() {
        let a = UPoly::from_i64s(&[5, 0, 0, 3]);
        let b = UPoly::from_i64s(&[-7, 4, 6]);
        let f = &a * &b;
        let fs = complete(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&a));
        assert!(fs.contains(&b));
    }
}
