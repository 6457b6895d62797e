//! Real root isolation by Descartes' rule of signs with bisection, and
//! refinement of isolating intervals.

use super::float::{Float, Round};
use crate::univariate::{sturm_count_all, UPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// An isolated real root: either known exactly, or the unique root in the
/// open interval `(lo, hi)`, where the polynomial changes sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRegion {
    Exact(BigRational),
    Interval {
        lo: BigRational,
        hi: BigRational,
        /// Sign of the polynomial at `lo`.
        lo_sign: Ordering,
    },
}

impl RealRegion {
    pub fn width(&self) -> BigRational {
        match self {
            RealRegion::Exact(_) => BigRational::zero(),
            RealRegion::Interval { lo, hi, .. } => hi - lo,
        }
    }

    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            RealRegion::Exact(q) => (q.clone(), q.clone()),
            RealRegion::Interval { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }
}

fn pow2(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << k as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// Positive roots of `g` in `(0, 1)` mapped through `x -> scale * x`.
/// Intervals are `(c/2^k, (c+1)/2^k)` in the unit variable.
fn descartes_unit(g: &UPoly, out: &mut Vec<(BigInt, i64, Option<bool>)>) {
    // work stack of (poly with roots mapped into (0,1), c, k)
    let mut stack = vec![(g.primitive(), BigInt::zero(), 0i64)];
    while let Some((f, c, k)) = stack.pop() {
        let t = f.reverse().taylor_shift(&BigInt::one());
        let v = crate::univariate::sign_variations(t.coeffs());
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push((c, k, None));
            continue;
        }
        // midpoint 1/2
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let left = f.scale_roots_pow2(1).primitive();
        let right = left.taylor_shift(&BigInt::one()).primitive();
        if f.sign_at(&half) == Ordering::Equal {
            // exact dyadic root at (2c+1)/2^(k+1)
            out.push((BigInt::from(2) * &c + 1, k + 1, Some(true)));
        }
        stack.push((right, BigInt::from(2) * &c + 1, k + 1));
        stack.push((left, BigInt::from(2) * &c, k + 1));
    }
}

/// Isolates the real roots of `p` (square-free part taken), ascending.
pub fn isolate(p: &UPoly) -> Vec<RealRegion> {
    let p = p.square_free().primitive();
    let mut roots: Vec<RealRegion> = Vec::new();
    if p.degree() == 0 {
        return roots;
    }
    let mut q = p.clone();
    if q.coeff(0).is_zero() {
        roots.push(RealRegion::Exact(BigRational::zero()));
        q = q.exact_div(&UPoly::x()).expect("x divides");
    }
    if q.degree() >= 1 {
        let kb = q.root_bound_log2();
        let scale = pow2(kb);
        for negative in [false, true] {
            let base = if negative { q.reflect() } else { q.clone() };
            // roots of base in (0, 2^kb) -> (0, 1)
            let g = base.scale_roots_pow2(-kb);
            let mut found = Vec::new();
            descartes_unit(&g, &mut found);
            for (c, k, exact) in found {
                let lo = &scale * BigRational::new(c.clone(), BigInt::one() << k as usize);
                let region = if exact.is_some() {
                    let v = if negative { -lo } else { lo };
                    RealRegion::Exact(v)
                } else {
                    let hi = &scale * BigRational::new(&c + 1, BigInt::one() << k as usize);
                    let (lo, hi) = if negative { (-hi, -lo) } else { (lo, hi) };
                    let lo_sign = sign_right_of(&p, &lo);
                    RealRegion::Interval { lo, hi, lo_sign }
                };
                roots.push(region);
            }
        }
    }
    // tighten to unit width so that reported intervals are informative
    for r in roots.iter_mut() {
        refine(&p, r, 0);
    }
    roots.sort_by(|a, b| {
        let (a, _) = a.bounds();
        let (b, _) = b.bounds();
        a.cmp(&b)
    });
    assert_eq!(roots.len(), sturm_count_all(&p), "Descartes and Sturm counts disagree");
    roots
}

/// Sign of `p` just to the right of `x`; `p` square-free.
fn sign_right_of(p: &UPoly, x: &BigRational) -> Ordering {
    match p.sign_at(x) {
        Ordering::Equal => p.derivative().sign_at(x),
        s => s,
    }
}

/// One bisection step.
fn bisect(p: &UPoly, region: &mut RealRegion) {
    if let RealRegion::Interval { lo, hi, lo_sign } = region {
        let mid = (&*lo + &*hi) / BigRational::from_integer(2.into());
        match p.sign_at(&mid) {
            Ordering::Equal => *region = RealRegion::Exact(mid),
            s if s == *lo_sign => *lo = mid,
            _ => *hi = mid,
        }
    }
}

/// Attempts a Newton step from the midpoint, certified by a sign change on
/// a small interval around the new estimate inside the current one.
fn newton_step(p: &UPoly, dp: &UPoly, region: &mut RealRegion) -> bool {
    let (lo, hi) = match region {
        RealRegion::Interval { lo, hi, .. } => (lo.clone(), hi.clone()),
        RealRegion::Exact(_) => return true,
    };
    let w = &hi - &lo;
    // bits of the current width
    let wbits = w.numer().bits() as i64 - w.denom().bits() as i64;
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    let prec = (mid.numer().bits() as i64 - mid.denom().bits() as i64 - 2 * wbits + 64).max(64) as u64;
    let x = Float::from_rational(&mid, prec, Round::Nearest);
    let px = super::ball::Ball::eval_upoly(p, &super::ball::Ball::real(x.clone()), prec);
    let dpx = super::ball::Ball::eval_upoly(dp, &super::ball::Ball::real(x.clone()), prec);
    if dpx.contains_zero() {
        return false;
    }
    let step = px.re.div(&dpx.re, prec, Round::Nearest);
    let est = x.sub(&step, prec, Round::Nearest).to_rational();
    // expected new width about w^2 scaled; use a modest margin
    let delta = pow2(2 * wbits - 8).max(pow2(-(prec as i64) + 16));
    if delta >= w {
        return false;
    }
    let a = &est - &delta;
    let b = &est + &delta;
    if a <= lo || b >= hi {
        return false;
    }
    let sa = p.sign_at(&a);
    let sb = p.sign_at(&b);
    if sa == Ordering::Equal {
        *region = RealRegion::Exact(a);
        return true;
    }
    if sb == Ordering::Equal {
        *region = RealRegion::Exact(b);
        return true;
    }
    if sa == sb {
        return false;
    }
    *region = RealRegion::Interval {
        lo: a,
        hi: b,
        lo_sign: sa,
    };
    true
}

/// Shrinks `region` until its width is at most `2^target`.
pub fn refine(p: &UPoly, region: &mut RealRegion, target: i64) {
    let bound = pow2(target);
    let dp = p.derivative();
    let mut newton_ok = 0u32;
    while region.width() > bound {
        // bisection until the interval is narrow enough for Newton to bite
        if newton_ok < 64 && region.width() < pow2(-8) {
            if newton_step(p, &dp, region) {
                continue;
            }
            newton_ok += 1;
        }
        for _ in 0..4 {
            bisect(p, region);
        }
    }
}

/// Width of `region` as an upper bound exponent: `2^k >= width`.
pub fn width_log2(region: &RealRegion) -> i64 {
    let w = region.width();
    if w.is_zero() {
        return i64::MIN;
    }
    let n = w.numer().abs();
    let d = w.denom();
    n.bits() as i64 - d.bits() as i64 + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(xs: &[i64]) -> UPoly {
        UPoly::from_i64s(xs)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn contains(r: &RealRegion, x: &BigRational) -> bool {
        let (lo, hi) = r.bounds();
        &lo <= x && x <= &hi
    }

    #[test]
    fn sqrt_two_roots() {
        let rs = isolate(&up(&[-2, 0, 1]));
        assert_eq!(rs.len(), 2);
        let (lo, hi) = rs[0].bounds();
        assert!(lo >= q(-2, 1) && hi <= q(-1, 1));
        assert!(&lo * &lo > q(2, 1) && &hi * &hi < q(2, 1));
        let (lo, hi) = rs[1].bounds();
        assert!(lo >= q(1, 1) && hi <= q(2, 1));
        assert!(&lo * &lo < q(2, 1) && &hi * &hi > q(2, 1));
    }

    #[test]
    fn cube_root_of_unity_has_one_real_root() {
        let rs = isolate(&up(&[-1, 0, 0, 1]));
        assert_eq!(rs.len(), 1);
        assert!(contains(&rs[0], &q(1, 1)));
    }

    #[test]
    fn exact_dyadic_and_zero_roots() {
        // x (2x - 1) (x + 3)
        let p = &(&up(&[0, 1]) * &up(&[-1, 2])) * &up(&[3, 1]);
        let rs = isolate(&p);
        assert_eq!(rs.len(), 3);
        assert!(contains(&rs[0], &q(-3, 1)));
        assert_eq!(rs[1], RealRegion::Exact(q(0, 1)));
        assert!(contains(&rs[2], &q(1, 2)));
    }

    #[test]
    fn refinement_nests_and_converges() {
        let p = up(&[-2, 0, 1]);
        let mut r = isolate(&p).pop().unwrap();
        let mut prev = r.bounds();
        for t in [-10, -40, -200] {
            refine(&p, &mut r, t);
            let cur = r.bounds();
            assert!(cur.0 >= prev.0 && cur.1 <= prev.1);
            assert!(width_log2(&r) <= t);
            prev = cur;
        }
        let (lo, hi) = prev;
        assert!(&lo * &lo < q(2, 1) && &hi * &hi > q(2, 1));
    }

    #[test]
    fn wilkinson_like_roots_match_sturm() {
        let mut p = up(&[1]);
        for k in 1..=12 {
            p = &p * &up(&[-k, 1]);
        }
        let rs = isolate(&p);
        assert_eq!(rs.len(), 12);
        for (i, r) in rs.iter().enumerate() {
            assert!(contains(r, &q(i as i64 + 1, 1)));
        }
    }
}
