//! Isolation of all complex roots of a square-free integer polynomial.
//!
//! Approximations come from the Aberth–Ehrlich iteration in binary floating
//! point. They are certified with Weierstrass inclusion disks: with
//! `W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))`, every root lies in the
//! union of the disks `D(z_i, n|W_i|)`, and a connected component made of
//! `m` disks holds exactly `m` roots. We accept when the disks of doubled
//! radius `2n|W_i|` are pairwise disjoint, so each root `α_i` satisfies
//! `|α_i - z_i| <= n|W_i|` and `D(z_i, 2n|W_i|)` holds no other root.
//!
//! A disk stored as `(c, r)` always means: the root is within `r` of `c`
//! and no other root lies within `2r` of `c`. Refinement uses Newton's
//! inclusion bound (some root lies within `n|p(z)/p'(z)|` of `z`) and only
//! accepts disks that stay inside the doubled previous disk.

use super::ball::Ball;
use super::float::{Float, Round};
use crate::univariate::UPoly;
use num_traits::Zero;
use std::cmp::Ordering;

#[derive(Clone, Debug)]
struct C {
    re: Float,
    im: Float,
}

impl C {
    fn zero() -> C {
        C {
            re: Float::zero(),
            im: Float::zero(),
        }
    }
    fn add(&self, o: &C, p: u64) -> C {
        C {
            re: self.re.add(&o.re, p, Round::Nearest),
            im: self.im.add(&o.im, p, Round::Nearest),
        }
    }
    fn sub(&self, o: &C, p: u64) -> C {
        C {
            re: self.re.sub(&o.re, p, Round::Nearest),
            im: self.im.sub(&o.im, p, Round::Nearest),
        }
    }
    fn mul(&self, o: &C, p: u64) -> C {
        let re = self.re.mul_exact(&o.re).add_exact(&self.im.mul_exact(&o.im).neg());
        let im = self.re.mul_exact(&o.im).add_exact(&self.im.mul_exact(&o.re));
        C {
            re: re.round(p, Round::Nearest),
            im: im.round(p, Round::Nearest),
        }
    }
    fn norm2(&self, p: u64) -> Float {
        self.re
            .mul_exact(&self.re)
            .add_exact(&self.im.mul_exact(&self.im))
            .round(p, Round::Nearest)
    }
    fn div(&self, o: &C, p: u64) -> Option<C> {
        let n = o.norm2(p + 8);
        if n.is_zero() {
            return None;
        }
        let conj = C {
            re: o.re.clone(),
            im: o.im.neg(),
        };
        let t = self.mul(&conj, p + 8);
        Some(C {
            re: t.re.div(&n, p, Round::Nearest),
            im: t.im.div(&n, p, Round::Nearest),
        })
    }
    /// log2 of the larger component magnitude.
    fn mag(&self) -> i64 {
        self.re.magnitude().max(self.im.magnitude())
    }
}

fn horner(p: &[Float], z: &C, prec: u64) -> C {
    let mut acc = C::zero();
    for c in p.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re = acc.re.add(c, prec, Round::Nearest);
    }
    acc
}

/// Aberth–Ehrlich iterations in place; returns true if the last sweep moved
/// every approximation by a relative amount below `2^-(prec/2)`.
fn aberth(p: &UPoly, zs: &mut [C], prec: u64, max_sweeps: usize) -> bool {
    let cs: Vec<Float> = p
        .coeffs()
        .iter()
        .map(|c| Float::from_bigint(c).round(prec, Round::Nearest))
        .collect();
    let dp = p.derivative();
    let ds: Vec<Float> = dp
        .coeffs()
        .iter()
        .map(|c| Float::from_bigint(c).round(prec, Round::Nearest))
        .collect();
    let n = zs.len();
    let tol = -(prec as i64) / 2;
    for _ in 0..max_sweeps {
        let mut converged = true;
        for k in 0..n {
            let pz = horner(&cs, &zs[k], prec);
            if pz.re.is_zero() && pz.im.is_zero() {
                continue;
            }
            let dz = horner(&ds, &zs[k], prec);
            let ratio = match pz.div(&dz, prec) {
                Some(r) => r,
                None => {
                    // nudge off a critical point
                    zs[k].re = zs[k].re.add(&Float::pow2(zs[k].mag() - 20), prec, Round::Nearest);
                    converged = false;
                    continue;
                }
            };
            let one = C {
                re: Float::from_int(1),
                im: Float::zero(),
            };
            let mut s = C::zero();
            for j in 0..n {
                if j != k {
                    if let Some(inv) = one.div(&zs[k].sub(&zs[j], prec), prec) {
                        s = s.add(&inv, prec);
                    }
                }
            }
            let den = one.sub(&ratio.mul(&s, prec), prec);
            let w = ratio.div(&den, prec).unwrap_or(ratio);
            let zmag = zs[k].mag();
            if w.mag() > zmag.saturating_add(tol) && w.mag() > tol * 2 {
                converged = false;
            }
            zs[k] = zs[k].sub(&w, prec);
        }
        if converged {
            return true;
        }
    }
    false
}

/// Initial approximations on a circle whose radius is the geometric mean
/// root size, slightly rotated off the axes.
fn initial(p: &UPoly) -> Vec<C> {
    let n = p.degree();
    let a0 = p.coeffs().iter().find(|c| !c.is_zero()).expect("nonzero");
    let lead = p.lc();
    let e = ((a0.bits() as f64 - lead.bits() as f64) / n as f64).round() as i64;
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let re = num_rational::BigRational::from_float(theta.cos()).unwrap_or_default();
            let im = num_rational::BigRational::from_float(theta.sin()).unwrap_or_default();
            C {
                re: Float::from_rational(&re, 53, Round::Nearest).mul_pow2(e),
                im: Float::from_rational(&im, 53, Round::Nearest).mul_pow2(e),
            }
        })
        .collect()
}

fn exact_ball(z: &C) -> Ball {
    Ball::exact(z.re.clone(), z.im.clone())
}

/// Weierstrass radii `2n|W_i|` as upper bounds, or `None` if some product
/// cannot be bounded away from zero.
fn weierstrass_radii(p: &UPoly, zs: &[C], prec: u64) -> Option<Vec<Float>> {
    let n = zs.len();
    let lc = Ball::from_int(&p.lc());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let zi = exact_ball(&zs[i]);
        let val = Ball::eval_upoly(p, &zi, prec);
        let mut prod = lc.clone();
        for (j, zj) in zs.iter().enumerate() {
            if j != i {
                prod = prod.mul(&zi.sub(&exact_ball(zj), prec), prec);
            }
        }
        let lower = prod.abs_lower();
        if lower.is_zero() {
            return None;
        }
        let w = val.abs_upper().div(&lower, 64, Round::Up);
        out.push(w.mul(&Float::from_int(2 * n as i64), 64, Round::Up));
    }
    Some(out)
}

/// Lower bound on `|a - b|`.
fn dist_lower(a: &C, b: &C) -> Float {
    let d = Ball::exact(a.re.add_exact(&b.re.neg()), a.im.add_exact(&b.im.neg()));
    d.center_abs_lower()
}

/// Non-real roots of `p` as disks `(c, r)` in conjugate pairs
/// `[upper, lower, upper, lower, ...]`, given the number of real roots.
/// The pairs are sorted by the real then imaginary part of their centers.
pub fn isolate_nonreal(p: &UPoly, real_count: usize) -> Vec<Ball> {
    let n = p.degree();
    if n == real_count {
        return Vec::new();
    }
    assert!((n - real_count).is_multiple_of(2), "non-real roots come in pairs");
    let mut zs = initial(p);
    let coeff_bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(1);
    let mut prec: u64 = 64.max(coeff_bits + 32);
    aberth(p, &mut zs, prec, 400);
    loop {
        if let Some(disks) = certify(p, &zs, real_count, prec) {
            return disks;
        }
        prec *= 2;
        assert!(prec < 1 << 22, "complex root isolation did not converge");
        aberth(p, &mut zs, prec, 100);
    }
}

/// Snaps the approximations into a conjugate-symmetric layout and checks
/// the Weierstrass disks.
fn certify(p: &UPoly, zs: &[C], real_count: usize, prec: u64) -> Option<Vec<Ball>> {
    let n = zs.len();
    // the real_count approximations closest to the axis become real
    let mut order: Vec<usize> = (0..n).collect();
    let rel_im = |z: &C| -> i64 {
        if z.im.is_zero() {
            i64::MIN
        } else {
            z.im.magnitude() - z.re.magnitude().max(z.im.magnitude())
        }
    };
    order.sort_by_key(|&i| (rel_im(&zs[i]), zs[i].im.magnitude()));
    let mut reals: Vec<C> = order[..real_count]
        .iter()
        .map(|&i| C {
            re: zs[i].re.clone(),
            im: Float::zero(),
        })
        .collect();
    reals.sort_by(|a, b| a.re.cmp(&b.re));
    let rest: Vec<&C> = order[real_count..].iter().map(|&i| &zs[i]).collect();
    let uppers: Vec<&C> = rest.iter().copied().filter(|z| z.im.signum() > 0).collect();
    if uppers.len() * 2 != rest.len() {
        return None;
    }
    let mut uppers: Vec<C> = uppers.into_iter().cloned().collect();
    uppers.sort_by(|a, b| match a.re.cmp(&b.re) {
        Ordering::Equal => a.im.cmp(&b.im),
        o => o,
    });
    let mut all: Vec<C> = reals.clone();
    for u in &uppers {
        all.push(u.clone());
        all.push(C {
            re: u.re.clone(),
            im: u.im.neg(),
        });
    }
    let radii = weierstrass_radii(p, &all, prec)?;
    for i in 0..n {
        for j in i + 1..n {
            let need = radii[i].add(&radii[j], 64, Round::Up);
            if dist_lower(&all[i], &all[j]) <= need {
                return None;
            }
        }
        if i >= real_count && all[i].im.abs() <= radii[i] {
            return None;
        }
    }
    Some(
        all.into_iter()
            .zip(radii)
            .skip(real_count)
            .map(|(z, r)| Ball {
                re: z.re,
                im: z.im,
                rad: r.mul_pow2(-1),
            })
            .collect(),
    )
}

/// Shrinks the disk `d` (same convention) for a root of `p` until its
/// radius is at most `2^target`. Returns the new disk.
pub fn refine_disk(p: &UPoly, d: &Ball, target: i64) -> Ball {
    let n = p.degree() as i64;
    let dp = p.derivative();
    let mut cur = d.clone();
    let mut extra: u64 = 0;
    while cur.rad.magnitude() > target {
        let mag = cur.re.magnitude().max(cur.im.magnitude()).max(0);
        let bits_now = (mag - cur.rad.magnitude()).max(8) as u64;
        let prec = 2 * bits_now + 64 + extra + p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(1);
        let z = C {
            re: cur.re.clone(),
            im: cur.im.clone(),
        };
        let cs: Vec<Float> = p.coeffs().iter().map(Float::from_bigint).collect();
        let ds: Vec<Float> = dp.coeffs().iter().map(Float::from_bigint).collect();
        let mut z2 = z.clone();
        for _ in 0..2 {
            let pz = horner(&cs, &z2, prec);
            let dz = horner(&ds, &z2, prec);
            match pz.div(&dz, prec) {
                Some(step) => z2 = z2.sub(&step, prec),
                None => break,
            }
        }
        if !cur.im.is_zero() && z2.im.is_zero() {
            z2.im = cur.im.clone();
        }
        if cur.im.is_zero() {
            z2.im = Float::zero();
        }
        let zb = exact_ball(&z2);
        let pv = Ball::eval_upoly(p, &zb, prec);
        let dv = Ball::eval_upoly(&dp, &zb, prec);
        let dl = dv.abs_lower();
        if !dl.is_zero() {
            let r2 = pv
                .abs_upper()
                .div(&dl, 64, Round::Up)
                .mul(&Float::from_int(n), 64, Round::Up);
            // D(z2, 2 r2) inside D(c, 2r)
            let shift = Ball::exact(z2.re.add_exact(&cur.re.neg()), z2.im.add_exact(&cur.im.neg())).center_abs_upper();
            let lhs = shift.add(&r2.mul_pow2(1), 64, Round::Up);
            if lhs <= cur.rad.mul_pow2(1) && r2 < cur.rad {
                cur = Ball {
                    re: z2.re,
                    im: z2.im,
                    rad: r2,
                };
                extra = 0;
                continue;
            }
            if r2.is_zero() && shift <= cur.rad {
                // landed exactly on the root
                cur = Ball {
                    re: z2.re,
                    im: z2.im,
                    rad: Float::zero(),
                };
                break;
            }
        }
        extra = (extra * 2).max(64);
        assert!(extra < 1 << 22, "disk refinement did not converge");
    }
    cur
}
