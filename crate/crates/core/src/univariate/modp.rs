//! Polynomials over a small prime field, lowest degree first.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

pub(crate) type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 62));
        Fp { p }
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn sub_mod(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_mod(r, a);
            }
            a = self.mul_mod(a, a);
            e >>= 1;
        }
        r
    }

    pub fn trim(a: &mut FpPoly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut out: FpPoly = (0..n)
            .map(|i| self.sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let p = self.p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p;
            }
        }
        let mut out: FpPoly = acc.into_iter().map(|v| v as u64).collect();
        Self::trim(&mut out);
        out
    }

    pub fn scale(&self, a: &[u64], c: u64) -> FpPoly {
        let mut out: FpPoly = a.iter().map(|&x| self.mul_mod(x, c)).collect();
        Self::trim(&mut out);
        out
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty());
        let mut r = a.to_vec();
        Self::trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = self.mul_mod(r[dr], inv);
            if c != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    r[i + dr - db] = self.sub_mod(r[i + dr - db], self.mul_mod(bc, c));
                }
                q[dr - db] = c;
            }
            r.pop();
        }
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        Self::trim(&mut r0);
        Self::trim(&mut r1);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let inv = self.inv(*r0.last().unwrap());
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        let mut out: FpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul_mod(c, i as u64 % self.p))
            .collect();
        Self::trim(&mut out);
        out
    }

    fn powmod_big(&self, base: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut result: FpPoly = vec![1];
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        result
    }

    fn powmod(&self, base: &[u64], e: u64, m: &[u64]) -> FpPoly {
        self.powmod_big(base, &BigUint::from(e), m)
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs `(d, g_d)` where `g_d` is the product of all degree-`d` factors.
    pub fn ddf(&self, f: &[u64]) -> Vec<(usize, FpPoly)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: FpPoly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push((f.len() - 1, f.clone()));
                break;
            }
            h = self.powmod(&h, self.p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((d, g));
            }
        }
        out
    }

    /// Splits a product of distinct degree-`d` monic factors (odd `p`).
    pub fn edf(&self, f: &[u64], d: usize, rng: &mut impl Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            Self::trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod_big(&a, &e, f);
            let g = self.gcd(&self.sub(&b, &[1]), f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    pub fn is_square_free(&self, f: &[u64]) -> bool {
        let df = self.derivative(f);
        if df.is_empty() {
            return false;
        }
        self.gcd(f, &df).len() == 1
    }

    pub fn residue(&self, c: &num_bigint::BigInt) -> u64 {
        let p = num_bigint::BigInt::from(self.p);
        let r = ((c % &p) + &p) % &p;
        r.try_into().expect("reduced residue fits")
    }

    pub fn reduce(&self, cs: &[num_bigint::BigInt]) -> FpPoly {
        let mut out: FpPoly = cs.iter().map(|c| self.residue(c)).collect();
        Self::trim(&mut out);
        out
    }
}
