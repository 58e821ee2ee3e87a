//! Finite residue fields F_p and F_{p^2}, and polynomials over them.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// c0 + c1*w, with c1 = 0 in a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    pub c0: BigInt,
    pub c1: BigInt,
}

/// F_p, or F_p[w]/(w^2 - t*w + n) with an irreducible quadratic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    p: BigInt,
    ext: Option<(BigInt, BigInt)>,
}

const ENUMERATION_LIMIT: u64 = 512;

impl Fq {
    pub fn prime(p: BigInt) -> Self {
        Fq { p, ext: None }
    }

    pub fn quadratic(p: BigInt, t: BigInt, n: BigInt) -> Self {
        let t = t.mod_floor(&p);
        let n = n.mod_floor(&p);
        Fq { p, ext: Some((t, n)) }
    }

    pub fn characteristic(&self) -> &BigInt {
        &self.p
    }

    pub fn degree(&self) -> u32 {
        if self.ext.is_some() {
            2
        } else {
            1
        }
    }

    pub fn size(&self) -> BigInt {
        if self.ext.is_some() {
            &self.p * &self.p
        } else {
            self.p.clone()
        }
    }

    pub fn is_small(&self) -> bool {
        self.size() <= BigInt::from(ENUMERATION_LIMIT)
    }

    pub fn zero(&self) -> Fe {
        Fe { c0: BigInt::zero(), c1: BigInt::zero() }
    }

    pub fn one(&self) -> Fe {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, n: &BigInt) -> Fe {
        Fe { c0: n.mod_floor(&self.p), c1: BigInt::zero() }
    }

    pub fn elem(&self, c0: &BigInt, c1: &BigInt) -> Fe {
        if self.ext.is_none() {
            debug_assert!(c1.is_zero());
        }
        Fe { c0: c0.mod_floor(&self.p), c1: c1.mod_floor(&self.p) }
    }

    pub fn add(&self, x: &Fe, y: &Fe) -> Fe {
        self.elem(&(&x.c0 + &y.c0), &(&x.c1 + &y.c1))
    }

    pub fn sub(&self, x: &Fe, y: &Fe) -> Fe {
        self.elem(&(&x.c0 - &y.c0), &(&x.c1 - &y.c1))
    }

    pub fn neg(&self, x: &Fe) -> Fe {
        self.elem(&-&x.c0, &-&x.c1)
    }

    pub fn mul(&self, x: &Fe, y: &Fe) -> Fe {
        match &self.ext {
            None => self.elem(&(&x.c0 * &y.c0), &BigInt::zero()),
            Some((t, n)) => {
                let bd = &x.c1 * &y.c1;
                self.elem(
                    &(&x.c0 * &y.c0 - &bd * n),
                    &(&x.c0 * &y.c1 + &x.c1 * &y.c0 + &bd * t),
                )
            }
        }
    }

    pub fn is_zero(&self, x: &Fe) -> bool {
        x.c0.is_zero() && x.c1.is_zero()
    }

    pub fn pow(&self, x: &Fe, e: &BigInt) -> Fe {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e.clone();
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if !e.is_zero() {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, x: &Fe) -> Option<Fe> {
        if self.is_zero(x) {
            return None;
        }
        Some(self.pow(x, &(self.size() - 2u32)))
    }

    pub fn div(&self, x: &Fe, y: &Fe) -> Option<Fe> {
        Some(self.mul(x, &self.inv(y)?))
    }

    /// All elements, in a fixed order; only sensible for small fields.
    pub fn elements(&self) -> Vec<Fe> {
        let p = self.p.clone();
        let mut out = Vec::new();
        let mut c1 = BigInt::zero();
        let top = if self.ext.is_some() { p.clone() } else { BigInt::one() };
        while c1 < top {
            let mut c0 = BigInt::zero();
            while c0 < p {
                out.push(Fe { c0: c0.clone(), c1: c1.clone() });
                c0 += 1;
            }
            c1 += 1;
        }
        out
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Fe {
        let c0 = rng.gen_bigint_range(&BigInt::zero(), &self.p);
        let c1 = if self.ext.is_some() {
            rng.gen_bigint_range(&BigInt::zero(), &self.p)
        } else {
            BigInt::zero()
        };
        Fe { c0, c1 }
    }

    pub fn is_square(&self, x: &Fe) -> bool {
        if self.is_zero(x) || self.p == BigInt::from(2) {
            return true;
        }
        self.pow(x, &((self.size() - 1u32) / 2u32)) == self.one()
    }

    fn nonresidue(&self) -> Fe {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        loop {
            let z = self.random(&mut rng);
            if !self.is_zero(&z) && !self.is_square(&z) {
                return z;
            }
        }
    }

    pub fn sqrt(&self, x: &Fe) -> Option<Fe> {
        if self.is_zero(x) {
            return Some(self.zero());
        }
        let q = self.size();
        if self.p == BigInt::from(2) {
            // Frobenius is bijective; its inverse is x -> x^{q/2}.
            return Some(self.pow(x, &(q / 2u32)));
        }
        if !self.is_square(x) {
            return None;
        }
        let mut s = 0u32;
        let mut odd = &q - 1u32;
        while odd.is_even() {
            odd >>= 1;
            s += 1;
        }
        let z = self.nonresidue();
        let mut m = s;
        let mut c = self.pow(&z, &odd);
        let mut t = self.pow(x, &odd);
        let mut r = self.pow(x, &((&odd + 1u32) / 2u32));
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut tt = t.clone();
            while tt != one {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    // ---- polynomials, constant term first ----

    pub fn poly_trim(&self, mut f: Vec<Fe>) -> Vec<Fe> {
        while f.last().is_some_and(|c| self.is_zero(c)) {
            f.pop();
        }
        f
    }

    pub fn poly_eval(&self, f: &[Fe], x: &Fe) -> Fe {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    fn poly_sub(&self, f: &[Fe], g: &[Fe]) -> Vec<Fe> {
        let n = f.len().max(g.len());
        let z = self.zero();
        self.poly_trim(
            (0..n)
                .map(|i| self.sub(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    fn poly_mul(&self, f: &[Fe], g: &[Fe]) -> Vec<Fe> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(a, b));
            }
        }
        self.poly_trim(out)
    }

    /// Division by a nonzero polynomial.
    pub fn poly_divrem(&self, f: &[Fe], g: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
        let g = self.poly_trim(g.to_vec());
        let mut r = self.poly_trim(f.to_vec());
        assert!(!g.is_empty(), "division by the zero polynomial");
        if r.len() < g.len() {
            return (Vec::new(), r);
        }
        let li = self.inv(g.last().unwrap()).unwrap();
        let mut q = vec![self.zero(); r.len() - g.len() + 1];
        while r.len() >= g.len() {
            let shift = r.len() - g.len();
            let t = self.mul(r.last().unwrap(), &li);
            for (j, c) in g.iter().enumerate() {
                r[shift + j] = self.sub(&r[shift + j], &self.mul(&t, c));
            }
            q[shift] = t;
            r = self.poly_trim(r);
        }
        (self.poly_trim(q), r)
    }

    pub fn poly_gcd(&self, f: &[Fe], g: &[Fe]) -> Vec<Fe> {
        let mut a = self.poly_trim(f.to_vec());
        let mut b = self.poly_trim(g.to_vec());
        while !b.is_empty() {
            let (_, r) = self.poly_divrem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(l) = a.last() {
            let li = self.inv(l).unwrap();
            a = a.iter().map(|c| self.mul(c, &li)).collect();
        }
        a
    }

    fn poly_powmod(&self, base: &[Fe], e: &BigInt, m: &[Fe]) -> Vec<Fe> {
        let mut acc = vec![self.one()];
        let mut b = self.poly_divrem(base, m).1;
        let mut e = e.clone();
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.poly_divrem(&self.poly_mul(&acc, &b), m).1;
            }
            e >>= 1;
            if !e.is_zero() {
                b = self.poly_divrem(&self.poly_mul(&b, &b), m).1;
            }
        }
        acc
    }

    /// Multiplicity of r as a root of a nonzero f.
    pub fn root_multiplicity(&self, f: &[Fe], r: &Fe) -> usize {
        let lin = vec![self.neg(r), self.one()];
        let mut f = self.poly_trim(f.to_vec());
        let mut m = 0;
        while !f.is_empty() && self.is_zero(&self.poly_eval(&f, r)) {
            f = self.poly_divrem(&f, &lin).0;
            m += 1;
        }
        m
    }

    /// Distinct roots of a nonzero polynomial, sorted.
    pub fn roots(&self, f: &[Fe]) -> Vec<Fe> {
        let f = self.poly_trim(f.to_vec());
        assert!(!f.is_empty(), "roots of the zero polynomial");
        let mut out = if self.is_small() {
            self.elements()
                .into_iter()
                .filter(|x| self.is_zero(&self.poly_eval(&f, x)))
                .collect()
        } else {
            let x = vec![self.zero(), self.one()];
            let xq = self.poly_powmod(&x, &self.size(), &f);
            let g = self.poly_gcd(&f, &self.poly_sub(&xq, &x));
            let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
            let mut out = Vec::new();
            self.split_linear(g, &mut rng, &mut out);
            out
        };
        out.sort();
        out
    }

    // g is monic, squarefree, and a product of distinct linear factors (odd q).
    fn split_linear(&self, g: Vec<Fe>, rng: &mut ChaCha8Rng, out: &mut Vec<Fe>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.neg(&g[0])),
            _ => {
                let e = (self.size() - 1u32) / 2u32;
                loop {
                    let a = self.random(rng);
                    let base = vec![a, self.one()];
                    let h = self.poly_powmod(&base, &e, &g);
                    let h = self.poly_sub(&h, &[self.one()]);
                    let d = self.poly_gcd(&g, &h);
                    if d.len() > 1 && d.len() < g.len() {
                        let other = self.poly_divrem(&g, &d).0;
                        let li = self.inv(other.last().unwrap()).unwrap();
                        let other = other.iter().map(|c| self.mul(c, &li)).collect();
                        self.split_linear(d, rng, out);
                        self.split_linear(other, rng, out);
                        return;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn sqrt_in_prime_and_quadratic_fields() {
        let f = Fq::prime(b(13));
        for x in f.elements() {
            let sq = f.mul(&x, &x);
            let r = f.sqrt(&sq).unwrap();
            assert_eq!(f.mul(&r, &r), sq);
        }
        // F_9 = F_3[w]/(w^2 + 1)
        let f9 = Fq::quadratic(b(3), b(0), b(1));
        assert_eq!(f9.elements().len(), 9);
        let squares = f9.elements().iter().filter(|x| f9.is_square(x)).count();
        assert_eq!(squares, 5);
        for x in f9.elements() {
            let sq = f9.mul(&x, &x);
            let r = f9.sqrt(&sq).unwrap();
            assert_eq!(f9.mul(&r, &r), sq);
        }
        // F_4 = F_2[w]/(w^2 + w + 1)
        let f4 = Fq::quadratic(b(2), b(1), b(1));
        for x in f4.elements() {
            let r = f4.sqrt(&x).unwrap();
            assert_eq!(f4.mul(&r, &r), x);
            if !f4.is_zero(&x) {
                assert_eq!(f4.mul(&x, &f4.inv(&x).unwrap()), f4.one());
            }
        }
    }

    #[test]
    fn roots_large_prime() {
        let p = b(1_000_003);
        let f = Fq::prime(p.clone());
        // (x - 5)^2 (x + 7) (x^2 + 1 has no roots when p = 3 mod 4)
        let lin = |r: i64| vec![f.from_int(&b(-r)), f.one()];
        let mut poly = f.poly_mul(&lin(5), &lin(5));
        poly = f.poly_mul(&poly, &lin(-7));
        poly = f.poly_mul(&poly, &[f.one(), f.zero(), f.one()]);
        let roots = f.roots(&poly);
        assert_eq!(roots, vec![f.from_int(&b(5)), f.from_int(&b(-7))]);
        assert_eq!(f.root_multiplicity(&poly, &f.from_int(&b(5))), 2);
    }
}
