//! Rational integer factorization: trial division, Miller-Rabin, Pollard-Brent rho.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 20_000;
const RHO_ITERATIONS: u64 = 4_000_000;

pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho(n: &BigInt, c: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128u64;
    let mut iters = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (&q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        iters += r;
        if iters > RHO_ITERATIONS {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_into(n: BigInt, out: &mut BTreeMap<BigInt, u32>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    for c in 1..20u64 {
        if let Some(d) = rho(&n, c) {
            let other = &n / &d;
            split_into(d, out)?;
            return split_into(other, out);
        }
    }
    Err(Error::FactorizationFailed(n.to_string()))
}

/// Prime factorization of |n| (n != 0), sorted by prime.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Precondition("cannot factor 0".into()));
    }
    let mut n = n.abs();
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        split_into(n, &mut out)?;
    }
    Ok(out.into_iter().collect())
}

/// v_p(n) for n != 0.
pub fn valuation_int(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Kronecker symbol (D | p) for a prime p.
pub fn kronecker(d: i64, p: &BigInt) -> i32 {
    if *p == BigInt::from(2) {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let dm = BigInt::from(d).mod_floor(p);
    if dm.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if dm.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_products() {
        let n = BigInt::from(2u64.pow(8) * 3125);
        assert_eq!(
            factor(&n).unwrap(),
            vec![(BigInt::from(2), 8), (BigInt::from(5), 5)]
        );
        let big = BigInt::from(1_000_003u64) * BigInt::from(999_983u64) * BigInt::from(7);
        let f = factor(&big).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|(p, e)| is_prime(p) && *e == 1));
    }

    #[test]
    fn kronecker_symbols() {
        assert_eq!(kronecker(-4, &BigInt::from(5)), 1);
        assert_eq!(kronecker(-4, &BigInt::from(3)), -1);
        assert_eq!(kronecker(-4, &BigInt::from(2)), 0);
        assert_eq!(kronecker(-23, &BigInt::from(2)), 1);
    }
}
