//! Approximation theorem for finitely many primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quadfield::factor::factor;
use crate::quadfield::ideal::{coords, from_coords, hnf2_tracked, FractionalIdeal};
use crate::quadfield::prime::{primes_above, PrimeIdeal};
use crate::quadfield::{FieldSpec, KElement};
use crate::rat::Rat;

/// A congruence target: v_p(r - value) >= precision.
#[derive(Debug, Clone)]
pub struct Target {
    pub prime: PrimeIdeal,
    pub value: KElement,
    pub precision: i64,
}

/// Find r in K with v_p(r - value_p) >= precision_p for every target and r
/// integral at every other prime.
pub fn crt_approximate(field: FieldSpec, targets: &[Target]) -> Result<KElement> {
    for (i, t) in targets.iter().enumerate() {
        if targets[..i].iter().any(|s| s.prime == t.prime) {
            return Err(Error::DuplicatePrime);
        }
    }
    let mut m = BigInt::one();
    for t in targets {
        m = m.lcm(&t.value.denominator());
    }
    let mr = Rat::from_integer(m.clone());
    let mut congruences: Vec<(PrimeIdeal, KElement, i64)> = Vec::new();
    for t in targets {
        let k = t.precision + t.prime.valuation_rat(&mr);
        if k > 0 {
            congruences.push((t.prime.clone(), t.value.scale(&mr).with_field(field), k));
        }
    }
    if !m.is_one() {
        for (p, _) in factor(&m)? {
            for q in primes_above(field, &p) {
                if targets.iter().any(|t| t.prime == q) {
                    continue;
                }
                let k = q.valuation_rat(&mr);
                congruences.push((q, KElement::zero(field), k));
            }
        }
    }
    let r = crt_integral(field, &congruences)?;
    Ok(r.scale(&(Rat::one() / mr)))
}

/// R in O_K with R = value_i mod p_i^{k_i}, for integral values and distinct primes.
fn crt_integral(field: FieldSpec, cs: &[(PrimeIdeal, KElement, i64)]) -> Result<KElement> {
    if cs.is_empty() {
        return Ok(KElement::zero(field));
    }
    let moduli: Vec<FractionalIdeal> = cs.iter().map(|(p, _, k)| p.ideal().pow(*k)).collect();
    let total = moduli
        .iter()
        .fold(FractionalIdeal::unit(field), |acc, m| acc.mul(m));
    let mut r = KElement::zero(field);
    for (i, (_, value, _)) in cs.iter().enumerate() {
        let others = total.div(&moduli[i]);
        let e = idempotent(field, &moduli[i], &others)?;
        r = &r + &(value * &e);
    }
    Ok(reduce_mod(&r, &total))
}

/// e in b with 1 - e in a, for coprime integral a, b.
pub(crate) fn idempotent(field: FieldSpec, a: &FractionalIdeal, b: &FractionalIdeal) -> Result<KElement> {
    if field.is_rational() {
        let (x, y) = (a.hnf().0.clone(), b.hnf().0.clone());
        let g = x.extended_gcd(&y);
        if !g.gcd.is_one() {
            return Err(Error::Precondition("moduli not coprime".into()));
        }
        return Ok(KElement::from_int(field, &g.y * &y));
    }
    let (a1, a2) = a.integral_basis();
    let (b1, b2) = b.integral_basis();
    let gens = [coords(&a1), coords(&a2), coords(&b1), coords(&b2)];
    let (av, bv, ac, _) = hnf2_tracked(&gens).ok_or(Error::ZeroIdeal)?;
    // The sum lattice must be all of O_K.
    if !(av.0.is_one() && bv.1.is_one()) {
        return Err(Error::Precondition("moduli not coprime".into()));
    }
    // (1, 0) = av, so the b-part of its combination is the idempotent.
    let e = (&ac[2] * &b1.a().to_integer() + &ac[3] * &b2.a().to_integer(),
             &ac[2] * &b1.b().to_integer() + &ac[3] * &b2.b().to_integer());
    Ok(from_coords(field, &e))
}

/// A small representative of x modulo an integral ideal.
fn reduce_mod(x: &KElement, m: &FractionalIdeal) -> KElement {
    let field = x.field();
    let (a, b, c) = m.hnf();
    let (mut u, mut v) = coords(x);
    if !field.is_rational() {
        let k = v.div_floor(c);
        u -= &k * b;
        v -= &k * c;
    }
    u = u.mod_floor(a);
    if &u * 2 > *a {
        u -= a;
    }
    if v.is_zero() {
        KElement::from_int(field, u)
    } else {
        from_coords(field, &(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meets_all_targets() {
        for d in [-1i64, -5, -23] {
            let k = FieldSpec::imquad(d).unwrap();
            let mut targets = Vec::new();
            let mut vals = vec![
                KElement::from_ints(k, 3, 1),
                KElement::new(k, Rat::new(1.into(), 2.into()), Rat::from_integer(5.into())),
                KElement::from_ints(k, -7, 2),
            ];
            for (i, p) in [2, 3, 5].iter().enumerate() {
                let q = primes_above(k, &BigInt::from(*p))[0].clone();
                targets.push(Target { prime: q, value: vals.remove(0), precision: 3 + i as i64 });
            }
            let r = crt_approximate(k, &targets).unwrap();
            for t in &targets {
                assert!(t.prime.valuation(&(&r - &t.value)) >= t.precision, "{d} {}", t.prime);
            }
            for p in [2, 3, 5, 7] {
                for q in primes_above(k, &BigInt::from(p)) {
                    if !targets.iter().any(|t| t.prime == q) {
                        assert!(q.valuation(&r) >= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn rational_case() {
        let q = FieldSpec::Rational;
        let t = |p: i64, v: Rat, k| Target {
            prime: primes_above(q, &BigInt::from(p))[0].clone(),
            value: KElement::from_rat(q, v),
            precision: k,
        };
        let targets = [t(2, Rat::new(1.into(), 3.into()), 4), t(3, Rat::new(1.into(), 2.into()), 2)];
        let r = crt_approximate(q, &targets).unwrap();
        for x in &targets {
            assert!(x.prime.valuation(&(&r - &x.value)) >= x.precision);
        }
    }
}
