//! Integrality and normality of an equation at a prime, for a fixed x-coordinate.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::quadfield::{Fe, KElement, PrimeIdeal, INFINITE_VALUATION};
use crate::weier::WeierstrassEq;

pub(crate) fn reduce_poly(prime: &PrimeIdeal, f: &Poly) -> Result<Vec<Fe>> {
    let k = prime.residue_field();
    let v: Result<Vec<Fe>> = f.coeffs().iter().map(|c| prime.reduce(c)).collect();
    Ok(k.poly_trim(v?))
}

pub(crate) fn is_integral_at(eq: &WeierstrassEq, prime: &PrimeIdeal) -> bool {
    prime.valuation_poly(eq.p()) >= 0 && prime.valuation_poly(eq.q()) >= 0
}

fn is_char2(prime: &PrimeIdeal) -> bool {
    *prime.p() == BigInt::from(2)
}

/// Reducedness of the special fiber of an integral equation.
pub(crate) fn fiber_reduced(eq: &WeierstrassEq, prime: &PrimeIdeal) -> Result<bool> {
    if is_char2(prime) {
        if !reduce_poly(prime, eq.q())?.is_empty() {
            return Ok(true);
        }
        // Over a perfect field of characteristic 2, P is a square iff its odd part vanishes.
        let pb = reduce_poly(prime, eq.p())?;
        let k = prime.residue_field();
        Ok(pb.iter().enumerate().any(|(i, c)| i % 2 == 1 && !k.is_zero(c)))
    } else {
        Ok(!reduce_poly(prime, &eq.f_poly())?.is_empty())
    }
}

/// Whether the fiber at the prime is reduced on both charts.
pub fn is_normal_at(eq: &WeierstrassEq, prime: &PrimeIdeal) -> Result<bool> {
    if !is_integral_at(eq, prime) {
        return Err(Error::NonIntegralInput);
    }
    // Reducedness is decided at the generic point of the fiber, which both charts contain.
    fiber_reduced(eq, prime)
}

/// Substitute y = c y' + h(x).
pub(crate) fn shift_scale_y(eq: &WeierstrassEq, c: &KElement, h: &Poly) -> WeierstrassEq {
    let field = eq.field();
    let two = KElement::from_int(field, 2);
    let q = eq.q().add(&h.scale(&two));
    let p = eq.p().sub(&h.mul(h)).sub(&eq.q().mul(h));
    let ci = c.inv().expect("nonzero scale");
    let q = q.scale(&ci);
    let p = p.scale(&(&ci * &ci));
    WeierstrassEq::new(field, eq.genus(), p, q).expect("degrees preserved")
}

/// Output of y-normalization: the equation in y' where y = b y' + h(x).
#[derive(Debug, Clone)]
pub(crate) struct YNormal {
    pub eq: WeierstrassEq,
    pub b: KElement,
    pub h: Poly,
    pub k: i64,
}

fn shift_candidate(eq: &WeierstrassEq, prime: &PrimeIdeal) -> Result<Poly> {
    let field = eq.field();
    if !is_char2(prime) {
        return Ok(eq.q().scale(&KElement::from_rat(field, crate::rat::Rat::new((-1).into(), 2.into()))));
    }
    let k = prime.residue_field();
    let pb = reduce_poly(prime, eq.p())?;
    let g = eq.genus();
    let mut coeffs = Vec::with_capacity(g + 2);
    for j in 0..=(g + 1) {
        let c = pb.get(2 * j).cloned().unwrap_or_else(|| k.zero());
        let s = k.sqrt(&c).expect("square roots exist in characteristic 2");
        coeffs.push(prime.lift(&s));
    }
    Ok(Poly::new(field, coeffs))
}

/// Make the equation integral and normal by changing y only.
pub(crate) fn normalize_y(eq: &WeierstrassEq, prime: &PrimeIdeal) -> Result<YNormal> {
    let field = eq.field();
    let pi = prime.uniformizer();
    let vq = prime.valuation_poly(eq.q());
    let vp = prime.valuation_poly(eq.p());
    if vp == INFINITE_VALUATION && vq == INFINITE_VALUATION {
        return Err(Error::SingularGenericFiber);
    }
    let k0 = vq.min(vp.div_euclid(2));
    let mut b = pi.pow(k0);
    let mut cur = shift_scale_y(eq, &b, &Poly::zero(field));
    let mut h = Poly::zero(field);
    let mut k = k0;
    loop {
        if fiber_reduced(&cur, prime)? {
            break;
        }
        let hs = shift_candidate(&cur, prime)?;
        let shifted = shift_scale_y(&cur, &KElement::one(field), &hs);
        if prime.valuation_poly(shifted.q()) >= 1 && prime.valuation_poly(shifted.p()) >= 2 {
            cur = shift_scale_y(&shifted, &pi, &Poly::zero(field));
            h = h.add(&hs.scale(&b));
            b = &b * &pi;
            k += 1;
        } else {
            break;
        }
    }
    Ok(YNormal { eq: cur, b, h, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{primes_above, FieldSpec};

    const Q: FieldSpec = FieldSpec::Rational;

    fn prime(p: i64) -> PrimeIdeal {
        primes_above(Q, &BigInt::from(p))[0].clone()
    }

    #[test]
    fn normality_examples() {
        let e = WeierstrassEq::from_ints(Q, 2, &[1, 0, 0, 0, 0, 1], &[]).unwrap();
        assert!(is_normal_at(&e, &prime(7)).unwrap());
        let e = WeierstrassEq::from_ints(Q, 2, &[7, 0, 0, 0, 0, 7], &[]).unwrap();
        assert!(!is_normal_at(&e, &prime(7)).unwrap());
        let e = WeierstrassEq::from_ints(Q, 2, &[0, 0, 0, 0, 0, 1], &[1]).unwrap();
        assert!(is_normal_at(&e, &prime(2)).unwrap());
        let e = WeierstrassEq::new(
            Q,
            1,
            Poly::new(Q, vec![KElement::from_rat(Q, crate::rat::Rat::new(1.into(), 2.into()))]),
            Poly::zero(Q),
        )
        .unwrap();
        assert_eq!(is_normal_at(&e, &prime(2)), Err(Error::NonIntegralInput));
    }

    #[test]
    fn y_normalization_in_char_2() {
        // Hide a scaling and a shift; normalization must undo both.
        let base = WeierstrassEq::from_ints(Q, 1, &[1, 1, 0, 1], &[1]).unwrap();
        let half = KElement::from_rat(Q, crate::rat::Rat::new(1.into(), 2.into()));
        let hidden = shift_scale_y(&base, &half, &Poly::from_ints(Q, &[0, 3]));
        let n = normalize_y(&hidden, &prime(2)).unwrap();
        assert_eq!(n.k, 1);
        assert!(fiber_reduced(&n.eq, &prime(2)).unwrap());
        assert_eq!(
            n.eq.discriminant().unwrap(),
            base.discriminant().unwrap()
        );
    }
}
