use num_bigint::BigInt;

use super::*;
use crate::quadfield::principal_generator;
use crate::weier::quadratic_twist;

const Q: FieldSpec = FieldSpec::Rational;

fn k(f: FieldSpec, a: i64, b: i64) -> KElement {
    KElement::from_ints(f, a, b)
}

fn ideal_identity_holds(rep: &ModelReport) -> bool {
    let g = rep.genus() as i64;
    let lhs = FractionalIdeal::principal(&rep.input.discriminant().unwrap()).unwrap();
    let rhs = rep
        .ideal_b
        .pow(4 * (2 * g + 1))
        .mul(&rep.ideal_a.pow(-2 * (g + 1) * (2 * g + 1)))
        .mul(&rep.delta);
    lhs == rhs
}

#[test]
fn bad_prime_candidates() {
    let e = WeierstrassEq::from_ints(Q, 2, &[1, 0, 0, 0, 0, 1], &[]).unwrap();
    let ps: Vec<BigInt> = bad_primes(&e).unwrap().iter().map(|p| p.p().clone()).collect();
    assert_eq!(ps, vec![BigInt::from(2), BigInt::from(5)]);
    let rep = assemble(&e, false).unwrap();
    assert_eq!(rep.delta, FractionalIdeal::principal(&KElement::from_int(Q, 800_000)).unwrap());
    let e = WeierstrassEq::from_ints(Q, 1, &[0, 0, 0, 1], &[1]).unwrap();
    let rep = assemble(&e, false).unwrap();
    assert_eq!(rep.local.len(), 1);
    assert_eq!(rep.local[0].v_delta, 3);
    // 37a has unit discriminant away from 37 only.
    let e = WeierstrassEq::from_ints(Q, 1, &[0, -1, 0, 1], &[1]).unwrap();
    assert_eq!(bad_primes(&e).unwrap().len(), 1);
}

#[test]
fn pointed_rescaled_quintic() {
    let big = 59049;
    let e = WeierstrassEq::new_pointed(Q, 2, Poly::from_ints(Q, &[big, 0, 0, 0, 0, 1]), Poly::zero(Q)).unwrap();
    let rep = assemble(&e, true).unwrap();
    assert!(ideal_identity_holds(&rep));
    let three = rep.local.iter().find(|l| *l.prime.p() == BigInt::from(3)).unwrap();
    assert_eq!((three.va, three.vb, three.v_delta), (2, 5, 0));
    assert_eq!(rep.ideal_u.as_ref().unwrap().norm(), crate::rat::Rat::new(1.into(), 3.into()));
    let s = synthesize(&rep, &SynthOptions::default()).unwrap();
    assert_eq!(s.equation.p(), &Poly::from_ints(Q, &[1, 0, 0, 0, 0, 1]));
    assert!(s.equation.is_pointed());
}

#[test]
fn unit_discriminant_is_trivial() {
    let f = FieldSpec::imquad(-5).unwrap();
    let e = WeierstrassEq::from_ints(f, 1, &[0, -1, 0, 1], &[1]).unwrap();
    let rep = assemble(&e, false).unwrap();
    let cg = rep.class_group();
    assert_eq!(rep.class_w, cg.identity());
    assert!(rep.verdicts.exists_integral_eq);
    let s = synthesize(&rep, &SynthOptions::default()).unwrap();
    assert_eq!(s.equation.discriminant().unwrap().norm(), crate::rat::int(37 * 37));
}

#[test]
fn w_class_obstruction_over_sqrt_minus_5() {
    let f = FieldSpec::imquad(-5).unwrap();
    let base = WeierstrassEq::new_pointed(f, 1, Poly::from_ints(f, &[1, 0, 0, 1]), Poly::zero(f)).unwrap();
    let e = quadratic_twist(&base, &KElement::from_int(f, 2)).unwrap();
    let rep = assemble(&e, true).unwrap();
    assert!(ideal_identity_holds(&rep));
    let cg = rep.class_group();
    assert_ne!(rep.class_w, cg.identity());
    assert_eq!(pointed_class(&rep).unwrap(), Some(rep.class_w.clone()));
    assert!(rep.verdicts.z_is_p1);
    assert!(!rep.verdicts.exists_integral_eq);
    assert_eq!(synthesize(&rep, &SynthOptions::default()).unwrap_err(), Error::ObstructionWClass);
    // Without the point the class is the same.
    let plain = assemble(&e, false).unwrap();
    assert_eq!(plain.class_w, rep.class_w);
}

#[test]
fn synthesis_through_a_change_of_section() {
    // Twisting by 1 + omega, a generator of p_2^3 in Q(sqrt -23), leaves [u] of order 3.
    let f = FieldSpec::imquad(-23).unwrap();
    let base = WeierstrassEq::new_pointed(f, 3, Poly::from_ints(f, &[1, 0, 0, 0, 0, 0, 0, 1]), Poly::zero(f)).unwrap();
    let e = quadratic_twist(&base, &k(f, 1, 1)).unwrap();
    let rep = assemble(&e, true).unwrap();
    let cg = rep.class_group();
    assert_ne!(rep.class_u.clone().unwrap(), cg.identity());
    assert!(principal_generator(rep.ideal_u.as_ref().unwrap()).is_none());
    assert!(rep.verdicts.exists_integral_eq);
    let s = synthesize(&rep, &SynthOptions::default()).unwrap();
    assert!(s.equation.p().coeffs().iter().all(|c| c.is_integral()));
    let d = FractionalIdeal::principal(&s.equation.discriminant().unwrap()).unwrap();
    assert_eq!(d, rep.delta);
    assert_eq!(s.transform.apply(&e).unwrap(), s.equation);
}

#[test]
fn unit_discriminant_examples() {
    let e = WeierstrassEq::from_ints(Q, 1, &[0, 0, 0, 1], &[1]).unwrap();
    assert!(!unit_discriminant_check(&e).unwrap());
    let f = FieldSpec::imquad(-23).unwrap();
    // A unit-discriminant genus 2 curve: rescale a good model so the input is not integral.
    let e0 = WeierstrassEq::from_ints(f, 1, &[0, -1, 0, 1], &[1]).unwrap();
    assert!(!unit_discriminant_check(&e0).unwrap());
}
