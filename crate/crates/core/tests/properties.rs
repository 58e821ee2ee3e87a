use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperweier::corpus::{random_equation, random_pointed};
use hyperweier::exactpoly::{Mat2, Poly};
use hyperweier::globalmodel::assemble;
use hyperweier::json::{curve_to_json, parse_curve, to_line, with_schema};
use hyperweier::localmin::{minimize_at, minimize_pointed_at, LocalChange};
use hyperweier::quadfield::{primes_above, ClassGroup, FieldSpec, KElement};
use hyperweier::weier::{quadratic_twist, EqTransform};

fn field_of(i: u8) -> FieldSpec {
    match i % 3 {
        0 => FieldSpec::Rational,
        1 => FieldSpec::imquad(-5).unwrap(),
        _ => FieldSpec::imquad(-23).unwrap(),
    }
}

fn elem(rng: &mut ChaCha8Rng, field: FieldSpec, bound: i64) -> KElement {
    let a = rng.gen_range(-bound..=bound);
    let b = if field.is_rational() { 0 } else { rng.gen_range(-bound..=bound) };
    KElement::from_ints(field, a, b)
}

fn transform(rng: &mut ChaCha8Rng, field: FieldSpec, g: usize) -> EqTransform {
    loop {
        let m = Mat2::new(elem(rng, field, 2), elem(rng, field, 2), elem(rng, field, 2), elem(rng, field, 2));
        let e = elem(rng, field, 2);
        if m.det().is_zero() || e.is_zero() {
            continue;
        }
        let h = Poly::new(field, (0..g + 2).map(|_| elem(rng, field, 2)).collect());
        return EqTransform::new(g, m, e, h).unwrap();
    }
}

/// Determinant one and e = 1 over the integers: preserves integrality and the ideals.
fn unimodular(rng: &mut ChaCha8Rng, field: FieldSpec, g: usize) -> EqTransform {
    let t = elem(rng, field, 2);
    let s = elem(rng, field, 2);
    let one = KElement::one(field);
    let zero = KElement::zero(field);
    let upper = Mat2::new(one.clone(), t, zero.clone(), one.clone());
    let lower = Mat2::new(one.clone(), zero, s, one.clone());
    let h = Poly::new(field, (0..g + 2).map(|_| elem(rng, field, 1)).collect());
    let a = EqTransform::new(g, upper, one.clone(), h).unwrap();
    let b = EqTransform::new(g, lower, one, Poly::zero(field)).unwrap();
    a.compose(&b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transforms_form_a_group_action(seed in any::<u64>(), fi in 0u8..3, g in 1usize..4) {
        let field = field_of(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_equation(&mut rng, field, g);
        let t1 = transform(&mut rng, field, g);
        let t2 = transform(&mut rng, field, g);
        let lhs = t1.compose(&t2).apply(&e).unwrap();
        let rhs = t1.apply(&t2.apply(&e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(t1.inverse().apply(&t1.apply(&e).unwrap()).unwrap(), e.clone());
        prop_assert_eq!(t1.compose(&t1.inverse()), EqTransform::identity(g, field));
    }

    #[test]
    fn discriminant_law(seed in any::<u64>(), fi in 0u8..3, g in 1usize..4) {
        let field = field_of(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_equation(&mut rng, field, g);
        let t = transform(&mut rng, field, g);
        let d = &t.discriminant_factor() * &e.discriminant().unwrap();
        prop_assert_eq!(t.apply(&e).unwrap().discriminant().unwrap(), d);
    }

    #[test]
    fn twisting_twice_is_a_rescaling(seed in any::<u64>(), fi in 0u8..3, g in 1usize..4) {
        let field = field_of(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_pointed(&mut rng, field, g);
        let delta = loop {
            let d = elem(&mut rng, field, 3);
            if !d.is_zero() {
                break d;
            }
        };
        let twice = quadratic_twist(&quadratic_twist(&e, &delta).unwrap(), &delta).unwrap();
        let gi = g as i64;
        let scaled = LocalChange {
            a: delta.pow(-2),
            r: KElement::zero(field),
            b: delta.pow(-(2 * gi + 1)),
            h: Poly::zero(field),
        }
        .apply(&e);
        prop_assert_eq!(twice.p(), scaled.p());
        prop_assert!(twice.q().is_zero());
    }

    #[test]
    fn local_valuation_law(seed in any::<u64>(), fi in 0u8..3, g in 1usize..3, p in prop::sample::select(vec![2i64, 3, 5])) {
        let field = field_of(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_equation(&mut rng, field, g);
        let prime = primes_above(field, &p.into()).remove(0);
        let lm = minimize_at(&e, &prime).unwrap();
        let gi = g as i64;
        let v_in = prime.valuation(&e.discriminant().unwrap());
        prop_assert!(lm.v_delta >= 0 && lm.v_delta <= v_in);
        prop_assert_eq!(v_in, 4 * (2 * gi + 1) * lm.vb - 2 * (gi + 1) * (2 * gi + 1) * lm.va + lm.v_delta);
        prop_assert_eq!((v_in - lm.v_delta) % (2 * (2 * gi + 1)), 0);
        let again = minimize_at(&lm.equation, &prime).unwrap();
        prop_assert_eq!(again.change, LocalChange::identity(field));
    }

    #[test]
    fn pointed_minimum_bounds_the_minimum(seed in any::<u64>(), fi in 0u8..3, g in 1usize..3, p in prop::sample::select(vec![2i64, 3, 5])) {
        let field = field_of(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_pointed(&mut rng, field, g);
        let prime = primes_above(field, &p.into()).remove(0);
        let pointed = minimize_pointed_at(&e, &prime).unwrap();
        let any = minimize_at(&e, &prime).unwrap();
        prop_assert!(any.v_delta <= pointed.v_delta);
        prop_assert_eq!((2 * g as i64 + 1) * pointed.va, 2 * pointed.vb);
    }

    #[test]
    fn class_group_axioms(d in prop::sample::select(vec![-5i64, -14, -21, -23, -26, -30, -47, -65, -71, -105])) {
        let cg = ClassGroup::new(FieldSpec::imquad(d).unwrap());
        let id = cg.identity();
        let forms = cg.forms().to_vec();
        for f in &forms {
            prop_assert_eq!(cg.compose(f, &id), f.clone());
            prop_assert_eq!(cg.compose(f, &cg.inverse(f)), id.clone());
            prop_assert_eq!(cg.class_of(&cg.ideal_of(f)), f.clone());
            for g in &forms {
                prop_assert_eq!(cg.compose(f, g), cg.compose(g, f));
            }
        }
    }

    #[test]
    fn curve_json_round_trips(seed in any::<u64>(), fi in 0u8..3, g in 1usize..4, pointed in any::<bool>()) {
        let field = field_of(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = if pointed { random_pointed(&mut rng, field, g) } else { random_equation(&mut rng, field, g) };
        let s = to_line(&with_schema(curve_to_json(&e)));
        prop_assert_eq!(parse_curve(&s).unwrap().equation, e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn classes_are_transform_invariant(seed in any::<u64>(), g in 1usize..3) {
        let field = FieldSpec::imquad(-5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_equation(&mut rng, field, g);
        let t = unimodular(&mut rng, field, g);
        let e2 = t.apply(&e).unwrap();
        let (r1, r2) = (assemble(&e, false).unwrap(), assemble(&e2, false).unwrap());
        prop_assert_eq!(&r1.delta, &r2.delta);
        prop_assert_eq!(&r1.class_w, &r2.class_w);
        prop_assert_eq!(&r1.class_det_omega, &r2.class_det_omega);
        prop_assert_eq!(r1.verdicts, r2.verdicts);
    }
}
