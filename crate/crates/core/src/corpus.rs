//! Reproducible test curves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::exactpoly::Poly;
use crate::json::{curve_to_json, with_schema};
use crate::localmin::LocalChange;
use crate::quadfield::{primes_above, FieldSpec, KElement};
use crate::weier::{power_cover, quadratic_twist, WeierstrassEq};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Random,
    RandomPointed,
    Twist,
    Cover,
    Rescaled,
    WClass,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::RandomPointed => "random_pointed",
            Family::Twist => "twist",
            Family::Cover => "cover",
            Family::Rescaled => "rescaled",
            Family::WClass => "w_class",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub family: Family,
    pub curve: WeierstrassEq,
}

/// How many curves of each family to draw per field.
#[derive(Debug, Clone, Copy)]
pub struct Counts {
    pub random: usize,
    pub pointed: usize,
    pub twists: usize,
    pub covers: usize,
    pub rescaled: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Counts { random: 12, pointed: 10, twists: 9, covers: 3, rescaled: 6 }
    }
}

pub fn corpus_fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::Rational,
        FieldSpec::imquad(-5).unwrap(),
        FieldSpec::imquad(-23).unwrap(),
    ]
}

fn small_elem(rng: &mut ChaCha8Rng, field: FieldSpec, bound: i64) -> KElement {
    let a = rng.gen_range(-bound..=bound);
    let b = if field.is_rational() || rng.gen_bool(0.5) { 0 } else { rng.gen_range(-bound..=bound) };
    KElement::from_ints(field, a, b)
}

fn nonzero_elem(rng: &mut ChaCha8Rng, field: FieldSpec, bound: i64) -> KElement {
    loop {
        let x = small_elem(rng, field, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, field: FieldSpec, len: usize, bound: i64, density: f64) -> Poly {
    let coeffs = (0..len)
        .map(|_| if rng.gen_bool(density) { small_elem(rng, field, bound) } else { KElement::zero(field) })
        .collect();
    Poly::new(field, coeffs)
}

/// A valid integral equation of genus g.
pub fn random_equation(rng: &mut ChaCha8Rng, field: FieldSpec, g: usize) -> WeierstrassEq {
    loop {
        let mut p = random_poly(rng, field, 2 * g + 3, 3, 0.6).coeffs().to_vec();
        p.resize(2 * g + 3, KElement::zero(field));
        if rng.gen_bool(0.5) {
            p[2 * g + 2] = KElement::zero(field);
            p[2 * g + 1] = nonzero_elem(rng, field, 2);
        } else {
            p[2 * g + 2] = nonzero_elem(rng, field, 2);
        }
        let q = if rng.gen_bool(0.4) { random_poly(rng, field, g + 2, 1, 0.5) } else { Poly::zero(field) };
        if let Ok(e) = WeierstrassEq::new(field, g, Poly::new(field, p), q) {
            if e.validate().is_ok() {
                return e;
            }
        }
    }
}

/// A valid pointed equation y^2 = x^{2g+1} + ... of genus g.
pub fn random_pointed(rng: &mut ChaCha8Rng, field: FieldSpec, g: usize) -> WeierstrassEq {
    loop {
        let mut p = random_poly(rng, field, 2 * g + 1, 3, 0.5).coeffs().to_vec();
        p.resize(2 * g + 1, KElement::zero(field));
        if p[0].is_zero() {
            p[0] = nonzero_elem(rng, field, 3);
        }
        p.push(KElement::one(field));
        if let Ok(e) = WeierstrassEq::new_pointed(field, g, Poly::new(field, p), Poly::zero(field)) {
            if e.validate().is_ok() {
                return e;
            }
        }
    }
}

/// Integral curves with small discriminant.
fn good_bases(field: FieldSpec) -> Vec<WeierstrassEq> {
    vec![
        WeierstrassEq::from_ints(field, 1, &[0, -1, 0, 1], &[1]).unwrap(),
        WeierstrassEq::from_ints(field, 1, &[0, 0, -1, 1], &[1]).unwrap(),
        WeierstrassEq::from_ints(field, 2, &[0, 0, 0, 0, 0, 1], &[1]).unwrap(),
        WeierstrassEq::from_ints(field, 2, &[0, 0, 0, 1, 0, 1], &[1]).unwrap(),
    ]
}

/// x = pi^i x' + r, y = pi^j y' + h(x), at a prime of good reduction of `base`.
pub fn rescale_at_good_prime(rng: &mut ChaCha8Rng, base: &WeierstrassEq) -> (WeierstrassEq, crate::quadfield::PrimeIdeal, LocalChange) {
    let field = base.field();
    let norm = base.discriminant().unwrap().norm();
    let candidates: Vec<_> = [2i64, 3, 5, 7]
        .iter()
        .filter(|&&p| !(norm.numer() % p == 0.into()))
        .flat_map(|&p| primes_above(field, &p.into()))
        .collect();
    let prime = candidates[rng.gen_range(0..candidates.len())].clone();
    let pi = prime.uniformizer();
    let g = base.genus();
    let i = rng.gen_range(-2..=2i64);
    let j = rng.gen_range(-3..=3i64);
    let h = random_poly(rng, field, g + 2, 2, 0.4);
    let change = LocalChange { a: pi.pow(i), r: small_elem(rng, field, 3), b: pi.pow(j), h };
    (change.apply(base), prime, change)
}

/// Twist of y^2 = x^3 + 1 by 2 over Q(sqrt -5): its Weierstrass class is nontrivial.
pub fn w_class_curve() -> WeierstrassEq {
    let f = FieldSpec::imquad(-5).unwrap();
    let base = WeierstrassEq::new_pointed(f, 1, Poly::from_ints(f, &[1, 0, 0, 1]), Poly::zero(f)).unwrap();
    quadratic_twist(&base, &KElement::from_int(f, 2)).unwrap()
}

pub fn generate_corpus(seed: u64, counts: Counts) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let push = |out: &mut Vec<CorpusEntry>, family: Family, curve: WeierstrassEq| {
        let f = match curve.field() {
            FieldSpec::Rational => "Q".to_string(),
            FieldSpec::ImQuad { d } => format!("Q({d})"),
        };
        let label = format!("{:04}_{}_{}_g{}", out.len(), family.name(), f, curve.genus());
        out.push(CorpusEntry { label, family, curve });
    };
    for field in corpus_fields() {
        for i in 0..counts.random {
            let g = [1, 1, 2, 2, 1, 2][i % 6];
            let e = random_equation(&mut rng, field, g);
            push(&mut out, Family::Random, e);
        }
        for i in 0..counts.pointed {
            let g = [1, 2, 1, 2, 4][i % 5];
            let e = random_pointed(&mut rng, field, g);
            push(&mut out, Family::RandomPointed, e);
        }
        for i in 0..counts.twists {
            let g = [1, 2, 3][i % 3];
            let base = random_pointed(&mut rng, field, g);
            let delta = nonzero_elem(&mut rng, field, 3);
            let e = quadratic_twist(&base, &delta).unwrap();
            if e.validate().is_ok() {
                push(&mut out, Family::Twist, e);
            }
        }
        let mut made = 0;
        while made < counts.covers {
            let e0 = random_equation(&mut rng, field, 1);
            let alpha = KElement::from_int(field, [1i64, 2, -3][made % 3]);
            if let Ok(e) = power_cover(&e0, 2, &alpha) {
                if e.validate().is_ok() {
                    push(&mut out, Family::Cover, e);
                    made += 1;
                }
            }
        }
        let bases = good_bases(field);
        for i in 0..counts.rescaled {
            let (e, _, _) = rescale_at_good_prime(&mut rng, &bases[i % bases.len()]);
            push(&mut out, Family::Rescaled, e);
        }
    }
    push(&mut out, Family::WClass, w_class_curve());
    out
}

/// `count` random equations of genus g over Q.
pub fn generate_simple(seed: u64, count: usize, genus: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| CorpusEntry {
            label: format!("{i:04}_random_Q_g{genus}"),
            family: Family::Random,
            curve: random_equation(&mut rng, FieldSpec::Rational, genus),
        })
        .collect()
}

pub fn corpus_to_json(seed: u64, entries: &[CorpusEntry]) -> Value {
    with_schema(json!({
        "seed": seed,
        "curves": entries
            .iter()
            .map(|e| json!({"label": e.label, "family": e.family.name(), "curve": curve_to_json(&e.curve)}))
            .collect::<Vec<_>>(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::{parse_curve, to_line};

    #[test]
    fn deterministic_and_round_trips() {
        let a = generate_corpus(7, Counts::default());
        let b = generate_corpus(7, Counts::default());
        assert_eq!(to_line(&corpus_to_json(7, &a)), to_line(&corpus_to_json(7, &b)));
        assert!(a.len() >= 100);
        for e in &a {
            e.curve.validate().unwrap();
            let s = to_line(&with_schema(curve_to_json(&e.curve)));
            let back = parse_curve(&s).unwrap();
            assert_eq!(back.equation, e.curve);
            assert_eq!(to_line(&with_schema(curve_to_json(&back.equation))), s);
        }
    }

    #[test]
    fn single_elliptic_curve() {
        let c = generate_simple(0, 1, 1);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].curve.genus(), 1);
        c[0].curve.validate().unwrap();
    }
}
