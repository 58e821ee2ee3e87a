//! Prime ideals of O_K, valuations, residue maps.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::quadfield::factor::{kronecker, valuation_int};
use crate::quadfield::ideal::FractionalIdeal;
use crate::quadfield::residue::{Fe, Fq};
use crate::quadfield::{FieldSpec, KElement};
use crate::rat::Rat;

/// Stand-in for the valuation of 0.
pub const INFINITE_VALUATION: i64 = i64::MAX / 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Splitting {
    Rational,
    Split,
    Ramified,
    Inert,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    field: FieldSpec,
    p: BigInt,
    kind: Splitting,
    // omega mod p for split and ramified primes
    s: BigInt,
}

fn sqrt_mod_p(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let f = Fq::prime(p.clone());
    f.sqrt(&f.from_int(a)).map(|r| r.c0)
}

/// Roots of X^2 - T X + N modulo p, sorted.
fn omega_roots(field: FieldSpec, p: &BigInt) -> Vec<BigInt> {
    let (t, n) = field.omega_relation();
    let (t, n) = (BigInt::from(t), BigInt::from(n));
    let f = |x: &BigInt| (x * x - &t * x + &n).mod_floor(p);
    if *p == BigInt::from(2) {
        return [0, 1]
            .iter()
            .map(|&x| BigInt::from(x))
            .filter(|x| f(x).is_zero())
            .collect();
    }
    let d = BigInt::from(field.discriminant());
    let Some(r) = sqrt_mod_p(&d, p) else {
        return Vec::new();
    };
    let inv2 = (p + 1u32) / 2u32;
    let mut out: Vec<BigInt> = [&t + &r, &t - &r]
        .iter()
        .map(|x| (x * &inv2).mod_floor(p))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl PrimeIdeal {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn kind(&self) -> Splitting {
        self.kind
    }

    /// The ideal lying over a split or ramified p with omega = s mod it.
    pub fn omega_residue(&self) -> Option<&BigInt> {
        matches!(self.kind, Splitting::Split | Splitting::Ramified).then_some(&self.s)
    }

    pub fn ramification(&self) -> i64 {
        if self.kind == Splitting::Ramified {
            2
        } else {
            1
        }
    }

    pub fn residue_degree(&self) -> u32 {
        if self.kind == Splitting::Inert {
            2
        } else {
            1
        }
    }

    /// Size of the residue field.
    pub fn norm(&self) -> BigInt {
        self.p.pow(self.residue_degree())
    }

    pub fn ideal(&self) -> FractionalIdeal {
        match self.kind {
            Splitting::Rational => {
                FractionalIdeal::principal(&KElement::from_int(self.field, self.p.clone())).unwrap()
            }
            Splitting::Inert => {
                FractionalIdeal::principal(&KElement::from_int(self.field, self.p.clone())).unwrap()
            }
            _ => FractionalIdeal::from_generators(
                self.field,
                &[
                    KElement::from_int(self.field, self.p.clone()),
                    KElement::from_ints(self.field, -&self.s, BigInt::one()),
                ],
            )
            .unwrap(),
        }
    }

    /// An element of O_K outside this prime and in its conjugate (or 1).
    fn tau(&self) -> KElement {
        if self.kind == Splitting::Split {
            let (t, _) = self.field.omega_relation();
            let sbar = (BigInt::from(t) - &self.s).mod_floor(&self.p);
            KElement::from_ints(self.field, -sbar, BigInt::one())
        } else {
            KElement::one(self.field)
        }
    }

    fn val_integral(&self, x: &BigInt, y: &BigInt) -> i64 {
        if x.is_zero() && y.is_zero() {
            return INFINITE_VALUATION;
        }
        let vx = if x.is_zero() { u32::MAX } else { valuation_int(x, &self.p) };
        let vy = if y.is_zero() { u32::MAX } else { valuation_int(y, &self.p) };
        let k = vx.min(vy);
        let pk = self.p.pow(k);
        let (x, y) = (x / &pk, y / &pk);
        let e = self.ramification();
        let base = e * k as i64;
        match self.kind {
            Splitting::Rational | Splitting::Inert => base,
            Splitting::Ramified => {
                if (&x + &y * &self.s).mod_floor(&self.p).is_zero() {
                    base + 1
                } else {
                    base
                }
            }
            Splitting::Split => {
                if (&x + &y * &self.s).mod_floor(&self.p).is_zero() {
                    // Not divisible by p, so the conjugate prime does not divide it.
                    let n = KElement::from_ints(self.field, x, y).norm().to_integer();
                    base + valuation_int(&n, &self.p) as i64
                } else {
                    base
                }
            }
        }
    }

    /// v_p(x), or INFINITE_VALUATION for 0.
    pub fn valuation(&self, x: &KElement) -> i64 {
        if x.is_zero() {
            return INFINITE_VALUATION;
        }
        let (a, b, m) = x.integral_parts();
        let vm = if m.is_one() { 0 } else { valuation_int(&m, &self.p) as i64 };
        self.val_integral(&a, &b) - self.ramification() * vm
    }

    pub fn valuation_rat(&self, x: &Rat) -> i64 {
        self.valuation(&KElement::from_rat(self.field, x.clone()))
    }

    /// Minimum valuation over the coefficients.
    pub fn valuation_poly(&self, f: &Poly) -> i64 {
        f.coeffs()
            .iter()
            .map(|c| self.valuation(c))
            .min()
            .unwrap_or(INFINITE_VALUATION)
    }

    pub fn valuation_ideal(&self, i: &FractionalIdeal) -> i64 {
        i.basis().iter().map(|b| self.valuation(b)).min().unwrap()
    }

    /// An element of valuation exactly 1.
    pub fn uniformizer(&self) -> KElement {
        match self.kind {
            Splitting::Rational | Splitting::Inert => KElement::from_int(self.field, self.p.clone()),
            _ => {
                let mut j = BigInt::zero();
                loop {
                    let c = KElement::from_ints(self.field, &j * &self.p - &self.s, BigInt::one());
                    if self.valuation(&c) == 1 {
                        return c;
                    }
                    j += 1;
                }
            }
        }
    }

    pub fn residue_field(&self) -> Fq {
        if self.kind == Splitting::Inert {
            let (t, n) = self.field.omega_relation();
            Fq::quadratic(self.p.clone(), t.into(), n.into())
        } else {
            Fq::prime(self.p.clone())
        }
    }

    /// Reduction of an element of the valuation ring.
    pub fn reduce(&self, x: &KElement) -> Result<Fe> {
        let k = self.residue_field();
        if x.is_zero() {
            return Ok(k.zero());
        }
        if self.valuation(x) < 0 {
            return Err(Error::Precondition(format!("{x} is not integral at {self}")));
        }
        let m = x.denominator();
        let vm = if m.is_one() { 0 } else { valuation_int(&m, &self.p) };
        let pk = self.p.pow(vm);
        let mprime = &m / &pk;
        // x * m' * tau^k is integral and the multiplier is a unit here.
        let w = &KElement::from_int(self.field, mprime) * &self.tau().pow(vm as i64);
        let xw = x * &w;
        debug_assert!(xw.is_integral());
        let num = self.reduce_integral(&xw);
        let den = self.reduce_integral(&w);
        Ok(k.div(&num, &den).expect("unit multiplier"))
    }

    fn reduce_integral(&self, x: &KElement) -> Fe {
        let k = self.residue_field();
        let a = x.a().to_integer();
        let b = x.b().to_integer();
        match self.kind {
            Splitting::Inert => k.elem(&a, &b),
            Splitting::Rational => k.from_int(&a),
            _ => k.from_int(&(a + b * &self.s)),
        }
    }

    /// A representative in O_K of a residue class.
    pub fn lift(&self, e: &Fe) -> KElement {
        match self.kind {
            Splitting::Inert => KElement::from_ints(self.field, e.c0.clone(), e.c1.clone()),
            _ => KElement::from_int(self.field, e.c0.clone()),
        }
    }

    fn sort_key(&self) -> (BigInt, BigInt, BigInt) {
        (self.norm(), self.p.clone(), self.s.clone())
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sort_key().cmp(&o.sort_key())
    }
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Splitting::Rational | Splitting::Inert => write!(f, "({})", self.p),
            _ => {
                let w = match self.field {
                    FieldSpec::ImQuad { d } if d.rem_euclid(4) == 1 => format!("(1+sqrt({d}))/2"),
                    FieldSpec::ImQuad { d } => format!("sqrt({d})"),
                    FieldSpec::Rational => unreachable!(),
                };
                write!(f, "({}, {} - {})", self.p, w, self.s)
            }
        }
    }
}

/// The primes of O_K above a rational prime p, sorted.
pub fn primes_above(field: FieldSpec, p: &BigInt) -> Vec<PrimeIdeal> {
    if field.is_rational() {
        return vec![PrimeIdeal { field, p: p.clone(), kind: Splitting::Rational, s: BigInt::zero() }];
    }
    let mk = |kind, s| PrimeIdeal { field, p: p.clone(), kind, s };
    let roots = omega_roots(field, p);
    let mut out = match kronecker(field.discriminant(), p) {
        1 => roots.into_iter().map(|s| mk(Splitting::Split, s)).collect(),
        0 => vec![mk(Splitting::Ramified, roots[0].clone())],
        _ => vec![mk(Splitting::Inert, BigInt::zero())],
    };
    out.sort();
    out
}

/// Factorization of a nonzero fractional ideal into prime powers.
pub fn factor_ideal(i: &FractionalIdeal) -> Result<Vec<(PrimeIdeal, i64)>> {
    let n = i.norm();
    let mut rational_primes = Vec::new();
    for part in [n.numer(), n.denom()] {
        if !part.is_one() {
            for (p, _) in crate::quadfield::factor::factor(&part.abs())? {
                rational_primes.push(p);
            }
        }
    }
    // Primes dividing the denominator but cancelling in the norm.
    if !i.den().is_one() {
        for (p, _) in crate::quadfield::factor::factor(i.den())? {
            rational_primes.push(p);
        }
    }
    rational_primes.sort();
    rational_primes.dedup();
    let mut out = Vec::new();
    for p in rational_primes {
        for q in primes_above(i.field(), &p) {
            let v = q.valuation_ideal(i);
            if v != 0 {
                out.push((q, v));
            }
        }
    }
    out.sort();
    Ok(out)
}
