//! Ideal class groups via reduced binary quadratic forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::quadfield::ideal::FractionalIdeal;
use crate::quadfield::{FieldSpec, KElement};
use crate::rat::Rat;

/// Positive definite form a x^2 + b xy + c y^2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Form {
    pub fn new<T: Into<BigInt>>(a: T, b: T, c: T) -> Form {
        Form { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn reduced(&self) -> Form {
        let d = self.disc();
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        if d.is_positive() {
            // Only the trivial rational form has positive discriminant.
            return Form { a, b, c };
        }
        loop {
            let two_a = &a * 2;
            let k = (&a - &b).div_floor(&two_a);
            b += &two_a * k;
            c = (&b * &b - &d) / (&a * 4);
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            break;
        }
        if (a == c || a == b.abs()) && b.is_negative() {
            b = -b;
        }
        Form { a, b, c }
    }

    pub fn is_reduced(&self) -> bool {
        *self == self.reduced()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The class group of O_K, held as its list of reduced forms.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    field: FieldSpec,
    forms: Vec<Form>,
}

pub fn reduced_forms(d: i64) -> Vec<Form> {
    let mut out = Vec::new();
    if d > 0 {
        return vec![Form::new(1, 1, 0)];
    }
    let ad = d.unsigned_abs() as i64;
    let mut a = 1i64;
    while 3 * a * a <= ad {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            out.push(Form::new(a, b, c));
        }
        a += 1;
    }
    out.sort();
    out
}

impl ClassGroup {
    pub fn new(field: FieldSpec) -> ClassGroup {
        ClassGroup { field, forms: reduced_forms(field.discriminant()) }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn identity(&self) -> Form {
        let d = self.field.discriminant();
        if self.field.is_rational() {
            return Form::new(1, 1, 0);
        }
        let b = d.rem_euclid(2);
        Form::new(1, b, (b * b - d) / 4)
    }

    pub fn inverse(&self, f: &Form) -> Form {
        Form { a: f.a.clone(), b: -&f.b, c: f.c.clone() }.reduced()
    }

    /// The ideal class of a fractional ideal, as a reduced form.
    pub fn class_of(&self, i: &FractionalIdeal) -> Form {
        if self.field.is_rational() {
            return self.identity();
        }
        let (a, b, c) = i.hnf();
        let (t, n) = self.field.omega_relation();
        let big_a = a / c;
        let bp = b / c;
        let form_c = (&bp * &bp + &bp * t + n) / &big_a;
        Form { a: big_a, b: bp * 2 + t, c: form_c }.reduced()
    }

    /// An integral ideal in the class of f.
    pub fn ideal_of(&self, f: &Form) -> FractionalIdeal {
        if self.field.is_rational() {
            return FractionalIdeal::unit(self.field);
        }
        let (t, _) = self.field.omega_relation();
        let bp: BigInt = (&f.b - t) / 2;
        FractionalIdeal::from_generators(
            self.field,
            &[
                KElement::from_int(self.field, f.a.clone()),
                KElement::from_ints(self.field, bp, BigInt::one()),
            ],
        )
        .expect("nonzero")
    }

    pub fn compose(&self, f: &Form, g: &Form) -> Form {
        if self.field.is_rational() {
            return self.identity();
        }
        self.class_of(&self.ideal_of(f).mul(&self.ideal_of(g)))
    }

    pub fn pow(&self, f: &Form, e: i64) -> Form {
        let mut base = if e < 0 { self.inverse(f) } else { f.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.compose(&base, &base);
            }
        }
        acc
    }

    pub fn element_order(&self, f: &Form) -> usize {
        let id = self.identity();
        let mut acc = f.reduced();
        let mut k = 1;
        while acc != id {
            acc = self.compose(&acc, f);
            k += 1;
        }
        k
    }

    pub fn is_trivial(&self, i: &FractionalIdeal) -> bool {
        self.class_of(i) == self.identity()
    }

    pub fn is_square(&self, f: &Form) -> bool {
        self.forms.iter().any(|g| self.compose(g, g) == *f)
    }

    /// Invariant factors d_1 | d_2 | ... of the group, omitting 1s.
    pub fn structure(&self) -> Vec<u64> {
        let h = self.order() as u64;
        if h == 1 {
            return Vec::new();
        }
        let orders: Vec<u64> = self.forms.iter().map(|f| self.element_order(f) as u64).collect();
        let mut h_rest = h;
        let mut primes = Vec::new();
        let mut p = 2;
        while h_rest > 1 {
            if h_rest % p == 0 {
                primes.push(p);
                while h_rest % p == 0 {
                    h_rest /= p;
                }
            }
            p += 1;
        }
        // For each p, exponents e_i of the p-primary part from |G[p^k]|.
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &p in &primes {
            let mut counts = vec![1u64];
            let mut k = 1;
            loop {
                let pk = p.pow(k);
                let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                counts.push(c);
                if c == counts[k as usize - 1] {
                    break;
                }
                k += 1;
            }
            // log_p(|G[p^k]| / |G[p^{k-1}]|) = #{i : e_i >= k}
            let mut at_least = Vec::new();
            for k in 1..counts.len() {
                let ratio = counts[k] / counts[k - 1];
                at_least.push(ratio.ilog(p));
            }
            let r = at_least.first().copied().unwrap_or(0);
            let mut exps = Vec::new();
            for i in 0..r {
                exps.push(at_least.iter().filter(|&&n| n > i).count() as u32);
            }
            exps.sort();
            primary.insert(p, exps);
        }
        let rank = primary.values().map(|v| v.len()).max().unwrap_or(0);
        let mut out = vec![1u64; rank];
        for (p, exps) in primary {
            let off = rank - exps.len();
            for (i, e) in exps.into_iter().enumerate() {
                out[off + i] *= p.pow(e);
            }
        }
        out
    }
}

fn bilinear(u: &KElement, v: &KElement) -> Rat {
    // Re(u conj(v)) under the norm form
    (&(u + v).norm() - &u.norm() - &v.norm()) / Rat::from_integer(2.into())
}

/// A generator of i when it is principal.
pub fn principal_generator(i: &FractionalIdeal) -> Option<KElement> {
    let field = i.field();
    let basis = i.basis();
    if field.is_rational() {
        return Some(basis[0].clone());
    }
    let (mut u, mut v) = (basis[0].clone(), basis[1].clone());
    loop {
        if u.norm() > v.norm() {
            std::mem::swap(&mut u, &mut v);
        }
        let bl = bilinear(&u, &v);
        if (&bl * Rat::from_integer(2.into())).abs() <= u.norm() {
            break;
        }
        let mu = (bl / u.norm()).round();
        v = &v - &u.scale(&mu);
    }
    if u.norm() > v.norm() {
        std::mem::swap(&mut u, &mut v);
    }
    (u.norm() == i.norm()).then_some(u)
}

/// Scan d = -1, -2, ... for an imaginary quadratic field whose class group has
/// an element of order n; returns the first field and such a class.
pub fn find_field_with_class_element_of_order(n: usize, max_abs_d: i64) -> Result<(FieldSpec, Form)> {
    if n == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    let mut d = -1i64;
    while -d <= max_abs_d {
        if crate::quadfield::is_squarefree(d) {
            let k = FieldSpec::imquad(d)?;
            let cg = ClassGroup::new(k);
            if cg.order() % n == 0 {
                if let Some(f) = cg.forms().iter().find(|f| cg.element_order(f) == n) {
                    return Ok((k, f.clone()));
                }
            }
        }
        d -= 1;
    }
    Err(Error::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> FieldSpec {
        FieldSpec::imquad(d).unwrap()
    }

    #[test]
    fn known_class_numbers() {
        for (d, h) in [(-1, 1), (-2, 1), (-3, 1), (-5, 2), (-6, 2), (-23, 3), (-14, 4), (-21, 4), (-47, 5), (-163, 1)] {
            assert_eq!(ClassGroup::new(k(d)).order(), h, "d = {d}");
        }
    }

    #[test]
    fn structure_of_small_groups() {
        assert_eq!(ClassGroup::new(k(-21)).structure(), vec![2, 2]);
        assert_eq!(ClassGroup::new(k(-14)).structure(), vec![4]);
        assert_eq!(ClassGroup::new(k(-5)).structure(), vec![2]);
        assert!(ClassGroup::new(k(-1)).structure().is_empty());
    }

    #[test]
    fn ideal_form_round_trip() {
        let f = k(-5);
        let cg = ClassGroup::new(f);
        let p2 = FractionalIdeal::from_generators(
            f,
            &[KElement::from_int(f, 2), KElement::from_ints(f, 1, 1)],
        )
        .unwrap();
        assert_eq!(cg.class_of(&p2), Form::new(2, 2, 3));
        assert_eq!(cg.compose(&Form::new(2, 2, 3), &Form::new(2, 2, 3)), cg.identity());
        for g in cg.forms() {
            assert_eq!(cg.class_of(&cg.ideal_of(g)), *g);
        }
    }

    #[test]
    fn generators_found_only_for_principal_ideals() {
        let f = k(-5);
        let p2 = FractionalIdeal::from_generators(
            f,
            &[KElement::from_int(f, 2), KElement::from_ints(f, 1, 1)],
        )
        .unwrap();
        assert!(principal_generator(&p2).is_none());
        let sq = p2.mul(&p2);
        let g = principal_generator(&sq).unwrap();
        assert_eq!(FractionalIdeal::principal(&g).unwrap(), sq);
        let x = KElement::new(f, Rat::new(3.into(), 7.into()), Rat::from_integer(2.into()));
        let i = FractionalIdeal::principal(&x).unwrap();
        let g = principal_generator(&i).unwrap();
        assert_eq!(FractionalIdeal::principal(&g).unwrap(), i);
    }
}
