//! The base field: either Q or an imaginary quadratic field Q(sqrt d), and its
//! elements written as a + b*omega over the integral basis {1, omega}.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    ImQuad { d: i64 },
}

pub(crate) fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldSpec {
    pub fn imquad(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::UnsupportedField(format!(
                "d = {d}: only imaginary quadratic fields (d < 0) are supported"
            )));
        }
        if !is_squarefree(d) {
            return Err(Error::UnsupportedField(format!("d = {d} is not squarefree")));
        }
        Ok(FieldSpec::ImQuad { d })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldSpec::Rational)
    }

    /// Fundamental discriminant; 1 for Q.
    pub fn discriminant(&self) -> i64 {
        match *self {
            FieldSpec::Rational => 1,
            FieldSpec::ImQuad { d } => {
                if d.rem_euclid(4) == 1 {
                    d
                } else {
                    4 * d
                }
            }
        }
    }

    /// omega^2 = T*omega - N; returns (T, N).
    pub fn omega_relation(&self) -> (i64, i64) {
        match *self {
            FieldSpec::Rational => (0, 0),
            FieldSpec::ImQuad { d } => {
                if d.rem_euclid(4) == 1 {
                    (1, (1 - d) / 4)
                } else {
                    (0, -d)
                }
            }
        }
    }

    /// Combine the fields of two operands; Q embeds into any quadratic field.
    pub(crate) fn join(self, other: FieldSpec) -> FieldSpec {
        match (self, other) {
            (FieldSpec::Rational, f) | (f, FieldSpec::Rational) => f,
            (a, b) => {
                assert_eq!(a, b, "mixing elements of different quadratic fields");
                a
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::ImQuad { d } => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// An element a + b*omega of K. Over Q, b is always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KElement {
    field: FieldSpec,
    a: Rat,
    b: Rat,
}

impl KElement {
    pub fn new(field: FieldSpec, a: Rat, b: Rat) -> Self {
        assert!(
            !(field.is_rational() && !b.is_zero()),
            "omega component in Q"
        );
        KElement { field, a, b }
    }

    pub fn from_rat(field: FieldSpec, a: Rat) -> Self {
        KElement::new(field, a, Rat::zero())
    }

    pub fn from_int<T: Into<BigInt>>(field: FieldSpec, n: T) -> Self {
        KElement::from_rat(field, Rat::from_integer(n.into()))
    }

    pub fn from_ints<T: Into<BigInt>>(field: FieldSpec, a: T, b: T) -> Self {
        KElement::new(
            field,
            Rat::from_integer(a.into()),
            Rat::from_integer(b.into()),
        )
    }

    pub fn zero(field: FieldSpec) -> Self {
        KElement::from_rat(field, Rat::zero())
    }

    pub fn one(field: FieldSpec) -> Self {
        KElement::from_rat(field, Rat::one())
    }

    pub fn omega(field: FieldSpec) -> Self {
        assert!(!field.is_rational());
        KElement::new(field, Rat::zero(), Rat::one())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn with_field(&self, field: FieldSpec) -> Self {
        KElement::new(field.join(self.field), self.a.clone(), self.b.clone())
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Algebraic integer test: both coordinates in Z.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Smallest positive integer m with m*self in O_K.
    pub fn denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Returns (x, y, m) with self = (x + y*omega) / m and m = denominator().
    pub fn integral_parts(&self) -> (BigInt, BigInt, BigInt) {
        let m = self.denominator();
        let x = (&self.a * Rat::from_integer(m.clone())).to_integer();
        let y = (&self.b * Rat::from_integer(m.clone())).to_integer();
        (x, y, m)
    }

    pub fn conj(&self) -> Self {
        let (t, _) = self.field.omega_relation();
        KElement {
            field: self.field,
            a: &self.a + &self.b * Rat::from_integer(t.into()),
            b: -&self.b,
        }
    }

    /// Field norm; over Q this is the element itself.
    pub fn norm(&self) -> Rat {
        if self.field.is_rational() {
            return self.a.clone();
        }
        let (t, n) = self.field.omega_relation();
        &self.a * &self.a
            + &self.a * &self.b * Rat::from_integer(t.into())
            + &self.b * &self.b * Rat::from_integer(n.into())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.is_rational() {
            return Some(KElement::from_rat(self.field, self.a.recip()));
        }
        let n = self.norm();
        let c = self.conj();
        Some(KElement {
            field: self.field,
            a: &c.a / &n,
            b: &c.b / &n,
        })
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("inverse of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = KElement::one(self.field);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> Self {
        KElement {
            field: self.field,
            a: &self.a * r,
            b: &self.b * r,
        }
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rat::to_string(&self.a));
        }
        let w = match self.field {
            FieldSpec::ImQuad { d } if d.rem_euclid(4) == 1 => format!("(1+sqrt({d}))/2"),
            FieldSpec::ImQuad { d } => format!("sqrt({d})"),
            FieldSpec::Rational => unreachable!(),
        };
        if self.a.is_zero() {
            write!(f, "{}*{}", rat::to_string(&self.b), w)
        } else if self.b.is_negative() {
            write!(
                f,
                "{} - {}*{}",
                rat::to_string(&self.a),
                rat::to_string(&-&self.b),
                w
            )
        } else {
            write!(
                f,
                "{} + {}*{}",
                rat::to_string(&self.a),
                rat::to_string(&self.b),
                w
            )
        }
    }
}

impl<'a> Add<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn add(self, o: &KElement) -> KElement {
        KElement {
            field: self.field.join(o.field),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn sub(self, o: &KElement) -> KElement {
        KElement {
            field: self.field.join(o.field),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn mul(self, o: &KElement) -> KElement {
        let field = self.field.join(o.field);
        if self.b.is_zero() {
            return KElement {
                field,
                a: &self.a * &o.a,
                b: &self.a * &o.b,
            };
        }
        if o.b.is_zero() {
            return KElement {
                field,
                a: &self.a * &o.a,
                b: &self.b * &o.a,
            };
        }
        let (t, n) = field.omega_relation();
        let bd = &self.b * &o.b;
        KElement {
            field,
            a: &self.a * &o.a - &bd * BigRational::from_integer(n.into()),
            b: &self.a * &o.b + &self.b * &o.a + bd * BigRational::from_integer(t.into()),
        }
    }
}

impl<'a> Div<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn div(self, o: &KElement) -> KElement {
        self * &o.inv().expect("division by zero in K")
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        KElement {
            field: self.field,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<KElement> for KElement {
            type Output = KElement;
            fn $m(self, o: KElement) -> KElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a KElement> for KElement {
            type Output = KElement;
            fn $m(self, o: &KElement) -> KElement {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<KElement> for &'a KElement {
            type Output = KElement;
            fn $m(self, o: KElement) -> KElement {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let k = FieldSpec::imquad(-1).unwrap();
        let i = KElement::omega(k);
        assert_eq!(&i * &i, KElement::from_int(k, -1));
        let z = KElement::from_ints(k, 2, 1);
        assert_eq!(z.norm(), Rat::from_integer(5.into()));
        assert!((&z * &z.inv().unwrap()).is_one());
    }

    #[test]
    fn half_integral_omega() {
        let k = FieldSpec::imquad(-23).unwrap();
        let w = KElement::omega(k);
        // omega^2 = omega - 6
        assert_eq!(&w * &w, &w - &KElement::from_int(k, 6));
        assert_eq!(w.norm(), Rat::from_integer(6.into()));
        assert_eq!(k.discriminant(), -23);
    }

    #[test]
    fn rejects_bad_d() {
        assert!(FieldSpec::imquad(-4).is_err());
        assert!(FieldSpec::imquad(5).is_err());
        assert_eq!(FieldSpec::imquad(-5).unwrap().discriminant(), -20);
    }
}
