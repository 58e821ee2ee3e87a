//! Fractional ideals of O_K in Hermite normal form.
//!
//! A fractional ideal is J/den with J integral and given by the Z-basis
//! {a, b + c*omega}, c | a, c | b, 0 <= b < a. The representation is reduced so
//! that gcd(den, a, b, c) = 1, which makes it canonical. Over Q the ideal is
//! aZ/den and b = 0, c = 1 are placeholders.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadfield::{FieldSpec, KElement};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    field: FieldSpec,
    den: BigInt,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

type Vec2 = (BigInt, BigInt);

/// Row-reduce integer generators of a full-rank sublattice of Z^2 to (a, b, c).
/// Also returns, for each output row, its coefficients in terms of the inputs.
pub(crate) fn hnf2_tracked(gens: &[Vec2]) -> Option<(Vec2, Vec2, Vec<BigInt>, Vec<BigInt>)> {
    let k = gens.len();
    let mut rows: Vec<(Vec2, Vec<BigInt>)> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut coef = vec![BigInt::zero(); k];
            coef[i] = BigInt::one();
            (g.clone(), coef)
        })
        .collect();

    fn sub_mult(rows: &mut [(Vec2, Vec<BigInt>)], dst: usize, src: usize, q: &BigInt) {
        let (sv, sc) = rows[src].clone();
        let (dv, dc) = &mut rows[dst];
        dv.0 -= q * &sv.0;
        dv.1 -= q * &sv.1;
        for (d, s) in dc.iter_mut().zip(sc.iter()) {
            *d -= q * s;
        }
    }

    // Eliminate the second coordinate down to a single row.
    loop {
        let nz: Vec<usize> = (0..k).filter(|&i| !rows[i].0 .1.is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let pivot = *nz.iter().min_by_key(|&&i| rows[i].0 .1.abs()).unwrap();
        for &i in &nz {
            if i != pivot {
                let q = rows[i].0 .1.div_floor(&rows[pivot].0 .1);
                sub_mult(&mut rows, i, pivot, &q);
            }
        }
    }
    let top = (0..k).find(|&i| !rows[i].0 .1.is_zero())?;
    // Then the first coordinate among the remaining rows.
    loop {
        let nz: Vec<usize> = (0..k)
            .filter(|&i| i != top && !rows[i].0 .0.is_zero())
            .collect();
        if nz.len() <= 1 {
            break;
        }
        let pivot = *nz.iter().min_by_key(|&&i| rows[i].0 .0.abs()).unwrap();
        for &i in &nz {
            if i != pivot {
                let q = rows[i].0 .0.div_floor(&rows[pivot].0 .0);
                sub_mult(&mut rows, i, pivot, &q);
            }
        }
    }
    let low = (0..k).find(|&i| i != top && !rows[i].0 .0.is_zero())?;
    if rows[low].0 .0.is_negative() {
        let (v, c) = &mut rows[low];
        v.0 = -&v.0;
        for x in c.iter_mut() {
            *x = -&*x;
        }
    }
    if rows[top].0 .1.is_negative() {
        let (v, c) = &mut rows[top];
        v.0 = -&v.0;
        v.1 = -&v.1;
        for x in c.iter_mut() {
            *x = -&*x;
        }
    }
    let q = rows[top].0 .0.div_floor(&rows[low].0 .0);
    sub_mult(&mut rows, top, low, &q);
    let (av, ac) = rows[low].clone();
    let (bv, bc) = rows[top].clone();
    Some((av, bv, ac, bc))
}

fn hnf2(gens: &[Vec2]) -> Option<(BigInt, BigInt, BigInt)> {
    let (av, bv, _, _) = hnf2_tracked(gens)?;
    Some((av.0, bv.0, bv.1))
}

/// Coordinates (x, y) of an algebraic integer x + y*omega.
pub(crate) fn coords(e: &KElement) -> Vec2 {
    debug_assert!(e.is_integral());
    (e.a().to_integer(), e.b().to_integer())
}

pub(crate) fn from_coords(field: FieldSpec, v: &Vec2) -> KElement {
    if field.is_rational() {
        KElement::from_int(field, v.0.clone())
    } else {
        KElement::from_ints(field, v.0.clone(), v.1.clone())
    }
}

impl FractionalIdeal {
    fn normalized(field: FieldSpec, den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Self {
        if field.is_rational() {
            let g = den.gcd(&a);
            return FractionalIdeal { field, den: den / &g, a: a / g, b: BigInt::zero(), c: BigInt::one() };
        }
        let g = den.gcd(&a).gcd(&b).gcd(&c);
        let (den, a, b, c) = (den / &g, a / &g, b / &g, c / &g);
        let b = b.mod_floor(&a);
        FractionalIdeal { field, den, a, b, c }
    }

    /// The unit ideal O_K.
    pub fn unit(field: FieldSpec) -> Self {
        FractionalIdeal {
            field,
            den: BigInt::one(),
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    /// Build from the canonical data; validates that the lattice is an O_K-ideal.
    pub fn from_hnf(field: FieldSpec, den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if den <= BigInt::zero() || a <= BigInt::zero() || c <= BigInt::zero() {
            return Err(Error::Parse("ideal HNF entries must be positive".into()));
        }
        if field.is_rational() {
            return Ok(FractionalIdeal::normalized(field, den, a, BigInt::zero(), BigInt::one()));
        }
        let omega = KElement::omega(field);
        let basis = [
            KElement::from_int(field, a.clone()),
            KElement::from_ints(field, b.clone(), c.clone()),
        ];
        let gens: Vec<Vec2> = basis.iter().map(coords).collect();
        let lattice = FractionalIdeal::normalized(field, BigInt::one(), a.clone(), b.clone(), c.clone());
        for g in &basis {
            let prod = coords(&(g * &omega));
            if !lattice.lattice_contains(&prod) {
                return Err(Error::Parse("HNF lattice is not an ideal".into()));
            }
        }
        let (a2, b2, c2) = hnf2(&gens).ok_or(Error::ZeroIdeal)?;
        Ok(FractionalIdeal::normalized(field, den, a2, b2, c2))
    }

    /// The O_K-module generated by the given elements.
    pub fn from_generators(field: FieldSpec, gens: &[KElement]) -> Result<Self> {
        let gens: Vec<&KElement> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let field = gens.iter().fold(field, |f, g| f.join(g.field()));
        let mut den = BigInt::one();
        for g in &gens {
            den = den.lcm(&g.denominator());
        }
        let scale = Rat::from_integer(den.clone());
        if field.is_rational() {
            let mut a = BigInt::zero();
            for g in &gens {
                a = a.gcd(&g.scale(&scale).a().to_integer());
            }
            return Ok(FractionalIdeal::normalized(field, den, a, BigInt::zero(), BigInt::one()));
        }
        let omega = KElement::omega(field);
        let mut lat = Vec::new();
        for g in &gens {
            let g = g.scale(&scale).with_field(field);
            lat.push(coords(&g));
            lat.push(coords(&(&g * &omega)));
        }
        let (a, b, c) = hnf2(&lat).ok_or(Error::ZeroIdeal)?;
        Ok(FractionalIdeal::normalized(field, den, a, b, c))
    }

    pub fn principal(x: &KElement) -> Result<Self> {
        FractionalIdeal::from_generators(x.field(), std::slice::from_ref(x))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// (a, b, c) of the integral part.
    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_unit(&self) -> bool {
        self.den.is_one() && self.a.is_one() && self.c.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn norm(&self) -> Rat {
        if self.field.is_rational() {
            Rat::new(self.a.clone(), self.den.clone())
        } else {
            Rat::new(&self.a * &self.c, &self.den * &self.den)
        }
    }

    /// Z-basis of the integral part J (the ideal itself is J/den).
    pub fn integral_basis(&self) -> (KElement, KElement) {
        (
            KElement::from_int(self.field, self.a.clone()),
            if self.field.is_rational() {
                KElement::zero(self.field)
            } else {
                KElement::from_ints(self.field, self.b.clone(), self.c.clone())
            },
        )
    }

    /// Z-basis of the ideal.
    pub fn basis(&self) -> Vec<KElement> {
        let s = Rat::new(BigInt::one(), self.den.clone());
        let (u, v) = self.integral_basis();
        if self.field.is_rational() {
            vec![u.scale(&s)]
        } else {
            vec![u.scale(&s), v.scale(&s)]
        }
    }

    fn lattice_contains(&self, v: &Vec2) -> bool {
        if self.field.is_rational() {
            return (&v.0 % &self.a).is_zero();
        }
        if !(&v.1 % &self.c).is_zero() {
            return false;
        }
        let k = &v.1 / &self.c;
        ((&v.0 - k * &self.b) % &self.a).is_zero()
    }

    pub fn contains(&self, x: &KElement) -> bool {
        if x.is_zero() {
            return true;
        }
        let y = x.scale(&Rat::from_integer(self.den.clone()));
        y.is_integral() && self.lattice_contains(&coords(&y))
    }

    pub fn mul(&self, o: &FractionalIdeal) -> FractionalIdeal {
        let field = self.field.join(o.field);
        let den = &self.den * &o.den;
        if field.is_rational() {
            return FractionalIdeal::normalized(field, den, &self.a * &o.a, BigInt::zero(), BigInt::one());
        }
        let (u1, v1) = self.integral_basis();
        let (u2, v2) = o.integral_basis();
        let gens = [&u1 * &u2, &u1 * &v2, &v1 * &u2, &v1 * &v2];
        let lat: Vec<Vec2> = gens.iter().map(|g| coords(&g.with_field(field))).collect();
        let (a, b, c) = hnf2(&lat).expect("product of nonzero ideals is nonzero");
        FractionalIdeal::normalized(field, den, a, b, c)
    }

    pub fn conj(&self) -> FractionalIdeal {
        if self.field.is_rational() {
            return self.clone();
        }
        let (t, _) = self.field.omega_relation();
        let lat = [
            (self.a.clone(), BigInt::zero()),
            (&self.b + &self.c * t, -&self.c),
        ];
        let (a, b, c) = hnf2(&lat).unwrap();
        FractionalIdeal::normalized(self.field, self.den.clone(), a, b, c)
    }

    pub fn inv(&self) -> FractionalIdeal {
        if self.field.is_rational() {
            return FractionalIdeal::normalized(
                self.field,
                self.a.clone(),
                self.den.clone(),
                BigInt::zero(),
                BigInt::one(),
            );
        }
        // (J/n)^{-1} = n * conj(J) / N(J)
        let nj = &self.a * &self.c;
        let cj = self.conj();
        FractionalIdeal::normalized(
            self.field,
            nj,
            &cj.a * &self.den,
            &cj.b * &self.den,
            &cj.c * &self.den,
        )
    }

    pub fn div(&self, o: &FractionalIdeal) -> FractionalIdeal {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i64) -> FractionalIdeal {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FractionalIdeal::unit(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scale by a nonzero rational integer-free factor: I * (x).
    pub fn mul_element(&self, x: &KElement) -> Result<FractionalIdeal> {
        Ok(self.mul(&FractionalIdeal::principal(x)?))
    }
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() {
            write!(f, "({}/{})", self.a, self.den)
        } else {
            write!(f, "[{}, {}, {}]/{}", self.a, self.b, self.c, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> FieldSpec {
        FieldSpec::imquad(d).unwrap()
    }

    #[test]
    fn unit_identity_and_inverse() {
        let f = k(-5);
        let i = FractionalIdeal::from_generators(
            f,
            &[KElement::from_int(f, 2), KElement::from_ints(f, 1, 1)],
        )
        .unwrap();
        assert_eq!(i.mul(&FractionalIdeal::unit(f)), i);
        assert!(i.mul(&i.inv()).is_unit());
        // (2, 1+sqrt(-5))^2 = (2)
        assert_eq!(i.mul(&i), FractionalIdeal::principal(&KElement::from_int(f, 2)).unwrap());
        assert_eq!(i.norm(), Rat::from_integer(2.into()));
    }

    #[test]
    fn rational_ideals() {
        let q = FieldSpec::Rational;
        let i = FractionalIdeal::principal(&KElement::from_rat(q, Rat::new(6.into(), 4.into()))).unwrap();
        assert_eq!(i.norm(), Rat::new(3.into(), 2.into()));
        assert!(i.mul(&i.inv()).is_unit());
    }

    #[test]
    fn membership_and_fractional_generators() {
        let f = k(-1);
        let half = KElement::from_rat(f, Rat::new(7.into(), 2.into()));
        let i = FractionalIdeal::principal(&half).unwrap();
        assert!(i.contains(&half));
        assert!(!i.contains(&KElement::one(f)));
        assert_eq!(i.norm(), Rat::new(49.into(), 4.into()));
    }

    #[test]
    fn from_hnf_validates() {
        let f = k(-1);
        assert!(FractionalIdeal::from_hnf(f, 1.into(), 5.into(), 2.into(), 1.into()).is_ok());
        assert!(FractionalIdeal::from_hnf(f, 1.into(), 5.into(), 1.into(), 1.into()).is_err());
    }
}
