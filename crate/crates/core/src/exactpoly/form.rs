use crate::error::{Error, Result};
use crate::exactpoly::poly::{resultant, Poly};
use crate::quadfield::{FieldSpec, KElement};

/// A 2x2 matrix (a b; c d) over K, acting on forms by (X, Z) -> (aX + bZ, cX + dZ).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: KElement,
    pub b: KElement,
    pub c: KElement,
    pub d: KElement,
}

impl Mat2 {
    pub fn new(a: KElement, b: KElement, c: KElement, d: KElement) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints(field: FieldSpec, a: i64, b: i64, c: i64, d: i64) -> Self {
        let k = |n| KElement::from_int(field, n);
        Mat2::new(k(a), k(b), k(c), k(d))
    }

    pub fn identity(field: FieldSpec) -> Self {
        Mat2::from_ints(field, 1, 0, 0, 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.a
            .field()
            .join(self.b.field())
            .join(self.c.field())
            .join(self.d.field())
    }

    pub fn det(&self) -> KElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    /// The adjugate (d -b; -c a): inverse up to the scalar det.
    pub fn adjugate(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }
}

/// A binary form of nominal degree n: sum of coeffs[i] X^i Z^{n-i}.
/// Top coefficients may vanish (roots at infinity).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<KElement>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<KElement>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("binary form degree must be >= 1".into()));
        }
        if coeffs.len() != degree + 1 {
            return Err(Error::Precondition(format!(
                "degree-{degree} form needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryForm { degree, coeffs })
    }

    /// Homogenize a polynomial at nominal degree n >= deg(p).
    pub fn from_poly(p: &Poly, degree: usize) -> Result<Self> {
        if p.degree().is_some_and(|d| d > degree) {
            return Err(Error::DegreeViolation(format!(
                "polynomial of degree {} embedded at form degree {degree}",
                p.degree().unwrap()
            )));
        }
        BinaryForm::new(degree, p.padded(degree + 1))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[KElement] {
        &self.coeffs
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs
            .iter()
            .fold(FieldSpec::Rational, |f, c| f.join(c.field()))
    }

    /// Dehomogenization at Z = 1.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.field(), self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &KElement) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The form B(aX + bZ, cX + dZ).
    pub fn act(&self, m: &Mat2) -> Result<BinaryForm> {
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.act_unchecked(m))
    }

    pub(crate) fn act_unchecked(&self, m: &Mat2) -> BinaryForm {
        let n = self.degree;
        let field = self.field().join(m.field());
        let top = Poly::linear(&m.a, &m.b);
        let bottom = Poly::linear(&m.c, &m.d);
        // Powers of the bottom row, reused across terms.
        let mut bottom_pows = vec![Poly::constant(KElement::one(field))];
        for i in 1..=n {
            bottom_pows.push(bottom_pows[i - 1].mul(&bottom));
        }
        let mut acc = Poly::zero(field);
        let mut top_pow = Poly::constant(KElement::one(field));
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                top_pow = top_pow.mul(&top);
            }
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&top_pow.mul(&bottom_pows[n - i]).scale(c));
        }
        BinaryForm {
            degree: n,
            coeffs: acc.padded(n + 1),
        }
    }

    /// The SL2-invariant discriminant, normalized so that a degree-n polynomial f
    /// with nonzero leading coefficient a_n has disc = (-1)^{n(n-1)/2} res(f, f') / a_n.
    pub fn disc(&self) -> Result<KElement> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let n = self.degree;
        if self.coeffs[n].is_zero() {
            // Move a root off infinity with the unimodular substitution Z -> Z + tX.
            let field = self.field();
            for t in 1..=(n as i64 + 1) {
                let shear = Mat2::from_ints(field, 1, 0, t, 1);
                let sheared = self.act_unchecked(&shear);
                if !sheared.coeffs[n].is_zero() {
                    return sheared.disc();
                }
            }
            unreachable!("a nonzero form has at most n projective roots");
        }
        let f = self.to_poly();
        let lead = self.coeffs[n].clone();
        let r = resultant(&f, &f.derivative())?;
        let d = &r / &lead;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, c: &[i64]) -> BinaryForm {
        BinaryForm::new(
            n,
            c.iter().map(|&x| KElement::from_int(FieldSpec::Rational, x)).collect(),
        )
        .unwrap()
    }

    fn int(n: i64) -> KElement {
        KElement::from_int(FieldSpec::Rational, n)
    }

    #[test]
    fn quadratic_disc() {
        assert_eq!(q(2, &[1, 0, 1]).disc().unwrap(), int(-4));
    }

    #[test]
    fn quartic_with_root_at_infinity() {
        // 4x^3 + 1 at degree 4; the quartic invariants give (4I^3 - J^2)/27 = -6912.
        assert_eq!(q(4, &[1, 0, 0, 4, 0]).disc().unwrap(), int(-6912));
    }

    #[test]
    fn quintic_binomial() {
        assert_eq!(q(5, &[1, 0, 0, 0, 0, 1]).disc().unwrap(), int(3125));
    }

    #[test]
    fn linear_form() {
        assert_eq!(q(1, &[3, 2]).disc().unwrap(), int(1));
    }

    #[test]
    fn substitutions() {
        let f = q(2, &[1, 0, 1]);
        let field = FieldSpec::Rational;
        assert_eq!(f.act(&Mat2::identity(field)).unwrap(), f);
        let sheared = f.act(&Mat2::from_ints(field, 1, 1, 0, 1)).unwrap();
        assert_eq!(sheared, q(2, &[2, 2, 1]));
        assert_eq!(sheared.disc().unwrap(), int(-4));
        let scaled = f.act(&Mat2::from_ints(field, 2, 0, 0, 1)).unwrap();
        assert_eq!(scaled, q(2, &[1, 0, 4]));
        assert_eq!(scaled.disc().unwrap(), int(-16));
        assert_eq!(
            f.act(&Mat2::from_ints(field, 1, 2, 2, 4)),
            Err(Error::SingularMatrix)
        );
        assert_eq!(q(3, &[0, 0, 0, 0]).disc(), Err(Error::ZeroForm));
    }
}
