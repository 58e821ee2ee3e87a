use std::fmt;

use crate::error::{Error, Result};
use crate::quadfield::{FieldSpec, KElement};

/// Dense univariate polynomial over K, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<KElement>,
}

impl Poly {
    pub fn new(field: FieldSpec, coeffs: Vec<KElement>) -> Self {
        let mut field = field;
        for c in &coeffs {
            field = field.join(c.field());
        }
        let mut coeffs: Vec<KElement> = coeffs.into_iter().map(|c| c.with_field(field)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| KElement::from_int(field, c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: KElement) -> Self {
        Poly::new(c.field(), vec![c])
    }

    /// The polynomial x.
    pub fn x(field: FieldSpec) -> Self {
        Poly::new(field, vec![KElement::zero(field), KElement::one(field)])
    }

    /// c*x + d
    pub fn linear(c: &KElement, d: &KElement) -> Self {
        Poly::new(c.field().join(d.field()), vec![d.clone(), c.clone()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[KElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> KElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| KElement::zero(self.field))
    }

    pub fn lead(&self) -> Option<&KElement> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            self.field.join(o.field),
            (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            self.field.join(o.field),
            (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let field = self.field.join(o.field);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(field);
        }
        let mut out = vec![KElement::zero(field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(field, out)
    }

    pub fn scale(&self, c: &KElement) -> Poly {
        Poly::new(
            self.field.join(c.field()),
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::constant(KElement::one(self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &KElement) -> KElement {
        let mut acc = KElement::zero(self.field.join(x.field()));
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &KElement::from_int(self.field, i as i64))
                .collect(),
        )
    }

    /// self(inner)
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field.join(inner.field));
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// self(a*x + b)
    pub fn substitute_affine(&self, a: &KElement, b: &KElement) -> Poly {
        self.compose(&Poly::linear(a, b))
    }

    /// Euclidean division; errors when dividing by zero.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.lead().ok_or(Error::ZeroPolynomial)?.clone();
        let dd = d.degree().unwrap();
        let field = self.field.join(d.field);
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Ok((Poly::zero(field), self.clone()));
        }
        let mut q = vec![KElement::zero(field); n - dd];
        for i in (dd..n).rev() {
            if r[i].is_zero() {
                continue;
            }
            let t = &r[i] / &dl;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = &r[i - dd + j] - &(&t * c);
            }
            q[i - dd] = t;
        }
        Ok((Poly::new(field, q), Poly::new(field, r)))
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<KElement> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    /// x^n * self(1/x) for a nominal degree n >= deg(self).
    pub fn reversed(&self, n: usize) -> Poly {
        let mut c = self.padded(n + 1);
        c.reverse();
        Poly::new(self.field, c)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Resultant of f and g with respect to their exact degrees, computed by the
/// Euclidean remainder sequence.
pub fn resultant(f: &Poly, g: &Poly) -> Result<KElement> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().join(g.field());
    let mut f = f.clone();
    let mut g = g.clone();
    let mut acc = KElement::one(field);
    loop {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        if n == 0 {
            return Ok(&acc * &g.lead().unwrap().pow(m as i64));
        }
        if m == 0 {
            return Ok(&acc * &f.lead().unwrap().pow(n as i64));
        }
        let (_, r) = f.divrem(&g)?;
        if r.is_zero() {
            return Ok(KElement::zero(field));
        }
        let k = r.degree().unwrap();
        // res(f, g) = (-1)^{mn} lc(g)^{m-k} res(g, r)
        let mut factor = g.lead().unwrap().pow((m - k) as i64);
        if (m * n) % 2 == 1 {
            factor = -factor;
        }
        acc = &acc * &factor;
        f = g;
        g = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::Rational, c)
    }

    #[test]
    fn small_resultants() {
        let two = KElement::from_int(FieldSpec::Rational, 2);
        assert_eq!(resultant(&q(&[-1, 1]), &q(&[1, 1])).unwrap(), two);
        let four = KElement::from_int(FieldSpec::Rational, 4);
        assert_eq!(resultant(&q(&[1, 0, 1]), &q(&[-1, 0, 1])).unwrap(), four);
        let f = q(&[3, -1, 0, 2]);
        assert!(resultant(&f, &f).unwrap().is_zero());
        assert_eq!(resultant(&q(&[]), &f), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division() {
        let f = q(&[1, 2, 3, 4]);
        let d = q(&[1, 1]);
        let (qq, r) = f.divrem(&d).unwrap();
        assert_eq!(qq.mul(&d).add(&r), f);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn composition_and_reversal() {
        let f = q(&[1, 0, 1]);
        assert_eq!(f.substitute_affine(
            &KElement::from_int(FieldSpec::Rational, 1),
            &KElement::from_int(FieldSpec::Rational, 1)
        ), q(&[2, 2, 1]));
        assert_eq!(q(&[1, 2]).reversed(3), q(&[0, 0, 2, 1]));
    }
}
