use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::{BinaryForm, Poly};
use crate::quadfield::{FieldSpec, KElement};

/// y^2 + Q(x) y = P(x) with deg Q <= g+1 and deg P <= 2g+2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassEq {
    field: FieldSpec,
    genus: usize,
    p: Poly,
    q: Poly,
    pointed: bool,
}

/// What `validate` found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub genus: usize,
    pub deg_f: usize,
    pub ramified_at_infinity: bool,
    /// z^2 + t^{g+1} Q(1/t) z = t^{2g+2} P(1/t)
    pub infinity_chart: WeierstrassEq,
}

impl WeierstrassEq {
    pub fn new(field: FieldSpec, genus: usize, p: Poly, q: Poly) -> Result<Self> {
        if genus == 0 {
            return Err(Error::DegreeViolation("genus must be at least 1".into()));
        }
        let field = field.join(p.field()).join(q.field());
        if p.degree().is_some_and(|d| d > 2 * genus + 2) {
            return Err(Error::DegreeViolation(format!("deg P > {}", 2 * genus + 2)));
        }
        if q.degree().is_some_and(|d| d > genus + 1) {
            return Err(Error::DegreeViolation(format!("deg Q > {}", genus + 1)));
        }
        let p = Poly::new(field, p.coeffs().to_vec());
        let q = Poly::new(field, q.coeffs().to_vec());
        Ok(WeierstrassEq { field, genus, p, q, pointed: false })
    }

    /// A pointed equation: deg Q <= g and P monic of degree 2g+1.
    pub fn new_pointed(field: FieldSpec, genus: usize, p: Poly, q: Poly) -> Result<Self> {
        let mut e = WeierstrassEq::new(field, genus, p, q)?;
        e.check_pointed()?;
        e.pointed = true;
        Ok(e)
    }

    /// Convenience constructor from integer coefficient lists.
    pub fn from_ints(field: FieldSpec, genus: usize, p: &[i64], q: &[i64]) -> Result<Self> {
        WeierstrassEq::new(field, genus, Poly::from_ints(field, p), Poly::from_ints(field, q))
    }

    fn check_pointed(&self) -> Result<()> {
        let g = self.genus;
        if self.q.degree().is_some_and(|d| d > g) {
            return Err(Error::DegreeViolation(format!("pointed equation needs deg Q <= {g}")));
        }
        if self.p.degree() != Some(2 * g + 1) || !self.p.lead().unwrap().is_one() {
            return Err(Error::DegreeViolation(format!(
                "pointed equation needs P monic of degree {}",
                2 * g + 1
            )));
        }
        Ok(())
    }

    /// Structural pointedness, regardless of the flag.
    pub fn has_pointed_shape(&self) -> bool {
        self.check_pointed().is_ok()
    }

    /// Set or clear the pointed flag; setting checks the shape.
    pub fn with_pointed(&self, pointed: bool) -> Result<Self> {
        let mut e = self.clone();
        if pointed {
            e.check_pointed()?;
        }
        e.pointed = pointed;
        Ok(e)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    /// F = 4P + Q^2.
    pub fn f_poly(&self) -> Poly {
        self.p
            .scale(&KElement::from_int(self.field, 4))
            .add(&self.q.mul(&self.q))
    }

    /// F as a binary form of degree 2g+2.
    pub fn f_form(&self) -> BinaryForm {
        BinaryForm::from_poly(&self.f_poly(), 2 * self.genus + 2).expect("degree bound holds")
    }

    /// 2^{-4(g+1)} disc(4P + Q^2).
    pub fn discriminant(&self) -> Result<KElement> {
        let f = self.f_form();
        if f.is_zero() {
            return Err(Error::SingularGenericFiber);
        }
        let d = f.disc()?;
        if d.is_zero() {
            return Err(Error::SingularGenericFiber);
        }
        let two = KElement::from_int(self.field, 2);
        Ok(&d * &two.pow(-4 * (self.genus as i64 + 1)))
    }

    pub fn validate(&self) -> Result<Validation> {
        self.discriminant()?;
        if self.pointed {
            self.check_pointed()?;
        }
        let g = self.genus;
        let f = self.f_poly();
        let deg_f = f.degree().unwrap();
        if deg_f < 2 * g + 1 {
            return Err(Error::DegreeViolation(format!("deg F = {deg_f} < {}", 2 * g + 1)));
        }
        let infinity_chart = WeierstrassEq::new(
            self.field,
            g,
            self.p.reversed(2 * g + 2),
            self.q.reversed(g + 1),
        )?;
        Ok(Validation {
            genus: g,
            deg_f,
            ramified_at_infinity: deg_f == 2 * g + 1,
            infinity_chart,
        })
    }
}

impl fmt::Debug for WeierstrassEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeierstrassEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 + ({})*y = {}  [g={}, {}]", self.q, self.p, self.genus, self.field)
    }
}
