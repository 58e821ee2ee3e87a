use crate::error::{Error, Result};
use crate::exactpoly::{BinaryForm, Mat2, Poly};
use crate::quadfield::{FieldSpec, KElement};
use crate::weier::WeierstrassEq;

/// New coordinates in terms of old ones:
/// u = (a x + b)/(c x + d), z = (e y + H(x))/(c x + d)^{g+1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EqTransform {
    genus: usize,
    m: Mat2,
    e: KElement,
    h: Poly,
}

/// sum h_i (a x + b)^i (c x + d)^{n-i}
pub(crate) fn hom(h: &Poly, n: usize, m: &Mat2) -> Poly {
    if h.is_zero() {
        return Poly::zero(h.field().join(m.field()));
    }
    BinaryForm::from_poly(h, n)
        .expect("degree bound")
        .act_unchecked(m)
        .to_poly()
}

impl EqTransform {
    pub fn new(genus: usize, m: Mat2, e: KElement, h: Poly) -> Result<Self> {
        if m.det().is_zero() || e.is_zero() {
            return Err(Error::SingularMatrix);
        }
        if h.degree().is_some_and(|d| d > genus + 1) {
            return Err(Error::DegreeViolation(format!("deg H > {}", genus + 1)));
        }
        Ok(EqTransform { genus, m, e, h })
    }

    pub fn identity(genus: usize, field: FieldSpec) -> Self {
        EqTransform {
            genus,
            m: Mat2::identity(field),
            e: KElement::one(field),
            h: Poly::zero(field),
        }
    }

    /// u = a x + r, z = b y + h(x).
    pub fn diagonal(genus: usize, a: &KElement, r: &KElement, b: &KElement, h: &Poly) -> Result<Self> {
        let f = a.field().join(r.field()).join(b.field()).join(h.field());
        EqTransform::new(
            genus,
            Mat2::new(a.clone(), r.clone(), KElement::zero(f), KElement::one(f)),
            b.clone(),
            h.clone(),
        )
    }

    /// The change x = a x' + r, y = b y' + h(x), read as (x, y) -> (x', y').
    pub fn from_local(genus: usize, a: &KElement, r: &KElement, b: &KElement, h: &Poly) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let ai = a.inv().unwrap();
        let bi = b.inv().unwrap();
        EqTransform::diagonal(genus, &ai, &-(r * &ai), &bi, &h.scale(&-bi.clone()))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn e(&self) -> &KElement {
        &self.e
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn det(&self) -> KElement {
        self.m.det()
    }

    pub fn is_diagonal(&self) -> bool {
        self.m.c.is_zero() && self.m.d.is_one()
    }

    /// Apply `other` first, then self.
    pub fn compose(&self, other: &EqTransform) -> EqTransform {
        let g = self.genus;
        EqTransform {
            genus: g,
            m: self.m.mul(&other.m),
            e: &self.e * &other.e,
            h: other.h.scale(&self.e).add(&hom(&self.h, g + 1, &other.m)),
        }
    }

    pub fn inverse(&self) -> EqTransform {
        let g = self.genus;
        let det = self.m.det();
        let di = det.inv().unwrap();
        let adj = self.m.adjugate();
        let minv = Mat2::new(&adj.a * &di, &adj.b * &di, &adj.c * &di, &adj.d * &di);
        let ei = self.e.inv().unwrap();
        EqTransform {
            genus: g,
            m: minv.clone(),
            e: ei.clone(),
            h: hom(&self.h, g + 1, &minv).scale(&-ei),
        }
    }

    /// The factor e^{4(2g+1)} det^{-2(g+1)(2g+1)} relating discriminants.
    pub fn discriminant_factor(&self) -> KElement {
        let g = self.genus as i64;
        &self.e.pow(4 * (2 * g + 1)) * &self.m.det().pow(-2 * (g + 1) * (2 * g + 1))
    }

    /// The equation satisfied by the new coordinates.
    pub fn apply(&self, eq: &WeierstrassEq) -> Result<WeierstrassEq> {
        let g = eq.genus();
        if g != self.genus {
            return Err(Error::Precondition(format!(
                "transform for genus {} applied to genus {g}",
                self.genus
            )));
        }
        // (x, y) in terms of (u, z) has the same shape, with the inverse data.
        let inv = self.inverse();
        let field = eq.field().join(self.m.field()).join(self.e.field());
        let qt = hom(eq.q(), g + 1, &inv.m);
        let pt = hom(eq.p(), 2 * g + 2, &inv.m);
        let hp = &inv.h;
        let ep = &inv.e;
        let q_new = qt.add(&hp.scale(&KElement::from_int(field, 2))).scale(&ep.inv().unwrap());
        let p_new = pt
            .sub(&hp.mul(hp))
            .sub(&qt.mul(hp))
            .scale(&ep.pow(-2));
        WeierstrassEq::new(field, g, p_new, q_new)
    }
}

/// transform(E, T)
pub fn transform(eq: &WeierstrassEq, t: &EqTransform) -> Result<WeierstrassEq> {
    t.apply(eq)
}
