//! Weierstrass equations, their discriminants, changes of variables, quadratic
//! twists and d-th power covers.

mod equation;
mod transform;

pub use equation::{Validation, WeierstrassEq};
pub use transform::{transform, EqTransform};

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::quadfield::KElement;

/// Y^2 = sum delta^{2g+1-i} p_i X^i for a pointed equation with Q = 0.
pub fn quadratic_twist(eq: &WeierstrassEq, delta: &KElement) -> Result<WeierstrassEq> {
    if delta.is_zero() {
        return Err(Error::ZeroTwist);
    }
    if !eq.q().is_zero() || !eq.has_pointed_shape() {
        return Err(Error::Precondition("twist needs a pointed equation with Q = 0".into()));
    }
    let g = eq.genus();
    let field = eq.field().join(delta.field());
    let coeffs: Vec<KElement> = eq
        .p()
        .padded(2 * g + 2)
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i <= 2 * g + 1 {
                c * &delta.pow((2 * g + 1 - i) as i64)
            } else {
                c.clone()
            }
        })
        .collect();
    WeierstrassEq::new_pointed(field, g, Poly::new(field, coeffs), Poly::zero(field))
}

/// y^2 + Q(alpha x^d) y = P(alpha x^d), of genus d(g0+1) - 1.
pub fn power_cover(eq: &WeierstrassEq, d: usize, alpha: &KElement) -> Result<WeierstrassEq> {
    if d == 0 || alpha.is_zero() {
        return Err(Error::Precondition("power cover needs d >= 1 and alpha != 0".into()));
    }
    let g0 = eq.genus();
    let f = eq.f_poly();
    let a0 = f.coeff(2 * g0 + 2);
    let an = f.coeff(0);
    if a0.is_zero() || an.is_zero() {
        return Err(Error::RamifiedAtZeroOrInfinity);
    }
    let field = eq.field().join(alpha.field());
    let mut inner = vec![KElement::zero(field); d + 1];
    inner[d] = alpha.clone();
    let inner = Poly::new(field, inner);
    let g = d * (g0 + 1) - 1;
    WeierstrassEq::new(field, g, eq.p().compose(&inner), eq.q().compose(&inner))
}
