//! Exact polynomial arithmetic over Q and imaginary quadratic fields:
//! resultants, binary-form discriminants and fractional-linear substitution.

mod form;
mod poly;

pub use form::{BinaryForm, Mat2};
pub use poly::{resultant, Poly};

use crate::error::Result;
use crate::quadfield::KElement;

/// Discriminant of a binary form; see [`BinaryForm::disc`].
pub fn disc_form(b: &BinaryForm) -> Result<KElement> {
    b.disc()
}

/// The form b composed with the substitution m.
pub fn act_on_form(b: &BinaryForm, m: &Mat2) -> Result<BinaryForm> {
    b.act(m)
}
