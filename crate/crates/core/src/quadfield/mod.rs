//! Arithmetic of Q and imaginary quadratic fields: elements, ideals, primes,
//! residue fields, class groups and approximation.

pub mod classgroup;
pub mod crt;
pub mod factor;
mod field;
pub mod ideal;
pub mod prime;
pub mod residue;

pub use classgroup::{find_field_with_class_element_of_order, principal_generator, ClassGroup, Form};
pub use crt::{crt_approximate, Target};
pub use field::{FieldSpec, KElement};
pub(crate) use field::is_squarefree;
pub use ideal::FractionalIdeal;
pub use prime::{factor_ideal, primes_above, PrimeIdeal, Splitting, INFINITE_VALUATION};
pub use residue::{Fe, Fq};
