//! Global Weierstrass models of hyperelliptic curves over Q and imaginary
//! quadratic fields.

pub mod corpus;
pub mod error;
pub mod exactpoly;
pub mod globalmodel;
pub mod json;
pub mod quadfield;
pub mod rat;
pub mod localmin;
pub mod weier;

pub use error::{Error, Result};
