//! GF(2) linear algebra and exact polynomial arithmetic.

pub(crate) mod gf2;
mod poly;

pub use gf2::Gf2Matrix;
pub use poly::{BracketPoly, Laurent, Monomial, QuarterLaurent};
