//! Exact Laurent-polynomial and quantum-integer arithmetic.

mod frac;
mod poly;
mod quantum;

pub use frac::{frac_add, frac_mul, frac_reduce, frac_to_poly, poly_gcd, FracAccumulator, PolyFraction};
pub use poly::LaurentPoly;
pub use quantum::{qfact, qint, qmultinom, QBinomials};

#[cfg(test)]
mod proptests;
