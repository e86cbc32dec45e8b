//! Exact scalars and truncated series: rationals, algebraic number fields
//! given by an irreducible minimal polynomial, univariate polynomials over
//! those fields, factorization, field towers and Puiseux truncations at
//! infinity.

mod algebraic;
pub mod extension;
pub mod factor;
pub mod qpoly;
mod series;
mod unipoly;

pub use algebraic::{AlgebraicNumber, NumberField};
pub use series::{Exponent, OrderBound, PuiseuxTruncation};
pub use unipoly::UniPoly;
pub(crate) use unipoly::{format_term, join_terms};

use num::{BigInt, BigRational};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact equality of two optional fields, comparing minimal polynomials.
pub fn same_field(
    a: Option<&std::sync::Arc<NumberField>>,
    b: Option<&std::sync::Arc<NumberField>>,
) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => std::sync::Arc::ptr_eq(x, y) || x.minpoly() == y.minpoly(),
        _ => false,
    }
}
