//! Infinity branches and generalized asymptotes of algebraic space curves.
//!
//! A space curve is given implicitly by two polynomials `f1, f2` in
//! `x1, x2, x3` with rational coefficients. The crate projects it onto the
//! `(x1, x2)` plane, expands the plane branches at infinity as Puiseux
//! series, lifts them back through a rational lift function and builds one
//! polynomial asymptote per branch, either from the truncated series or from
//! a triangular linear system.

pub mod error;
pub mod exactfield;
pub mod numeric;
pub mod planecurve;
pub mod polynomial;
pub mod spacecurve;

pub use error::{Error, Result};
pub use exactfield::{AlgebraicNumber, NumberField, PuiseuxTruncation, Rational};
pub use polynomial::MultiPoly;
