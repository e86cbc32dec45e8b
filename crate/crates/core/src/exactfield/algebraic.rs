//! Algebraic number fields `Q[λ]/(m(λ))` and their elements.
//!
//! Elements are residue classes of rational polynomials modulo the monic
//! minimal polynomial. Elements whose residue is a constant collapse to the
//! rational variant, so equality is structural.

use super::qpoly::{self, QPoly};
use super::{factor, Rational};
use crate::error::{Error, Result};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    minpoly: QPoly,
}

impl NumberField {
    /// Builds `Q[λ]/(m)`, checking that `m` is irreducible of degree ≥ 1.
    pub fn new(minpoly: &[Rational]) -> Result<Arc<Self>> {
        let m = qpoly::trimmed(minpoly.to_vec());
        if m.len() < 2 || !factor::is_irreducible(&m) {
            return Err(Error::ReducibleMinpoly);
        }
        Ok(Self::new_unchecked(&m))
    }

    pub(crate) fn new_unchecked(minpoly: &[Rational]) -> Arc<Self> {
        Arc::new(NumberField {
            minpoly: qpoly::monic(&qpoly::trimmed(minpoly.to_vec())),
        })
    }

    pub fn from_ints(minpoly: &[i64]) -> Result<Arc<Self>> {
        Self::new(&qpoly::from_ints(minpoly))
    }

    /// Monic minimal polynomial, ascending coefficients.
    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn generator(self: &Arc<Self>) -> AlgebraicNumber {
        self.element(&[Rational::zero(), Rational::one()])
    }

    pub fn element(self: &Arc<Self>, rep: &[Rational]) -> AlgebraicNumber {
        AlgebraicNumber::reduce(qpoly::rem(rep, &self.minpoly), self)
    }

    pub fn element_from_ints(self: &Arc<Self>, rep: &[i64]) -> AlgebraicNumber {
        self.element(&qpoly::from_ints(rep))
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Rat(Rational),
    Elt(QPoly, Arc<NumberField>),
}

/// Exact element of `Q` or of a number field.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber(Repr);

impl AlgebraicNumber {
    fn reduce(rep: QPoly, field: &Arc<NumberField>) -> Self {
        if rep.len() <= 1 {
            AlgebraicNumber(Repr::Rat(
                rep.into_iter().next().unwrap_or_else(Rational::zero),
            ))
        } else {
            AlgebraicNumber(Repr::Elt(rep, field.clone()))
        }
    }

    pub fn zero() -> Self {
        AlgebraicNumber(Repr::Rat(Rational::zero()))
    }

    pub fn one() -> Self {
        AlgebraicNumber(Repr::Rat(Rational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        AlgebraicNumber(Repr::Rat(super::rat(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        AlgebraicNumber(Repr::Rat(super::ratio(n, d)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, Repr::Rat(_))
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Rat(r) => Some(r.clone()),
            Repr::Elt(..) => None,
        }
    }

    /// Field the element lives in; `None` for rationals.
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Elt(_, f) => Some(f),
        }
    }

    /// Residue representative as ascending coefficients (at least one entry).
    pub fn rep(&self) -> QPoly {
        match &self.0 {
            Repr::Rat(r) => vec![r.clone()],
            Repr::Elt(p, _) => p.clone(),
        }
    }

    pub fn minpoly(&self) -> Option<&[Rational]> {
        self.field().map(|f| f.minpoly())
    }

    fn common(&self, other: &Self) -> Result<Option<Arc<NumberField>>> {
        match (self.field(), other.field()) {
            (None, None) => Ok(None),
            (Some(f), None) | (None, Some(f)) => Ok(Some(f.clone())),
            (Some(f), Some(g)) => {
                if Arc::ptr_eq(f, g) || f.minpoly == g.minpoly {
                    Ok(Some(f.clone()))
                } else {
                    Err(Error::IncompatibleExtension)
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &other.0) {
            return Ok(AlgebraicNumber(Repr::Rat(a + b)));
        }
        let f = self.common(other)?.expect("algebraic operand");
        Ok(Self::reduce(qpoly::add(&self.rep(), &other.rep()), &f))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &other.0) {
            return Ok(AlgebraicNumber(Repr::Rat(a - b)));
        }
        let f = self.common(other)?.expect("algebraic operand");
        Ok(Self::reduce(qpoly::sub(&self.rep(), &other.rep()), &f))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Ok(AlgebraicNumber(Repr::Rat(a * b))),
            (Repr::Rat(a), Repr::Elt(p, f)) | (Repr::Elt(p, f), Repr::Rat(a)) => {
                Ok(Self::reduce(qpoly::scale(p, a), f))
            }
            (Repr::Elt(p, _), Repr::Elt(q, _)) => {
                let f = self.common(other)?.expect("algebraic operand");
                Ok(Self::reduce(reduce_mod(qpoly::mul(p, q), &f.minpoly), &f))
            }
        }
    }

    /// Inverse through the extended gcd of the residue and the minimal polynomial.
    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(AlgebraicNumber(Repr::Rat(r.recip())))
                }
            }
            Repr::Elt(p, f) => {
                let (g, s, _) = qpoly::ext_gcd(p, &f.minpoly);
                if g.len() != 1 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Self::reduce(qpoly::rem(&s, &f.minpoly), f))
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Moves the element into `field`; rationals are accepted everywhere.
    pub fn in_field(&self, field: Option<&Arc<NumberField>>) -> Result<Self> {
        match (self.field(), field) {
            (None, _) => Ok(self.clone()),
            (Some(f), Some(g)) if Arc::ptr_eq(f, g) || f.minpoly == g.minpoly => Ok(self.clone()),
            _ => Err(Error::IncompatibleExtension),
        }
    }

    /// Evaluates the residue at `image`, which must be a root of the minimal polynomial.
    pub fn map_generator(&self, image: &AlgebraicNumber) -> Self {
        let mut acc = Self::zero();
        for c in self.rep().iter().rev() {
            acc = &(&acc * image) + &AlgebraicNumber(Repr::Rat(c.clone()));
        }
        acc
    }

    fn sort_key(&self) -> (usize, QPoly, QPoly) {
        match &self.0 {
            Repr::Rat(r) => (0, Vec::new(), vec![r.clone()]),
            Repr::Elt(p, f) => (f.degree(), f.minpoly.clone(), p.clone()),
        }
    }

    /// Renders with `symbol` for the field generator.
    pub fn format_with(&self, symbol: &str) -> String {
        match &self.0 {
            Repr::Rat(r) => r.to_string(),
            Repr::Elt(p, _) => format_qpoly(p, symbol),
        }
    }

    /// True when the printed form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        match &self.0 {
            Repr::Rat(_) => false,
            Repr::Elt(p, _) => p.iter().filter(|c| !c.is_zero()).count() > 1,
        }
    }
}

pub(crate) fn reduce_mod(mut p: QPoly, m: &[Rational]) -> QPoly {
    let d = m.len() - 1;
    while p.len() > d {
        let c = p.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let shift = p.len() - d;
        for (j, mj) in m.iter().take(d).enumerate() {
            p[shift + j] -= &c * mj;
        }
    }
    qpoly::trimmed(p)
}

pub(crate) fn format_qpoly(p: &[Rational], symbol: &str) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => symbol.to_string(),
            _ => format!("{symbol}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a == b,
            (Repr::Elt(p, f), Repr::Elt(q, g)) => {
                p == q && (Arc::ptr_eq(f, g) || f.minpoly == g.minpoly)
            }
            _ => false,
        }
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sort_key().hash(state);
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by (field degree, minimal polynomial, residue); only used for
/// deterministic output ordering.
impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl From<Rational> for AlgebraicNumber {
    fn from(r: Rational) -> Self {
        AlgebraicNumber(Repr::Rat(r))
    }
}

impl From<i64> for AlgebraicNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("λ"))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a AlgebraicNumber> for &'a AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
                self.$checked(rhs).expect("incompatible algebraic operands")
            }
        }
        impl $tr<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                (&self)
                    .$checked(&rhs)
                    .expect("incompatible algebraic operands")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        match &self.0 {
            Repr::Rat(r) => AlgebraicNumber(Repr::Rat(-r)),
            Repr::Elt(p, f) => {
                AlgebraicNumber(Repr::Elt(p.iter().map(|c| -c).collect(), f.clone()))
            }
        }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> Arc<NumberField> {
        NumberField::from_ints(&[-2, 1, -4, 1]).unwrap()
    }

    #[test]
    fn cube_reduces_modulo_minpoly() {
        let k = m();
        let l = k.generator();
        let l2 = &l * &l;
        assert_eq!(&l * &l2, k.element_from_ints(&[2, -1, 4]));
    }

    #[test]
    fn inverse_of_lambda_minus_one() {
        let k = m();
        let a = &k.generator() - &AlgebraicNumber::one();
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn rational_promotes() {
        let k = m();
        let one = k.element_from_ints(&[1]);
        assert_eq!(
            &one + &AlgebraicNumber::from_int(2),
            AlgebraicNumber::from_int(3)
        );
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(AlgebraicNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = m().generator();
        let b = NumberField::from_ints(&[-2, 0, 1]).unwrap().generator();
        assert_eq!(a.checked_add(&b), Err(Error::IncompatibleExtension));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert_eq!(
            NumberField::from_ints(&[-1, 0, 1]).unwrap_err(),
            Error::ReducibleMinpoly
        );
    }
}
