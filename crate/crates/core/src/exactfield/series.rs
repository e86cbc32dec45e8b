//! Truncated Puiseux series in `z` at infinity, with an explicit bound below
//! which coefficients are unknown.

use super::{AlgebraicNumber, NumberField};
use crate::error::{Error, Result};
use num::{Integer, One, Rational64, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Exponent = Rational64;

/// Validity range of a truncation: `Exact` means every coefficient is known;
/// `Below(b)` means coefficients with exponent `> b` are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderBound {
    Exact,
    Below(Exponent),
}

impl OrderBound {
    pub fn value(self) -> Option<Exponent> {
        match self {
            OrderBound::Exact => None,
            OrderBound::Below(b) => Some(b),
        }
    }

    pub fn max(self, o: OrderBound) -> OrderBound {
        match (self, o) {
            (OrderBound::Exact, x) | (x, OrderBound::Exact) => x,
            (OrderBound::Below(a), OrderBound::Below(b)) => OrderBound::Below(a.max(b)),
        }
    }

    fn shift(self, e: Exponent) -> OrderBound {
        match self {
            OrderBound::Exact => OrderBound::Exact,
            OrderBound::Below(b) => OrderBound::Below(b + e),
        }
    }

    /// True when the coefficient of `z^e` is determined.
    pub fn covers(self, e: Exponent) -> bool {
        match self {
            OrderBound::Exact => true,
            OrderBound::Below(b) => e > b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxTruncation {
    terms: BTreeMap<Exponent, AlgebraicNumber>,
    bound: OrderBound,
}

impl PuiseuxTruncation {
    pub fn new(
        terms: impl IntoIterator<Item = (Exponent, AlgebraicNumber)>,
        bound: OrderBound,
    ) -> Self {
        let mut map: BTreeMap<Exponent, AlgebraicNumber> = BTreeMap::new();
        for (e, c) in terms {
            if !bound.covers(e) {
                continue;
            }
            let slot = map.entry(e).or_insert_with(AlgebraicNumber::zero);
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxTruncation { terms: map, bound }
    }

    pub fn exact(terms: impl IntoIterator<Item = (Exponent, AlgebraicNumber)>) -> Self {
        Self::new(terms, OrderBound::Exact)
    }

    pub fn zero() -> Self {
        Self::exact(std::iter::empty())
    }

    pub fn constant(c: AlgebraicNumber) -> Self {
        Self::exact([(Exponent::zero(), c)])
    }

    pub fn monomial(c: AlgebraicNumber, e: Exponent) -> Self {
        Self::exact([(e, c)])
    }

    /// The variable `z` itself.
    pub fn z() -> Self {
        Self::monomial(AlgebraicNumber::one(), Exponent::one())
    }

    pub fn bound(&self) -> OrderBound {
        self.bound
    }

    pub fn order_bound(&self) -> Option<Exponent> {
        self.bound.value()
    }

    pub fn is_exact(&self) -> bool {
        self.bound == OrderBound::Exact
    }

    /// True when no known coefficient is nonzero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &AlgebraicNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exponent) -> AlgebraicNumber {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(AlgebraicNumber::zero)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn leading(&self) -> Option<(Exponent, &AlgebraicNumber)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Least common denominator of the stored exponents.
    pub fn ramification(&self) -> u32 {
        self.terms.keys().fold(1i64, |acc, e| acc.lcm(e.denom())) as u32
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.terms.values().find_map(|c| c.field().cloned())
    }

    fn lead_or_bound(&self) -> Option<Exponent> {
        self.leading().map(|(e, _)| e).or(self.bound.value())
    }

    pub fn add(&self, o: &Self) -> Self {
        let bound = self.bound.max(o.bound);
        Self::new(
            self.terms
                .iter()
                .chain(o.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
            bound,
        )
    }

    pub fn neg(&self) -> Self {
        PuiseuxTruncation {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            bound: self.bound,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &AlgebraicNumber) -> Self {
        Self::new(self.terms.iter().map(|(e, x)| (*e, x * c)), self.bound)
    }

    /// Multiplies by `z^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        PuiseuxTruncation {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k + e, c.clone()))
                .collect(),
            bound: self.bound.shift(e),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_floor(o, None)
    }

    /// Product with coefficients at exponents `≤ floor` discarded.
    pub fn mul_floor(&self, o: &Self, floor: Option<Exponent>) -> Self {
        let exact_zero = |s: &Self| s.is_exact() && s.is_zero();
        if exact_zero(self) || exact_zero(o) {
            return Self::zero();
        }
        let mut bound = OrderBound::Exact;
        if let OrderBound::Below(b) = self.bound {
            bound = bound.max(OrderBound::Below(b + o.lead_or_bound().expect("nonzero")));
        }
        if let OrderBound::Below(b) = o.bound {
            bound = bound.max(OrderBound::Below(
                b + self.lead_or_bound().expect("nonzero"),
            ));
        }
        if let Some(f) = floor {
            bound = bound.max(OrderBound::Below(f));
        }
        let mut map: BTreeMap<Exponent, AlgebraicNumber> = BTreeMap::new();
        for (ea, ca) in self.terms.iter().rev() {
            for (eb, cb) in o.terms.iter().rev() {
                let e = *ea + *eb;
                if !bound.covers(e) {
                    break;
                }
                let slot = map.entry(e).or_insert_with(AlgebraicNumber::zero);
                *slot = &*slot + &(ca * cb);
            }
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxTruncation { terms: map, bound }
    }

    pub fn pow(&self, n: u32, floor: Option<Exponent>) -> Self {
        let mut acc = Self::constant(AlgebraicNumber::one());
        for _ in 0..n {
            acc = acc.mul_floor(self, floor);
        }
        acc
    }

    /// Reciprocal, with coefficients at exponents `≤ floor` discarded.
    pub fn inverse(&self, floor: Exponent) -> Result<Self> {
        let (lam, c) = self
            .leading()
            .ok_or_else(|| Error::NeedsMoreTerms("denominator has no known leading term".into()))?;
        let cinv = c.inv()?;
        // self = c z^lam (1 + u)
        let u = self
            .shift(-lam)
            .scale(&cinv)
            .sub(&Self::constant(AlgebraicNumber::one()));
        let wfloor = floor + lam;
        let one = Self::constant(AlgebraicNumber::one());
        let mut w = one.clone();
        loop {
            let next = one.sub(&u.mul_floor(&w, Some(wfloor)));
            if next == w {
                break;
            }
            w = next;
        }
        Ok(w.scale(&cinv).shift(-lam))
    }

    pub fn div(&self, o: &Self, floor: Exponent) -> Result<Self> {
        if self.is_exact() && self.is_zero() {
            return Ok(Self::zero());
        }
        let ls = self.lead_or_bound().expect("nonzero");
        let inv = o.inverse(floor - ls)?;
        Ok(self.mul_floor(&inv, Some(floor)))
    }

    /// Keeps the exponents `≥ b` (the part of an asymptote, for `b = 0`).
    pub fn truncate(&self, b: Exponent) -> Self {
        let known = match self.bound {
            OrderBound::Exact => true,
            OrderBound::Below(x) => x < b,
        };
        let bound = if known { OrderBound::Exact } else { self.bound };
        Self::new(self.terms.range(b..).map(|(e, c)| (*e, c.clone())), bound)
    }

    /// Drops exponents `≤ b` and records `b` as the new bound.
    pub fn restrict_above(&self, b: Exponent) -> Self {
        let bound = self.bound.max(OrderBound::Below(b));
        Self::new(self.terms.iter().map(|(e, c)| (*e, c.clone())), bound)
    }

    /// Non-negative-exponent part; fails unless all of it is known.
    pub fn non_negative_part(&self) -> Result<Self> {
        if !self.bound.covers(Exponent::zero()) {
            return Err(Error::NeedsMoreTerms(
                "non-negative part not determined".into(),
            ));
        }
        Ok(self.truncate(Exponent::zero()))
    }

    /// Substitutes `z = t^k`; the result is a series in `t`.
    pub fn substitute_power(&self, k: u32) -> Self {
        let kk = Exponent::from_integer(k as i64);
        PuiseuxTruncation {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e * kk, c.clone()))
                .collect(),
            bound: match self.bound {
                OrderBound::Exact => OrderBound::Exact,
                OrderBound::Below(b) => OrderBound::Below(b * kk),
            },
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(Exponent, &AlgebraicNumber) -> AlgebraicNumber) -> Self {
        Self::new(self.terms.iter().map(|(e, c)| (*e, f(*e, c))), self.bound)
    }

    /// Same known terms and bound, after discarding everything at or below `b`.
    pub fn agrees_above(&self, o: &Self, b: Exponent) -> bool {
        self.restrict_above(b).terms == o.restrict_above(b).terms
    }

    /// Renders as a sum in `var`, highest exponent first, with `O(...)` for the bound.
    pub fn format_in(&self, var: &str) -> String {
        let parts: Vec<(bool, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| super::unipoly::format_term(c, &monomial_text(var, *e)))
            .collect();
        let mut s = super::unipoly::join_terms(parts);
        if let OrderBound::Below(b) = self.bound {
            if s == "0" {
                s.clear();
            } else {
                s.push_str(" + ");
            }
            let m = monomial_text(var, b);
            s.push_str(&format!("O({})", if m.is_empty() { "1" } else { &m }));
        }
        s
    }
}

/// `z^{p/q}` text; empty for exponent 0.
pub fn monomial_text(var: &str, e: Exponent) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        var.to_string()
    } else if e.is_integer() && e.is_positive() {
        format!("{var}^{}", e.numer())
    } else {
        format!("{var}^{{{e}}}")
    }
}

impl fmt::Display for PuiseuxTruncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn s(t: &[(i64, i64, i64, i64)]) -> PuiseuxTruncation {
        PuiseuxTruncation::exact(
            t.iter()
                .map(|&(n, d, a, b)| (e(n, d), AlgebraicNumber::from_ratio(a, b))),
        )
    }

    #[test]
    fn square_of_linear() {
        let a = s(&[(1, 1, 1, 1), (0, 1, -2, 1)]);
        assert_eq!(a.mul(&a), s(&[(2, 1, 1, 1), (1, 1, -4, 1), (0, 1, 4, 1)]));
    }

    #[test]
    fn add_cancels_asymptote_part() {
        let a = s(&[(1, 1, 1, 1), (0, 1, 1, 1), (-1, 1, -2, 3)]);
        let b = s(&[(0, 1, -1, 1), (1, 1, -1, 1)]);
        assert_eq!(a.add(&b), s(&[(-1, 1, -2, 3)]));
    }

    #[test]
    fn truncate_removes_negative_exponents() {
        let a = s(&[(1, 1, 1, 1), (0, 1, -2, 1), (-1, 1, -7, 3)]);
        assert_eq!(
            a.truncate(Exponent::zero()),
            s(&[(1, 1, 1, 1), (0, 1, -2, 1)])
        );
    }

    #[test]
    fn substitute_square_root() {
        let a = s(&[(1, 2, 1, 1), (0, 1, -1, 2)]);
        assert_eq!(a.substitute_power(2), s(&[(1, 1, 1, 1), (0, 1, -1, 2)]));
        assert_eq!(a.ramification(), 2);
    }

    #[test]
    fn inverse_of_z_minus_one() {
        // 1/(z - 1) = z^-1 + z^-2 + z^-3 + ...
        let a = s(&[(1, 1, 1, 1), (0, 1, -1, 1)]);
        let inv = a.inverse(e(-4, 1)).unwrap();
        assert_eq!(inv.order_bound(), Some(e(-4, 1)));
        for k in 1..=3 {
            assert!(inv.coefficient(e(-k, 1)).is_one());
        }
    }

    #[test]
    fn bound_propagates_through_product() {
        let a = PuiseuxTruncation::new(
            [(e(1, 1), AlgebraicNumber::one())],
            OrderBound::Below(e(-2, 1)),
        );
        let p = a.mul(&a);
        assert_eq!(p.order_bound(), Some(e(-1, 1)));
    }

    #[test]
    fn rendering() {
        let a = s(&[(1, 2, 1, 1), (0, 1, -1, 2), (-1, 4, 1, 1)]);
        assert_eq!(a.to_string(), "z^{1/2} - 1/2 + z^{-1/4}");
    }
}
