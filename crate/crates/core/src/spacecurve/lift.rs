//! Space branches `(z, r2(z), r3(z))` obtained by lifting plane branches.

use super::project::LiftFunction;
use crate::error::{Error, Result};
use crate::exactfield::{AlgebraicNumber, Exponent, PuiseuxTruncation};
use crate::planecurve::{series_degree, substitute_series, BranchSeries, PlaneBranch};
use crate::polynomial::MultiPoly;
use num::{One, Zero};

const MAX_DEEPENING: usize = 64;

/// Infinity branch of the space curve, representing its conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceBranch {
    pub plane: PlaneBranch,
    pub r2: PuiseuxTruncation,
    pub r3: PuiseuxTruncation,
}

impl SpaceBranch {
    pub fn m2(&self) -> Option<&AlgebraicNumber> {
        self.plane.m2()
    }

    /// Coefficient of `z` in `r3`.
    pub fn m3(&self) -> AlgebraicNumber {
        self.r3.coefficient(Exponent::one())
    }

    pub fn ramification(&self) -> u32 {
        self.plane.ramification
    }

    /// Projective point `(p1 : p2 : p3 : 0)` approached by the branch.
    pub fn infinity_point(&self) -> [AlgebraicNumber; 3] {
        let growth = [&self.r2, &self.r3]
            .iter()
            .filter_map(|s| s.leading().map(|(e, _)| e))
            .fold(Exponent::one(), |a, e| a.max(e));
        let first = if growth == Exponent::one() {
            AlgebraicNumber::one()
        } else {
            AlgebraicNumber::zero()
        };
        [
            first,
            self.r2.coefficient(growth),
            self.r3.coefficient(growth),
        ]
    }

    /// Least common denominator of the non-negative exponents of `r2, r3`.
    pub fn degree(&self) -> u32 {
        series_degree(&[&self.r2, &self.r3])
    }
}

impl BranchSeries for SpaceBranch {
    fn components(&self) -> Vec<&PuiseuxTruncation> {
        vec![&self.r2, &self.r3]
    }
}

fn quotient(
    num: &PuiseuxTruncation,
    den: &PuiseuxTruncation,
    floor: Exponent,
) -> Result<PuiseuxTruncation> {
    match den.leading() {
        Some((e, c)) if den.is_exact() && e.is_zero() && den.terms().count() == 1 => {
            Ok(num.scale(&c.inv()?))
        }
        _ => num.div(den, floor),
    }
}

/// Lifts a plane branch through `x3 = h1 / h2`, deepening the plane series
/// until every exponent of `r3` above `-order` is determined.
pub fn lift_branch(b: &PlaneBranch, lift: &LiftFunction, order: Exponent) -> Result<SpaceBranch> {
    let floor = -order;
    let mut depth = order;
    let mut plane = b.extended(depth);
    for _ in 0..MAX_DEEPENING {
        let (num, den) = lift.parts(&plane.r2);
        match quotient(&num, &den, floor) {
            Ok(r3) if r3.order_bound().is_none_or(|x| x <= floor) => {
                let r2 = if plane.r2.is_exact() {
                    plane.r2.clone()
                } else {
                    plane.r2.restrict_above(floor)
                };
                let r3 = if r3.is_exact() {
                    r3
                } else {
                    r3.restrict_above(floor)
                };
                return Ok(SpaceBranch { plane, r2, r3 });
            }
            Ok(_) | Err(Error::NeedsMoreTerms(_)) => {
                if !plane.is_extendable() {
                    return Err(Error::NeedsMoreTerms(
                        "plane branch cannot be extended".into(),
                    ));
                }
                depth += Exponent::one();
                plane = b.extended(depth);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::NeedsMoreTerms(format!(
        "lift did not stabilise above z^{floor}"
    )))
}

/// Every known coefficient of `f(z, r2, r3)` vanishes, and the known range
/// reaches below the top exponent of the expansion.
pub fn space_residual_vanishes(f: &MultiPoly, b: &SpaceBranch) -> bool {
    let res = substitute_series(f, &[&b.r2, &b.r3]);
    if !res.is_zero() {
        return false;
    }
    match res.order_bound() {
        None => true,
        Some(bound) => {
            let growth = [&b.r2, &b.r3]
                .iter()
                .filter_map(|s| s.leading().map(|(e, _)| e))
                .fold(Exponent::one(), |a, e| a.max(e));
            let top = growth * Exponent::from_integer(f.total_degree().unwrap_or(0) as i64);
            bound < top
        }
    }
}
