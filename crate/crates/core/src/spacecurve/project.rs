//! Projection of a space curve onto the `(x1, x2)` plane and the rational lift
//! `x3 = h1(x1, x2) / h2(x1, x2)` back to it.

use crate::error::{Error, Result};
use crate::exactfield::{rat, PuiseuxTruncation, Rational};
use crate::planecurve::{branches_parametrizable, leading_form, substitute_series};
use crate::polynomial::{
    content_in, gcd, resultant, squarefree_part, subresultant_prs, LinearChange, MultiPoly,
};
use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const MAX_ATTEMPTS: usize = 5;

/// `f3 = x3 * h2 - h1`, linear in `x3`, vanishing on the space curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFunction {
    pub h1: MultiPoly,
    pub h2: MultiPoly,
    pub f3: MultiPoly,
}

impl LiftFunction {
    fn from_linear(element: &MultiPoly) -> Result<Self> {
        let cs = element.coeffs_in(2);
        if cs.len() != 2 {
            return Err(Error::InvalidInput(
                "lift element must have degree 1 in x3".into(),
            ));
        }
        let (c0, c1) = (&cs[0], &cs[1]);
        let g = gcd(c0, c1);
        let (c0, c1) = if g.is_constant() {
            (c0.clone(), c1.clone())
        } else {
            (c0.exact_divide(&g)?, c1.exact_divide(&g)?)
        };
        let x3 = MultiPoly::var(element.vars(), 2);
        let mut f3 = x3.mul(&c1).add(&c0).primitive_integer();
        let h2 = f3.coeffs_in(2)[1].clone();
        if h2
            .display_order()
            .last()
            .is_some_and(|(_, c)| c.to_rational().is_some_and(|r| r.is_negative()))
        {
            f3 = f3.neg();
        }
        let cs = f3.coeffs_in(2);
        Ok(LiftFunction {
            h1: cs[0].neg(),
            h2: cs[1].clone(),
            f3,
        })
    }

    /// `r3 = h1(z, r2) / h2(z, r2)` ingredients: numerator and denominator series.
    pub fn parts(&self, r2: &PuiseuxTruncation) -> (PuiseuxTruncation, PuiseuxTruncation) {
        (
            substitute_series(&self.h1, &[r2]),
            substitute_series(&self.h2, &[r2]),
        )
    }
}

/// The plane projection of a space curve together with its lift.
#[derive(Clone, Debug)]
pub struct Projection {
    /// Input polynomials in working coordinates `y` (`x = M y`).
    pub f1: MultiPoly,
    pub f2: MultiPoly,
    /// Squarefree, primitive integer projection `fp(x1, x2)`.
    pub fp: MultiPoly,
    pub lift: LiftFunction,
    /// Coordinate change used, `None` for the identity.
    pub transform: Option<LinearChange>,
    /// Whether `(0 : 1 : 0)` lies at infinity of `fp`; its branches are
    /// parametrized by `x1` directly and reported with vertical direction.
    pub vertical: bool,
    pub attempts: usize,
    pub warnings: Vec<String>,
}

fn check_inputs(f1: &MultiPoly, f2: &MultiPoly) -> Result<()> {
    if f1.nvars() != 3 || f2.nvars() != 3 || f1.vars() != f2.vars() {
        return Err(Error::InvalidInput(
            "expected two polynomials in x1, x2, x3".into(),
        ));
    }
    for f in [f1, f2] {
        if f.is_constant() {
            return Err(Error::NotACurve("an input polynomial is constant".into()));
        }
        if f.field().is_some() {
            return Err(Error::InvalidInput(
                "input coefficients must be rational".into(),
            ));
        }
    }
    let g = gcd(&content_in(f1, 2), &content_in(f2, 2));
    if !g.is_constant() {
        return Err(Error::NotACurve(format!(
            "the polynomials share the factor {g}"
        )));
    }
    if f1.deg(2) > 0 && f2.deg(2) > 0 && resultant(f1, f2, 2)?.is_zero() {
        return Err(Error::NotACurve(
            "the polynomials share a factor involving x3".into(),
        ));
    }
    Ok(())
}

/// Lift function from the subresultant sequence of `f1, f2` in `x3`: the last
/// element of degree 1, made primitive. Fails unless `h2` is nonzero on every
/// component of `fp`.
pub fn lift_function(f1: &MultiPoly, f2: &MultiPoly, fp: &MultiPoly) -> Result<LiftFunction> {
    let prs = subresultant_prs(f1, f2, 2)?;
    let element = prs
        .element_of_degree(1)
        .ok_or_else(|| Error::InvalidDirection("no remainder of degree 1 in x3".into()))?;
    let lead = element.leading_coeff_in(2);
    if element.deg(2) != 1 || !gcd(fp, &lead).is_constant() {
        return Err(Error::InvalidDirection(
            "the lift denominator vanishes on a component".into(),
        ));
    }
    LiftFunction::from_linear(element)
}

fn random_change(rng: &mut ChaCha8Rng) -> LinearChange {
    const ENTRIES: [i64; 4] = [-1, 0, 1, 2];
    loop {
        let m: Vec<Vec<Rational>> = (0..3)
            .map(|_| (0..3).map(|_| rat(ENTRIES[rng.gen_range(0..4)])).collect())
            .collect();
        if let Ok(c) = LinearChange::new(m) {
            if !c.is_identity() {
                return c;
            }
        }
    }
}

fn try_direction(f1: &MultiPoly, f2: &MultiPoly) -> Result<(MultiPoly, LiftFunction, Vec<String>)> {
    if f1.deg(2) == 0 && f2.deg(2) == 0 {
        return Err(Error::InvalidDirection("x3 does not occur".into()));
    }
    let res = subresultant_prs(f1, f2, 2)?.resultant;
    if res.is_zero() {
        return Err(Error::NotACurve(
            "the polynomials share a factor involving x3".into(),
        ));
    }
    let fp = squarefree_part(&res).normalized_integer();
    if fp.is_constant() {
        return Err(Error::NotACurve(
            "the polynomials have no common zeros".into(),
        ));
    }
    let lift = lift_function(f1, f2, &fp)?;
    if !branches_parametrizable(&fp) {
        return Err(Error::InvalidDirection(
            "the projection has branches with bounded x1".into(),
        ));
    }
    let mut warnings = Vec::new();
    if fp.total_degree() != res.total_degree() {
        warnings
            .push("the resultant has repeated factors; its squarefree part is used".to_string());
    }
    if !lift.h2.is_constant() {
        let touching = if lift.h2.deg(1) == 0 {
            true
        } else {
            !resultant(&fp, &lift.h2, 1)?.is_constant()
        };
        if touching {
            warnings.push(format!(
                "h2 = {} may vanish at finite points of the projected curve",
                lift.h2
            ));
        }
    }
    Ok((fp, lift, warnings))
}

/// Projection with the default seed for the coordinate-change retries.
pub fn project(f1: &MultiPoly, f2: &MultiPoly) -> Result<Projection> {
    project_seeded(f1, f2, DEFAULT_SEED)
}

/// Projects along `x3`; on an invalid direction retries with up to
/// `MAX_ATTEMPTS` random invertible changes drawn from `seed`.
pub fn project_seeded(f1: &MultiPoly, f2: &MultiPoly, seed: u64) -> Result<Projection> {
    check_inputs(f1, f2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..=MAX_ATTEMPTS {
        let transform = (attempt > 0).then(|| random_change(&mut rng));
        let (g1, g2) = match &transform {
            Some(m) => (m.apply(f1), m.apply(f2)),
            None => (f1.clone(), f2.clone()),
        };
        match try_direction(&g1, &g2) {
            Ok((fp, lift, warnings)) => {
                let vertical = leading_form(&fp).degree() != fp.total_degree().map(|d| d as usize);
                return Ok(Projection {
                    f1: g1,
                    f2: g2,
                    fp,
                    lift,
                    transform,
                    vertical,
                    attempts: attempt + 1,
                    warnings,
                });
            }
            Err(Error::InvalidDirection(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoValidDirection(MAX_ATTEMPTS))
}
