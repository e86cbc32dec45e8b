//! Infinity points, infinity branches and asymptotes of plane curves
//! `fp(x1, x2) = 0`. Branches are parametrized by `x1 = z` with `x2 = r2(z)`.

mod newton;

use crate::error::{Error, Result};
use crate::exactfield::extension::{factor_over, root_of_unity};
use crate::exactfield::qpoly::QPoly;
use crate::exactfield::{AlgebraicNumber, Exponent, NumberField, PuiseuxTruncation, UniPoly};
use crate::polynomial::MultiPoly;
use newton::{RawRoot, RegularSeed};
use num::{Integer, One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

type AN = AlgebraicNumber;

/// A point `(1 : m2 : 0)` at infinity, one representative per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityPointPlane {
    pub m2: AlgebraicNumber,
    /// Multiplicity of `m2` as a root of the top-degree form at `x1 = 1`.
    pub multiplicity: usize,
    /// Monic irreducible polynomial over `Q` with root `m2`.
    pub class_poly: QPoly,
}

impl InfinityPointPlane {
    /// Number of points in the conjugacy class.
    pub fn conjugates(&self) -> usize {
        self.class_poly.len() - 1
    }

    pub fn contains(&self, m: &AlgebraicNumber) -> bool {
        UniPoly::from_rationals(&self.class_poly).eval(m).is_zero()
    }
}

/// Direction in which a branch of `fp` leaves every compact set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Towards `(1 : m2 : 0)`.
    Point(AlgebraicNumber),
    /// Towards `(0 : 1 : 0)` while `x1 -> infinity` (`r2` grows faster than `z`).
    Vertical,
}

/// One infinity branch `{(z, r2(z))}` of a plane curve, representing its
/// conjugacy class.
#[derive(Clone, Debug)]
pub struct PlaneBranch {
    pub direction: Direction,
    pub r2: PuiseuxTruncation,
    /// Ramification index `N` of `r2`.
    pub ramification: u32,
    /// Number of field-conjugate classes represented (`classes * N` series in total).
    pub classes: usize,
    seed: Option<Arc<RegularSeed>>,
    raw: Option<Arc<RawRoot>>,
}

impl PartialEq for PlaneBranch {
    fn eq(&self, o: &Self) -> bool {
        self.direction == o.direction
            && self.r2 == o.r2
            && self.ramification == o.ramification
            && self.classes == o.classes
    }
}

impl PlaneBranch {
    /// A branch given directly by its series; it cannot be extended.
    pub fn from_series(r2: PuiseuxTruncation) -> Self {
        let direction = direction_of(&r2);
        let ramification = r2.ramification();
        PlaneBranch {
            direction,
            r2,
            ramification,
            classes: 1,
            seed: None,
            raw: None,
        }
    }

    pub fn m2(&self) -> Option<&AlgebraicNumber> {
        match &self.direction {
            Direction::Point(m) => Some(m),
            Direction::Vertical => None,
        }
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.raw
            .as_ref()
            .and_then(|r| r.field.clone())
            .or_else(|| self.r2.field())
    }

    /// Minimal polynomial of the coefficient field, when it is not `Q`.
    pub fn conjugacy_minpoly(&self) -> Option<QPoly> {
        self.field()
            .filter(|f| f.degree() > 1)
            .map(|f| f.minpoly().to_vec())
    }

    pub fn is_extendable(&self) -> bool {
        self.raw.is_some()
    }

    /// The same branch with every exponent `> -order` determined.
    pub fn extended(&self, order: Exponent) -> PlaneBranch {
        match &self.raw {
            Some(raw) if self.seed.is_some() => {
                let r2 = raw.series(order);
                if r2.order_bound() >= self.r2.order_bound() {
                    return self.clone();
                }
                PlaneBranch { r2, ..self.clone() }
            }
            _ => self.clone(),
        }
    }

    /// Growth exponent of `r2` (1 for `(1:m2:0)` with `m2 != 0`).
    pub fn growth(&self) -> Option<Exponent> {
        self.r2.leading().map(|(e, _)| e)
    }
}

fn direction_of(r2: &PuiseuxTruncation) -> Direction {
    match r2.leading() {
        Some((e, _)) if e > Exponent::one() => Direction::Vertical,
        _ => Direction::Point(r2.coefficient(Exponent::one())),
    }
}

impl fmt::Display for PlaneBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r2(z) = {}", self.r2)
    }
}

fn check_plane(fp: &MultiPoly) -> Result<()> {
    if fp.is_zero() || fp.is_constant() {
        return Err(Error::InvalidInput(
            "the plane polynomial must be nonconstant".into(),
        ));
    }
    if fp.terms().any(|(e, _)| e.iter().skip(2).any(|&k| k > 0)) {
        return Err(Error::InvalidInput(
            "the plane polynomial may only involve its first two variables".into(),
        ));
    }
    Ok(())
}

/// Top-degree form of `fp` at `x1 = 1`, as a polynomial in `m`.
pub fn leading_form(fp: &MultiPoly) -> UniPoly {
    let d = fp.total_degree().unwrap_or(0);
    let mut cs = vec![AN::zero(); d as usize + 1];
    for (e, c) in fp.terms() {
        if e[0] + e[1] == d {
            cs[e[1] as usize] = c.clone();
        }
    }
    UniPoly::new(cs)
}

/// The points `(1 : m2 : 0)` at infinity of `fp`, grouped into conjugacy classes.
/// Fails with `NeedsCoordinateChange` when `(0 : 1 : 0)` is also at infinity.
pub fn infinity_points(fp: &MultiPoly) -> Result<Vec<InfinityPointPlane>> {
    check_plane(fp)?;
    let form = leading_form(fp);
    if form.degree() != fp.total_degree().map(|d| d as usize) {
        return Err(Error::NeedsCoordinateChange);
    }
    let mut out = Vec::new();
    for (g, mult) in factor_over(&form, None)? {
        let q = g.to_rationals().expect("rational factor");
        let m2 = if q.len() == 2 {
            AN::from(-q[0].clone())
        } else {
            NumberField::new(&q)?.generator()
        };
        out.push(InfinityPointPlane {
            m2,
            multiplicity: mult,
            class_poly: q,
        });
    }
    out.sort_by(|a, b| (a.class_poly.len(), &a.m2).cmp(&(b.class_poly.len(), &b.m2)));
    Ok(out)
}

/// Whether `x1 -> infinity` captures every branch at infinity: the coefficient of
/// the highest power of `x2` must be constant.
pub fn branches_parametrizable(fp: &MultiPoly) -> bool {
    fp.leading_coeff_in(1).is_constant()
}

fn sort_key(b: &PlaneBranch) -> (u8, Exponent, AN, Vec<(Exponent, AN)>) {
    let kind = matches!(b.direction, Direction::Vertical) as u8;
    let m = b.m2().cloned().unwrap_or_else(AN::zero);
    let terms = b.r2.terms().rev().map(|(e, c)| (-*e, c.clone())).collect();
    (kind, b.growth().unwrap_or(Exponent::zero()), m, terms)
}

/// All infinity branches of `fp` with `x1 -> infinity`, each determined for exponents `> -order`.
pub fn infinity_branches(fp: &MultiPoly, order: Exponent) -> Result<Vec<PlaneBranch>> {
    check_plane(fp)?;
    if !branches_parametrizable(fp) {
        return Err(Error::NeedsCoordinateChange);
    }
    let roots = newton::roots_at_infinity(fp)?;
    let total: usize = roots.iter().map(|r| r.classes * r.n as usize).sum();
    if total != fp.deg(1) as usize {
        return Err(Error::Inconsistent(format!(
            "branch count {total} differs from the degree {} in x2",
            fp.deg(1)
        )));
    }
    let mut out: Vec<PlaneBranch> = roots
        .into_iter()
        .map(|raw| {
            let r2 = raw.series(order);
            PlaneBranch {
                direction: direction_of(&r2),
                ramification: raw.n,
                classes: raw.classes,
                seed: raw.seed.clone(),
                raw: Some(Arc::new(raw)),
                r2,
            }
        })
        .collect();
    out.sort_by_cached_key(sort_key);
    Ok(out)
}

/// The branches of `fp` at one point at infinity.
pub fn expand_branch(
    fp: &MultiPoly,
    point: &InfinityPointPlane,
    order: Exponent,
) -> Result<Vec<PlaneBranch>> {
    Ok(infinity_branches(fp, order)?
        .into_iter()
        .filter(|b| b.m2().is_some_and(|m| point.contains(m)))
        .collect())
}

/// Least common denominator of the non-negative exponents of `r2`.
pub fn branch_degree(b: &PlaneBranch) -> u32 {
    series_degree(&[&b.r2])
}

pub(crate) fn series_degree(parts: &[&PuiseuxTruncation]) -> u32 {
    let mut n: i64 = 1;
    for s in parts {
        for (e, _) in s.terms() {
            if !e.is_negative() {
                n = n.lcm(e.denom());
            }
        }
    }
    n as u32
}

/// Polynomial in `t` from a truncation with non-negative integer exponents only.
pub fn series_to_unipoly(s: &PuiseuxTruncation) -> Result<UniPoly> {
    let mut cs: Vec<AN> = Vec::new();
    for (e, c) in s.terms() {
        if !e.is_integer() || e.is_negative() {
            return Err(Error::InvalidInput(format!(
                "exponent {e} is not a non-negative integer"
            )));
        }
        let k = e.to_integer() as usize;
        if cs.len() <= k {
            cs.resize(k + 1, AN::zero());
        }
        cs[k] = c.clone();
    }
    Ok(UniPoly::new(cs))
}

/// The plane asymptote `(t^k, q2(t))` of a branch, `k` its degree.
pub fn plane_asymptote(b: &PlaneBranch) -> Result<(u32, UniPoly)> {
    let part = b.r2.non_negative_part()?;
    let k = branch_degree(b);
    Ok((k, series_to_unipoly(&part.substitute_power(k))?))
}

/// The `N` conjugates `u -> eps u` of a branch, `u = z^(-1/N)`, over a field
/// containing a primitive `N`-th root of unity.
pub fn conjugate_orbit(b: &PlaneBranch) -> Result<Vec<PlaneBranch>> {
    let n = b.ramification.max(1);
    if n == 1 {
        return Ok(vec![b.clone()]);
    }
    let base = b.field();
    let (ext, eps) = root_of_unity(base.as_ref(), n)?;
    let embed = |c: &AN| match &ext {
        Some(x) => x.embed(c),
        None => c.clone(),
    };
    let nn = Exponent::from_integer(n as i64);
    let mut out = Vec::with_capacity(n as usize);
    for j in 0..n {
        let ej = eps.pow(j);
        let r2 = b.r2.map_coeffs(|e, c| {
            let m = (-e * nn).to_integer().rem_euclid(n as i64) as u32;
            &embed(c) * &ej.pow(m)
        });
        out.push(PlaneBranch {
            direction: direction_of(&r2),
            r2,
            ramification: b.ramification,
            classes: b.classes,
            seed: None,
            raw: None,
        });
    }
    Ok(out)
}

/// Branch-like objects whose non-negative-exponent parts can be compared.
pub trait BranchSeries {
    fn components(&self) -> Vec<&PuiseuxTruncation>;
}

impl BranchSeries for PlaneBranch {
    fn components(&self) -> Vec<&PuiseuxTruncation> {
        vec![&self.r2]
    }
}

/// True iff the non-negative-exponent parts coincide componentwise.
pub fn branches_convergent<B: BranchSeries + ?Sized>(b1: &B, b2: &B) -> Result<bool> {
    let (a, b) = (b1.components(), b2.components());
    if a.len() != b.len() {
        return Ok(false);
    }
    for (x, y) in a.iter().zip(&b) {
        let (xa, ya) = (x.non_negative_part()?, y.non_negative_part()?);
        if xa.terms().ne(ya.terms()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f(z, r2(z), ...)` as a truncated series; arguments after `x1` are series.
pub fn substitute_series(f: &MultiPoly, args: &[&PuiseuxTruncation]) -> PuiseuxTruncation {
    let z = PuiseuxTruncation::z();
    let mut vals: Vec<&PuiseuxTruncation> = vec![&z];
    vals.extend_from_slice(args);
    let mut powers: Vec<Vec<PuiseuxTruncation>> = vals
        .iter()
        .map(|v| vec![PuiseuxTruncation::constant(AN::one()), (*v).clone()])
        .collect();
    let mut acc = PuiseuxTruncation::zero();
    for (e, c) in f.terms() {
        let mut t = PuiseuxTruncation::constant(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().expect("power").mul(vals[i]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][k as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Residual check: every known coefficient of `fp(z, r2(z))` vanishes, and the
/// known range reaches below the top exponent of the expansion.
pub fn residual_vanishes(fp: &MultiPoly, b: &PlaneBranch) -> bool {
    let res = substitute_series(fp, &[&b.r2]);
    if !res.is_zero() {
        return false;
    }
    match res.order_bound() {
        None => true,
        Some(bound) => {
            let growth = b.growth().unwrap_or(Exponent::zero()).max(Exponent::zero());
            let top = Exponent::from_integer(fp.deg(0) as i64)
                + growth * Exponent::from_integer(fp.deg(1) as i64);
            bound < top
        }
    }
}
