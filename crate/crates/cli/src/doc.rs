//! Structured (JSON) output schema and conversions from and to library values.

use anyhow::{anyhow, Context, Result};
use gasym::exactfield::{Exponent, OrderBound, UniPoly};
use gasym::spacecurve::{AsymptoteParam, LambdaSystem, Projection, SpaceBranch, TruncationParams};
use gasym::{AlgebraicNumber, NumberField, PuiseuxTruncation, Rational};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub input: InputDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftDoc>,
    #[serde(default)]
    pub branches: Vec<BranchDoc>,
    #[serde(default)]
    pub asymptotes: Vec<AsymptoteDoc>,
    #[serde(default)]
    pub checks: Vec<CheckDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InputDoc {
    pub f1: String,
    pub f2: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionDoc {
    pub fp: String,
    /// Matrix `M` of the change `x = M y`, row by row.
    pub transform: Option<Vec<Vec<String>>>,
    pub vertical: bool,
    pub attempts: usize,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftDoc {
    pub h1: String,
    pub h2: String,
    pub f3: String,
}

/// Rational as `"p/q"`, algebraic number as its coordinates in the power
/// basis of the generator together with the generator's minimal polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Rational(String),
    Algebraic {
        rep: Vec<String>,
        minpoly: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponent: String,
    pub coefficient: CoeffDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub terms: Vec<TermDoc>,
    /// Exponents above the bound are known; absent for exact series.
    pub bound: Option<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub index: usize,
    pub point: Vec<CoeffDoc>,
    pub point_text: String,
    pub ramification: u32,
    pub degree: u32,
    /// Minimal polynomial shared by the conjugate branches in the class.
    pub class_minpoly: Option<Vec<String>>,
    pub r2: SeriesDoc,
    pub r3: SeriesDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub k: u32,
    pub r: u32,
    pub n: u32,
    pub leading_zeros: u32,
    pub mu: i64,
    pub rho: CoeffDoc,
    pub lambdas: Vec<String>,
    pub solution: Vec<CoeffDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteDoc {
    pub k: u32,
    pub q1: Vec<CoeffDoc>,
    pub q2: Vec<CoeffDoc>,
    pub q3: Vec<CoeffDoc>,
    pub proper: bool,
    pub repaired_from: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implicit: Option<Vec<String>>,
    pub branches: Vec<usize>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| anyhow!("not a rational number: {s:?}"))
}

pub fn coeff(a: &AlgebraicNumber) -> CoeffDoc {
    match (a.to_rational(), a.minpoly()) {
        (None, Some(m)) => CoeffDoc::Algebraic {
            rep: rationals(&a.rep()),
            minpoly: rationals(m),
        },
        (r, _) => CoeffDoc::Rational(r.unwrap_or_default().to_string()),
    }
}

pub fn coeff_value(c: &CoeffDoc) -> Result<AlgebraicNumber> {
    match c {
        CoeffDoc::Rational(s) => Ok(AlgebraicNumber::from(parse_rational(s)?)),
        CoeffDoc::Algebraic { rep, minpoly } => {
            let m: Vec<Rational> = minpoly
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_>>()?;
            let r: Vec<Rational> = rep
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_>>()?;
            let field = NumberField::new(&m).context("invalid minimal polynomial")?;
            Ok(field.element(&r))
        }
    }
}

fn poly_coeffs(p: &UniPoly) -> Vec<CoeffDoc> {
    p.coeffs().iter().map(coeff).collect()
}

fn poly_value(cs: &[CoeffDoc]) -> Result<UniPoly> {
    Ok(UniPoly::new(
        cs.iter().map(coeff_value).collect::<Result<_>>()?,
    ))
}

pub fn series(s: &PuiseuxTruncation) -> SeriesDoc {
    SeriesDoc {
        terms: s
            .terms()
            .map(|(e, c)| TermDoc {
                exponent: e.to_string(),
                coefficient: coeff(c),
            })
            .collect(),
        bound: s.bound().value().map(|b| b.to_string()),
        text: s.to_string(),
    }
}

pub fn projection(p: &Projection) -> (ProjectionDoc, LiftDoc) {
    let transform = p
        .transform
        .as_ref()
        .map(|m| m.matrix.iter().map(|row| rationals(row)).collect());
    (
        ProjectionDoc {
            fp: p.fp.to_string(),
            transform,
            vertical: p.vertical,
            attempts: p.attempts,
            warnings: p.warnings.clone(),
        },
        LiftDoc {
            h1: p.lift.h1.to_string(),
            h2: p.lift.h2.to_string(),
            f3: p.lift.f3.to_string(),
        },
    )
}

pub fn branch(
    index: usize,
    b: &SpaceBranch,
    shown: (&PuiseuxTruncation, &PuiseuxTruncation),
) -> BranchDoc {
    BranchDoc {
        index,
        point: b.infinity_point().iter().map(coeff).collect(),
        point_text: {
            let p = b.infinity_point();
            format!("({} : {} : {} : 0)", p[0], p[1], p[2])
        },
        ramification: b.ramification(),
        degree: b.degree(),
        class_minpoly: b.plane.conjugacy_minpoly().map(|m| rationals(&m)),
        r2: series(shown.0),
        r3: series(shown.1),
        system: None,
    }
}

pub fn system(p: &TruncationParams, s: &LambdaSystem, sol: &[AlgebraicNumber]) -> SystemDoc {
    SystemDoc {
        k: s.k,
        r: p.r,
        n: p.n,
        leading_zeros: p.ell,
        mu: s.mu,
        rho: coeff(&s.rho),
        lambdas: s.coefficients.iter().map(|l| l.to_string()).collect(),
        solution: sol.iter().map(coeff).collect(),
    }
}

pub fn asymptote(
    a: &AsymptoteParam,
    implicit: Option<(String, String)>,
    branches: &[usize],
) -> AsymptoteDoc {
    AsymptoteDoc {
        k: a.k,
        q1: poly_coeffs(&a.q1),
        q2: poly_coeffs(&a.q2),
        q3: poly_coeffs(&a.q3),
        proper: a.proper,
        repaired_from: a.repaired_from,
        minpoly: a.minpoly.as_ref().map(|m| rationals(m)),
        implicit: implicit.map(|(g1, g2)| vec![g1, g2]),
        branches: branches.to_vec(),
        text: a.to_string(),
    }
}

/// Rebuilds the library value from its structured form.
pub fn asymptote_value(d: &AsymptoteDoc) -> Result<AsymptoteParam> {
    let minpoly = match &d.minpoly {
        Some(m) => Some(
            m.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(AsymptoteParam {
        k: d.k,
        q1: poly_value(&d.q1)?,
        q2: poly_value(&d.q2)?,
        q3: poly_value(&d.q3)?,
        proper: d.proper,
        repaired_from: d.repaired_from,
        minpoly,
    })
}

/// Keeps the exponents `>= -depth`, with the remainder bounded by the next
/// exponent allowed by the ramification.
pub fn shown_to_depth(s: &PuiseuxTruncation, depth: u32, ramification: u32) -> PuiseuxTruncation {
    let floor = -Exponent::from_integer(depth as i64);
    let step = Exponent::new(1, ramification.max(1) as i64);
    let kept = s
        .terms()
        .filter(|(e, _)| **e >= floor)
        .map(|(e, c)| (*e, c.clone()));
    if s.is_exact() && s.terms().all(|(e, _)| *e >= floor) {
        PuiseuxTruncation::exact(kept)
    } else {
        PuiseuxTruncation::new(kept, OrderBound::Below(floor - step))
    }
}
