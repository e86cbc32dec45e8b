//! Polynomial parametrizations of asymptotes, implicit equations and
//! convergence checks against the branches they approximate.

use super::lift::SpaceBranch;
use crate::error::{Error, Result};
use crate::exactfield::qpoly::QPoly;
use crate::exactfield::{AlgebraicNumber, Exponent, PuiseuxTruncation, Rational, UniPoly};
use crate::numeric::{self, Complex};
use crate::planecurve::series_to_unipoly;
use crate::polynomial::{squarefree_part, subresultant_prs, var_list, LinearChange, MultiPoly};
use num::{Integer, One, Zero};
use std::fmt;

type AN = AlgebraicNumber;

/// Asymptote `t -> (q1(t), q2(t), q3(t))`; before any coordinate change is
/// undone `q1 = t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoteParam {
    pub k: u32,
    pub q1: UniPoly,
    pub q2: UniPoly,
    pub q3: UniPoly,
    pub proper: bool,
    /// Original `k` when a non-proper parametrization was reparametrized.
    pub repaired_from: Option<u32>,
    /// Minimal polynomial of the coefficient field when it is not `Q`.
    pub minpoly: Option<QPoly>,
}

fn exponent_gcd(polys: &[&UniPoly]) -> u32 {
    polys
        .iter()
        .flat_map(|p| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i as u32)
        })
        .fold(0, |g, e| g.gcd(&e))
}

fn field_minpoly(polys: &[&UniPoly]) -> Option<QPoly> {
    polys
        .iter()
        .flat_map(|p| p.coeffs().iter())
        .find(|c| !c.is_rational())
        .and_then(|c| c.minpoly().map(|m| m.to_vec()))
}

impl AsymptoteParam {
    /// `(t^k, q2, q3)`, made proper.
    pub fn new(k: u32, q2: UniPoly, q3: UniPoly) -> Self {
        let q1 = UniPoly::monomial(AN::one(), k as usize);
        let minpoly = field_minpoly(&[&q2, &q3]);
        make_proper(&AsymptoteParam {
            k,
            q1,
            q2,
            q3,
            proper: false,
            repaired_from: None,
            minpoly,
        })
    }

    /// From the non-negative parts of `z -> (r2(z), r3(z))` with `z = t^k`.
    pub fn from_series(k: u32, r2: &PuiseuxTruncation, r3: &PuiseuxTruncation) -> Result<Self> {
        let q2 = series_to_unipoly(&r2.non_negative_part()?.substitute_power(k))?;
        let q3 = series_to_unipoly(&r3.non_negative_part()?.substitute_power(k))?;
        Ok(Self::new(k, q2, q3))
    }

    pub fn components(&self) -> [&UniPoly; 3] {
        [&self.q1, &self.q2, &self.q3]
    }

    /// The same curve in coordinates `x = M y`.
    pub fn transformed(&self, m: &LinearChange) -> Self {
        let y: Vec<UniPoly> = self.components().into_iter().cloned().collect();
        let x = m.map_vector(&y, UniPoly::zero(), |acc, c, v| {
            acc.add(&v.scale(&AN::from(c.clone())))
        });
        AsymptoteParam {
            q1: x[0].clone(),
            q2: x[1].clone(),
            q3: x[2].clone(),
            ..self.clone()
        }
    }

    /// Series `(r2, r3)` in `z = t^k` traced by the asymptote; requires `q1 = t^k`.
    pub fn as_series(&self) -> Option<[PuiseuxTruncation; 2]> {
        if self.q1 != UniPoly::monomial(AN::one(), self.k as usize) {
            return None;
        }
        let k = self.k as i64;
        let conv = |q: &UniPoly| {
            PuiseuxTruncation::exact(
                q.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (Exponent::new(i as i64, k), c.clone())),
            )
        };
        Some([conv(&self.q2), conv(&self.q3)])
    }

    pub fn format_with(&self, var: &str) -> String {
        format!(
            "({}, {}, {})",
            self.q1.format_in(var),
            self.q2.format_in(var),
            self.q3.format_in(var)
        )
    }
}

impl fmt::Display for AsymptoteParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("t"))
    }
}

/// Reparametrizes by `t -> t^(1/d)` where `d` is the gcd of all exponents.
pub fn make_proper(a: &AsymptoteParam) -> AsymptoteParam {
    let d = exponent_gcd(&a.components());
    if d <= 1 {
        return AsymptoteParam {
            proper: true,
            ..a.clone()
        };
    }
    let squeeze = |p: &UniPoly| {
        UniPoly::new(
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(i, _)| (*i as u32).is_multiple_of(d))
                .map(|(_, c)| c.clone())
                .collect(),
        )
    };
    AsymptoteParam {
        k: a.k / d,
        q1: squeeze(&a.q1),
        q2: squeeze(&a.q2),
        q3: squeeze(&a.q3),
        proper: true,
        repaired_from: Some(a.repaired_from.unwrap_or(a.k)),
        minpoly: a.minpoly.clone(),
    }
}

/// `q(t)` as a polynomial in `t` (index 3) and the field generator (index 4).
fn lift_to_vars(vars: &std::sync::Arc<Vec<String>>, q: &UniPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero(vars);
    for (i, c) in q.coeffs().iter().enumerate() {
        for (j, r) in c.rep().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mut e = vec![0u32; 5];
            e[3] = i as u32;
            e[4] = j as u32;
            acc = acc.add(&MultiPoly::monomial(vars, e, AN::from(r.clone())));
        }
    }
    acc
}

/// Two rational implicit equations `g1, g2` in `x1, x2, x3` of the union of
/// the conjugates of an asymptote.
pub fn eliminate_lambda(a: &AsymptoteParam) -> Result<(MultiPoly, MultiPoly)> {
    let vars = var_list(&["x1", "x2", "x3", "t", "l"]);
    let comps = a.components();
    let driver = comps
        .iter()
        .position(|q| q.degree().unwrap_or(0) > 0)
        .ok_or_else(|| Error::InvalidInput("constant parametrization".into()))?;
    let g = |i: usize| MultiPoly::var(&vars, i).sub(&lift_to_vars(&vars, comps[i]));
    let base = g(driver);
    let minpoly = a.minpoly.as_ref().map(|m| {
        m.iter()
            .enumerate()
            .fold(MultiPoly::zero(&vars), |acc, (j, c)| {
                let mut e = vec![0u32; 5];
                e[4] = j as u32;
                acc.add(&MultiPoly::monomial(&vars, e, AN::from(c.clone())))
            })
    });
    let target = var_list(&["x1", "x2", "x3"]);
    let mut out = Vec::new();
    for i in (0..3).filter(|&i| i != driver) {
        let mut r = subresultant_prs(&base, &g(i), 3)?.resultant;
        if let Some(m) = &minpoly {
            if r.deg(4) > 0 {
                r = subresultant_prs(&r, m, 4)?.resultant;
            }
        }
        let r = squarefree_part(&r).normalized_integer();
        let kept: Vec<(Vec<u32>, AN)> = r
            .terms()
            .map(|(e, c)| (e[..3].to_vec(), c.clone()))
            .collect();
        out.push(MultiPoly::from_terms(&target, kept));
    }
    Ok((out[0].clone(), out[1].clone()))
}

/// `g(q1(t), q2(t), q3(t))`.
pub fn evaluate_on_param(g: &MultiPoly, a: &AsymptoteParam) -> UniPoly {
    let comps = a.components();
    let mut acc = UniPoly::zero();
    for (e, c) in g.terms() {
        let mut t = UniPoly::constant(c.clone());
        for (i, &k) in e.iter().enumerate().take(3) {
            if k > 0 {
                t = t.mul(&comps[i].pow(k as usize));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Distance between a branch and its asymptote at one magnitude of `z`,
/// maximised over every complex embedding and every determination of `z^(1/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceSample {
    pub magnitude: Rational,
    pub distance: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    /// Non-negative parts of the branch coincide with the asymptote.
    pub exact: bool,
    pub samples: Vec<DistanceSample>,
    /// Distances strictly decrease with `|z|` for every embedding and determination.
    pub decreasing: bool,
    /// The truncated tails vanish, so every distance is zero.
    pub identically_zero: bool,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.exact && (self.decreasing || self.identically_zero)
    }

    pub fn rendered(&self, digits: usize) -> Vec<(String, String)> {
        self.samples
            .iter()
            .map(|s| {
                (
                    numeric::to_decimal(&s.magnitude, digits),
                    numeric::to_decimal(&s.distance, digits),
                )
            })
            .collect()
    }
}

fn negative_part(s: &PuiseuxTruncation) -> PuiseuxTruncation {
    PuiseuxTruncation::exact(
        s.terms()
            .filter(|(e, _)| **e < Exponent::zero())
            .map(|(e, c)| (*e, c.clone())),
    )
}

/// Value of a truncation at `u = z^(-1/n)`; `root` embeds the coefficient field.
pub fn eval_at(s: &PuiseuxTruncation, u: &Complex, n: u32, root: Option<&Complex>) -> Complex {
    let uinv = Complex::one().div(u);
    let nn = Exponent::from_integer(n as i64);
    let mut acc = Complex::zero();
    for (e, c) in s.terms() {
        let m = (-*e * nn).to_integer();
        let p = if m >= 0 {
            u.pow(m as u32)
        } else {
            uinv.pow((-m) as u32)
        };
        acc = acc.add(&numeric::eval_algebraic(c, root).mul(&p));
    }
    acc
}

/// The `n` values `u` with `u^n = 1/z`, for real `z ≠ 0`.
pub fn determinations(z: &Rational, n: u32) -> Vec<Complex> {
    let sign: i64 = if z < &Rational::zero() { -1 } else { 1 };
    let mut unit = vec![Rational::zero(); n as usize + 1];
    unit[0] = Rational::from_integer((-sign).into());
    unit[n as usize] = Rational::one();
    let scale = numeric::real_power(&num::Signed::abs(z), Exponent::new(-1, n as i64));
    numeric::complex_roots(&unit)
        .into_iter()
        .map(|w| w.scale(&scale))
        .collect()
}

/// Exact comparison of the non-negative parts plus sampled distances at
/// `|z| = samples`, evaluated from the negative-exponent tails of the branch.
pub fn verify_convergence(
    a: &AsymptoteParam,
    b: &SpaceBranch,
    samples: &[Rational],
) -> Result<ConvergenceReport> {
    let series = a
        .as_series()
        .ok_or_else(|| Error::InvalidInput("asymptote is not in branch coordinates".into()))?;
    let mut exact = true;
    for (x, y) in [&b.r2, &b.r3].into_iter().zip(&series) {
        if x.non_negative_part()?.terms().ne(y.terms()) {
            exact = false;
        }
    }
    let tails = [negative_part(&b.r2), negative_part(&b.r3)];
    let identically_zero = tails.iter().all(|t| t.is_zero()) && b.r2.is_exact() && b.r3.is_exact();
    let n = b
        .ramification()
        .max(1)
        .lcm(&tails[0].ramification())
        .lcm(&tails[1].ramification());
    let field = b.r2.field().or_else(|| b.r3.field());
    let roots: Vec<Option<Complex>> = match &field {
        Some(f) if f.degree() > 1 => numeric::embeddings(f).into_iter().map(Some).collect(),
        _ => vec![None],
    };
    let dets: Vec<Vec<Complex>> = samples.iter().map(|z| determinations(z, n)).collect();
    let mut per_combo: Vec<Vec<Rational>> = Vec::new();
    for root in &roots {
        for j in 0..n as usize {
            let mut row = Vec::new();
            for d in &dets {
                let u = &d[j];
                let d2 = tails
                    .iter()
                    .map(|t| eval_at(t, u, n, root.as_ref()).norm_sqr())
                    .fold(Rational::zero(), |a, b| a + b);
                row.push(d2);
            }
            per_combo.push(row);
        }
    }
    let decreasing = per_combo
        .iter()
        .all(|row| row.windows(2).all(|w| w[1] < w[0]));
    let out = samples
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let worst = per_combo
                .iter()
                .map(|r| r[i].clone())
                .max()
                .unwrap_or_else(Rational::zero);
            DistanceSample {
                magnitude: z.clone(),
                distance: numeric::sqrt(&worst),
            }
        })
        .collect();
    Ok(ConvergenceReport {
        exact,
        samples: out,
        decreasing,
        identically_zero,
    })
}
