//! Asymptotes of lifted branches from a triangular linear system, without
//! dividing series.
//!
//! With `z = t^k` (`k` the ramification of the plane branch) and `r2*` the
//! plane series truncated at `t^-n`, put `H_i = h_i(t^k, r2*(t))` and
//! `Q3 = b_0 t^D + ... + b_D`. The coefficients of `t^(D+δ)`, ..., `t^δ` in
//! `Q3 H2 - H1` (`δ = deg H2`) are affine in the `b_j` and triangular with
//! diagonal `ρ = lc(H2)`; setting them to zero yields the polynomial part of `r3`.

use super::lift::{lift_branch, SpaceBranch};
use super::project::LiftFunction;
use crate::error::{Error, Result};
use crate::exactfield::{AlgebraicNumber, Exponent, PuiseuxTruncation};
use crate::planecurve::PlaneBranch;
use crate::polynomial::{var_list, MultiPoly};
use std::sync::Arc;

type AN = AlgebraicNumber;

const MAX_N: i64 = 256;

/// Laurent polynomial in `t`: coefficients from `t^low` upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Laurent {
    low: i64,
    coeffs: Vec<AN>,
}

impl Laurent {
    fn from_series(s: &PuiseuxTruncation) -> Laurent {
        let exps: Vec<i64> = s.terms().map(|(e, _)| e.to_integer()).collect();
        let Some(&low) = exps.first() else {
            return Laurent {
                low: 0,
                coeffs: Vec::new(),
            };
        };
        let high = *exps.last().expect("nonempty");
        let mut coeffs = vec![AN::zero(); (high - low + 1) as usize];
        for (e, c) in s.terms() {
            coeffs[(e.to_integer() - low) as usize] = c.clone();
        }
        Laurent { low, coeffs }
    }

    fn coeff(&self, e: i64) -> AN {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            AN::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    fn degree(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|i| self.low + i as i64)
    }

    fn degree_from(&self, floor: i64) -> Option<i64> {
        self.degree().filter(|&d| d >= floor)
    }
}

/// Truncation parameters for one branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationParams {
    /// Ramification `k`, so that `z = t^k`.
    pub k: u32,
    /// Last index `j` such that the leading coefficient of `f3(t^k, r2*, Q3)`
    /// depends on the coefficient of `t^(K - j)` of `r2*`, `K = max(k, deg r2*)`.
    pub r: u32,
    /// Number of negative powers of `t` kept in `r2*`.
    pub n: u32,
    /// Number of leading zero coefficients of `r2*` from `t^K` down.
    pub ell: u32,
    /// Degree `D` of the unknown polynomial `Q3`.
    pub degree: u32,
    /// Degree in `t` of `h2(t^k, r2*)`.
    pub delta: i64,
}

/// The triangular system `Λ_0 = ... = Λ_(D+m) = 0` in `b_0, ..., b_(D+m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSystem {
    pub k: u32,
    pub degree: u32,
    /// Number of extra unknowns beyond `b_D` (negative powers of `t`).
    pub extra: u32,
    /// `Λ_j`, affine in the variables `b0, b1, ...`.
    pub coefficients: Vec<MultiPoly>,
    /// Diagonal entry, the leading coefficient of `h2(t^k, r2*)`.
    pub rho: AN,
    /// Degree in `t` of the numerator `F3(t^(n+k), ..., t^n)`, `F3` the homogenized lift.
    pub mu: i64,
    pub n_used: u32,
    pub r_used: u32,
    pub ell: u32,
    pub delta: i64,
    pub q2: Vec<AN>,
    h1: Laurent,
    h2: Laurent,
}

struct Analysis {
    k: u32,
    n: i64,
    r2t: PuiseuxTruncation,
    h1: Laurent,
    h2: Laurent,
    delta: i64,
    degree: i64,
}

fn eval_laurent(f: &MultiPoly, k: u32, r2t: &PuiseuxTruncation) -> Laurent {
    let x1 = PuiseuxTruncation::monomial(AN::one(), Exponent::from_integer(k as i64));
    let mut powers1 = vec![PuiseuxTruncation::constant(AN::one())];
    let mut powers2 = vec![PuiseuxTruncation::constant(AN::one())];
    let mut acc = PuiseuxTruncation::zero();
    for (e, c) in f.terms() {
        while powers1.len() <= e[0] as usize {
            let next = powers1.last().expect("power").mul(&x1);
            powers1.push(next);
        }
        while powers2.len() <= e[1] as usize {
            let next = powers2.last().expect("power").mul(r2t);
            powers2.push(next);
        }
        acc = acc.add(&powers1[e[0] as usize].mul(&powers2[e[1] as usize]).scale(c));
    }
    Laurent::from_series(&acc)
}

/// `max k a + (b - 1) d2` over the monomials `x1^a x2^b` of `h` with `b ≥ 1`:
/// a bound on the degree of `∂h/∂x2` along the branch.
fn derivative_growth(h: &MultiPoly, k: u32, d2: i64) -> Option<i64> {
    h.terms()
        .filter(|(e, _)| e[1] >= 1)
        .map(|(e, _)| k as i64 * e[0] as i64 + (e[1] as i64 - 1) * d2)
        .max()
}

/// Plane series truncated to exponents `≥ -n/k`, as a polynomial in `t = z^(1/k)`.
fn truncated_in_t(b: &PlaneBranch, k: u32, n: i64) -> Result<(PlaneBranch, PuiseuxTruncation)> {
    let kk = k as i64;
    let plane = b.extended(Exponent::new(n + 1, kk));
    let cut = Exponent::new(-n, kk);
    if !plane.r2.bound().covers(cut) {
        return Err(Error::NeedsMoreTerms(format!(
            "plane series not known down to z^{cut}"
        )));
    }
    let kept = PuiseuxTruncation::exact(
        plane
            .r2
            .terms()
            .filter(|(e, _)| **e >= cut)
            .map(|(e, c)| (*e, c.clone())),
    );
    Ok((plane, kept.substitute_power(k)))
}

fn analyze(lift: &LiftFunction, b: &PlaneBranch, extra: u32, n_min: i64) -> Result<Analysis> {
    let k = b.ramification.max(1);
    let kk = k as i64;
    let m = extra as i64;
    let mut n = n_min.max(0);
    while n <= MAX_N {
        let (_, r2t) = truncated_in_t(b, k, n)?;
        let d2 = r2t
            .leading()
            .map(|(e, _)| e.to_integer())
            .unwrap_or(-n - 1)
            .max(-n - 1);
        let p1 = derivative_growth(&lift.h1, k, d2);
        let p2 = derivative_growth(&lift.h2, k, d2);
        let h2 = eval_laurent(&lift.h2, k, &r2t);
        let Some(delta) = h2.degree() else {
            n += 1;
            continue;
        };
        if let Some(p2) = p2 {
            if n < p2 - delta {
                n = p2 - delta;
                continue;
            }
        }
        let h1 = eval_laurent(&lift.h1, k, &r2t);
        let q2deg = d2.max(0);
        let h1deg = h1.degree_from(delta - m).unwrap_or(i64::MIN);
        let degree = kk.max(q2deg).max(h1deg.saturating_sub(delta));
        let need = [p1.map(|p| p - delta), p2.map(|p| degree + p - delta)]
            .into_iter()
            .flatten()
            .max()
            .map_or(0, |x| x + m);
        if n >= need {
            return Ok(Analysis {
                k,
                n,
                r2t,
                h1,
                h2,
                delta,
                degree,
            });
        }
        n = need;
    }
    Err(Error::NeedsMoreTerms(format!(
        "no admissible truncation with n ≤ {MAX_N}"
    )))
}

fn b_vars(count: usize) -> Arc<Vec<String>> {
    let names: Vec<String> = (0..count).map(|i| format!("b{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    var_list(&refs)
}

/// Coefficient of `t^e` in `Q3 H2 - H1` as an affine form in the `b_i`,
/// `Q3 = Σ b_i t^(D - i)`.
fn affine_coefficient(
    vars: &Arc<Vec<String>>,
    h1: &Laurent,
    h2: &Laurent,
    degree: i64,
    e: i64,
) -> MultiPoly {
    let mut acc = MultiPoly::constant(vars, -h1.coeff(e));
    for i in 0..vars.len() {
        let c = h2.coeff(e - degree + i as i64);
        if !c.is_zero() {
            acc = acc.add(&MultiPoly::var(vars, i).scale(&c));
        }
    }
    acc
}

fn coefficients_above(
    a: &Analysis,
    vars: &Arc<Vec<String>>,
    h1: &Laurent,
    h2: &Laurent,
) -> Vec<(i64, MultiPoly)> {
    let top_q = h2.degree().map_or(i64::MIN, |d| d + a.degree);
    let top = top_q.max(h1.degree().unwrap_or(i64::MIN));
    let lead = a.degree + a.delta;
    (lead..=top.max(lead))
        .map(|e| (e, affine_coefficient(vars, h1, h2, a.degree, e)))
        .collect()
}

fn leading_zeros(r2t: &PuiseuxTruncation, top: i64) -> u32 {
    (0..=top)
        .take_while(|j| r2t.coefficient(Exponent::from_integer(top - j)).is_zero())
        .count() as u32
}

/// Largest `j` such that perturbing the coefficient of `t^(K - j)` in `r2*`
/// changes some coefficient of `Q3 H2 - H1` at or above `t^(D + δ)`.
fn probe_r(lift: &LiftFunction, a: &Analysis) -> u32 {
    let top = a
        .r2t
        .leading()
        .map_or(a.k as i64, |(e, _)| e.to_integer().max(a.k as i64));
    let vars = b_vars(a.degree as usize + 1);
    let base = coefficients_above(a, &vars, &a.h1, &a.h2);
    let reach = lift.h1.deg(1).max(lift.h2.deg(1)) as i64;
    let mut r = 0;
    for j in 0..=(top + a.n) {
        let e = Exponent::from_integer(top - j);
        let actual = a.r2t.coefficient(e);
        let depends = (1..=reach + 1).any(|v| {
            let value = &actual + &AN::from_int(v);
            let probe = PuiseuxTruncation::exact(
                a.r2t
                    .terms()
                    .filter(|(x, _)| **x != e)
                    .map(|(x, c)| (*x, c.clone()))
                    .chain([(e, value)]),
            );
            let h1 = eval_laurent(&lift.h1, a.k, &probe);
            let h2 = eval_laurent(&lift.h2, a.k, &probe);
            let probed = coefficients_above(a, &vars, &h1, &h2);
            let at = |list: &[(i64, MultiPoly)], x: i64| {
                list.iter()
                    .find(|(y, _)| *y == x)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| MultiPoly::zero(&vars))
            };
            let lo = a.degree + a.delta;
            let hi = probed
                .last()
                .map_or(lo, |(x, _)| *x)
                .max(base.last().map_or(lo, |(x, _)| *x));
            (lo..=hi).any(|x| at(&base, x) != at(&probed, x))
        });
        if depends {
            r = j as u32;
        }
    }
    r
}

/// `(r, n)` and the derived data for one branch. `n` is at least `r` and large
/// enough that every coefficient entering the system is exact.
pub fn determine_truncation_params(
    lift: &LiftFunction,
    b: &PlaneBranch,
) -> Result<TruncationParams> {
    params_with_extra(lift, b, 0).map(|(p, _)| p)
}

fn params_with_extra(
    lift: &LiftFunction,
    b: &PlaneBranch,
    extra: u32,
) -> Result<(TruncationParams, Analysis)> {
    let first = analyze(lift, b, extra, 0)?;
    let r = probe_r(lift, &first);
    let floor_n = (r + extra) as i64;
    let a = if floor_n > first.n {
        analyze(lift, b, extra, floor_n)?
    } else {
        first
    };
    let top = a
        .r2t
        .leading()
        .map_or(a.k as i64, |(e, _)| e.to_integer().max(a.k as i64));
    let params = TruncationParams {
        k: a.k,
        r,
        n: a.n as u32,
        ell: leading_zeros(&a.r2t, top),
        degree: a.degree as u32,
        delta: a.delta,
    };
    Ok((params, a))
}

fn build_system(
    lift: &LiftFunction,
    params: &TruncationParams,
    a: Analysis,
    extra: u32,
) -> Result<LambdaSystem> {
    let count = (a.degree + extra as i64 + 1) as usize;
    let vars = b_vars(count);
    let coefficients: Vec<MultiPoly> = (0..count as i64)
        .map(|j| affine_coefficient(&vars, &a.h1, &a.h2, a.degree, a.degree + a.delta - j))
        .collect();
    let rho = a.h2.coeff(a.delta);
    for (j, l) in coefficients.iter().enumerate() {
        if (j + 1..count).any(|i| l.deg(i) > 0) || l.coeff(&unit(count, j)) != rho {
            return Err(Error::Inconsistent(format!(
                "coefficient system is not triangular at row {j}"
            )));
        }
    }
    let d3 = lift.f3.total_degree().unwrap_or(0) as i64;
    let q2 = (0..=a.r2t.leading().map_or(0, |(e, _)| e.to_integer().max(0)))
        .map(|e| a.r2t.coefficient(Exponent::from_integer(e)))
        .collect();
    Ok(LambdaSystem {
        k: a.k,
        degree: a.degree as u32,
        extra,
        coefficients,
        rho,
        mu: a.n * d3 + a.degree + a.delta,
        n_used: a.n as u32,
        r_used: params.r,
        ell: params.ell,
        delta: a.delta,
        q2,
        h1: a.h1,
        h2: a.h2,
    })
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// The system `Λ_0, ..., Λ_D` for a branch, using at least `n` negative powers
/// of `t`; `n` is raised when too small for exact coefficients.
pub fn lambda_coefficients(lift: &LiftFunction, b: &PlaneBranch, n: u32) -> Result<LambdaSystem> {
    let (mut params, first) = params_with_extra(lift, b, 0)?;
    let a = if n as i64 > first.n {
        analyze(lift, b, 0, n as i64)?
    } else {
        first
    };
    params.n = a.n as u32;
    build_system(lift, &params, a, 0)
}

/// Forward substitution; returns `b_0, b_1, ...`.
pub fn solve_triangular(s: &LambdaSystem) -> Result<Vec<AN>> {
    if s.rho.is_zero() {
        return Err(Error::Inconsistent("zero diagonal".into()));
    }
    let rho_inv = s.rho.inv()?;
    let mut sol: Vec<AN> = Vec::with_capacity(s.coefficients.len());
    for (j, l) in s.coefficients.iter().enumerate() {
        let mut rest = l.clone();
        for (i, v) in sol.iter().enumerate() {
            rest = rest.eval_var(i, v);
        }
        let c = rest.eval(&vec![AN::zero(); rest.nvars()]);
        if rest.coeff(&unit(rest.nvars(), j)) != s.rho {
            return Err(Error::Inconsistent(format!("row {j} lost its diagonal")));
        }
        sol.push(-(&c * &rho_inv));
    }
    Ok(sol)
}

impl LambdaSystem {
    /// Degree in `t` of the numerator after substituting a solution; at most `mu - D - 1`.
    pub fn residual_degree(&self, sol: &[AN]) -> Option<i64> {
        let mut top: Option<i64> = None;
        let q_low = self.degree as i64 - sol.len() as i64 + 1;
        let hi = self.h2.degree().unwrap_or(0) + self.degree as i64;
        let hi = hi.max(self.h1.degree().unwrap_or(i64::MIN));
        let lo = self.h2.low + q_low.min(0);
        let lo = lo.min(self.h1.low);
        for e in (lo..=hi).rev() {
            let mut c = -self.h1.coeff(e);
            for (i, b) in sol.iter().enumerate() {
                c = &c + &(b * &self.h2.coeff(e - self.degree as i64 + i as i64));
            }
            if !c.is_zero() {
                top = Some(e);
                break;
            }
        }
        let shift = self.mu - self.degree as i64 - self.delta;
        top.map(|t| t + shift)
    }

    /// `q3(t) = b_0 t^D + ... + b_D` from a solution, ascending coefficients.
    pub fn q3(&self, sol: &[AN]) -> Vec<AN> {
        let d = self.degree as usize;
        (0..=d).map(|e| sol[d - e].clone()).collect()
    }
}

/// `r3` with `m` terms below the polynomial part, from the extended system;
/// checked against the series quotient.
pub fn extend_branch(lift: &LiftFunction, b: &PlaneBranch, m: u32) -> Result<SpaceBranch> {
    let (params, a) = params_with_extra(lift, b, m)?;
    let k = a.k as i64;
    let d = a.degree;
    let s = build_system(lift, &params, a, m)?;
    let sol = solve_triangular(&s)?;
    let floor = Exponent::new(-(m as i64) - 1, k);
    let r3 = PuiseuxTruncation::new(
        sol.iter()
            .enumerate()
            .map(|(i, c)| (Exponent::new(d - i as i64, k), c.clone())),
        crate::exactfield::OrderBound::Below(floor),
    );
    let lifted = lift_branch(b, lift, -floor)?;
    if !lifted.r3.agrees_above(&r3, floor) {
        return Err(Error::Inconsistent(format!(
            "extended system gives {} but the quotient gives {}",
            r3.format_in("z"),
            lifted.r3.format_in("z")
        )));
    }
    Ok(SpaceBranch {
        plane: lifted.plane,
        r2: lifted.r2,
        r3,
    })
}
