//! Shared inputs for the integration tests: the worked examples and seeded
//! random curve generators.
#![allow(dead_code)]

use gasym::exactfield::Exponent;
use gasym::planecurve::{infinity_branches, residual_vanishes};
use gasym::polynomial::{parse_poly, resultant, sylvester_resultant, var_list, MultiPoly};
use gasym::spacecurve::{
    analyze_curve, extend_branch, lift_branch, project, space_residual_vanishes, AsymptoteParam,
    BranchResult, LambdaSystem, Method, PipelineOptions, SpaceAnalysis,
};
use gasym::AlgebraicNumber;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn poly(s: &str) -> MultiPoly {
    parse_poly(s, &["x1", "x2", "x3"]).unwrap()
}

pub fn first_example() -> (MultiPoly, MultiPoly) {
    (
        poly("-x3^2 + 2*x1*x2 + x1*x3 - x2 + 2"),
        poly("x3 - x1*x2 + x2^2"),
    )
}

pub fn second_example() -> (MultiPoly, MultiPoly) {
    (
        poly("x1*x2^4 - x2^5 - 2*x1^2*x2^2 + 4*x1*x2^3 - 2*x2^4 + x1^3 - 3*x1^2*x2 + 3*x1*x2^2 - x2^3 - 4*x1*x2 + 4*x2^2 - 1"),
        poly("x1^2*x2 + 2*x1*x2*x3 - x2^2*x3 + x2^2 + x1 - x2 + x3"),
    )
}

pub fn conjugate_example() -> (MultiPoly, MultiPoly) {
    (
        poly("2*x1^3 + x1*x3^2 + x3^3 + 4*x3"),
        poly("-x1^2 - x3^2 + x2"),
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

/// Sum of `terms` random monomials in the variables `0..nvars` (of three)
/// with total degree in `degrees`, plus `forced` monomials.
fn random_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    degrees: (u32, u32),
    terms: usize,
    forced: &[[u32; 3]],
) -> MultiPoly {
    let vars = var_list(&["x1", "x2", "x3"]);
    let mut out: Vec<(Vec<u32>, AlgebraicNumber)> = forced
        .iter()
        .map(|e| (e.to_vec(), AlgebraicNumber::from_int(nonzero(rng, 3))))
        .collect();
    for _ in 0..terms {
        let d = rng.gen_range(degrees.0..=degrees.1);
        let mut e = [0u32; 3];
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        out.push((e.to_vec(), AlgebraicNumber::from_int(nonzero(rng, 3))));
    }
    MultiPoly::from_terms(&vars, out)
}

/// `f1` of total degree at most 3 involving `x3`, and `f2 = c*x3 + d` with
/// `c, d` in `x1, x2`, so that the total degree of `f2` is at most 3.
pub fn random_space_curve(rng: &mut ChaCha8Rng) -> (MultiPoly, MultiPoly) {
    let f1 = random_poly(rng, 3, (1, 3), 3, &[[0, 0, 2]]);
    let lead = if rng.gen_bool(0.5) {
        random_poly(rng, 2, (0, 0), 0, &[[0, 0, 0]])
    } else {
        random_poly(rng, 2, (1, 1), 1, &[[0, 0, 0]])
    };
    let x3 = MultiPoly::var(f1.vars(), 2);
    let f2 = lead.mul(&x3).add(&random_poly(rng, 2, (1, 3), 3, &[]));
    (f1, f2)
}

/// Plane curve `g(x1, x2) = 0` lifted by `x3 = p(x1, x2)`.
pub fn random_graph_curve(rng: &mut ChaCha8Rng) -> (MultiPoly, MultiPoly) {
    let g = random_poly(rng, 2, (1, 3), 3, &[[0, 2, 0], [2, 0, 0]]);
    let p = random_poly(rng, 2, (0, 2), 3, &[]);
    let x3 = MultiPoly::var(g.vars(), 2);
    (g, x3.sub(&p))
}

pub fn serial() -> PipelineOptions {
    PipelineOptions {
        parallel: false,
        ..PipelineOptions::default()
    }
}

/// The first `count` seeded random curves whose resultant is squarefree of
/// total degree at most 6, so that the lift is valid on every component.
pub fn corpus(count: usize) -> Vec<(MultiPoly, MultiPoly)> {
    let mut r = rng(7);
    let mut out = Vec::new();
    while out.len() < count {
        let (f1, f2) = random_space_curve(&mut r);
        let Ok(p) = project(&f1, &f2) else { continue };
        let res = resultant(&p.f1, &p.f2, 2).unwrap();
        if p.fp.total_degree().is_some_and(|d| d <= 6) && res.total_degree() == p.fp.total_degree()
        {
            out.push((f1, f2));
        }
    }
    out
}

/// The three worked examples followed by the random corpus.
pub fn all_curves(count: usize) -> Vec<(String, MultiPoly, MultiPoly)> {
    let mut out = vec![];
    for (name, (f1, f2)) in [
        ("first", first_example()),
        ("second", second_example()),
        ("conjugate", conjugate_example()),
    ] {
        out.push((name.to_string(), f1, f2));
    }
    for (i, (f1, f2)) in corpus(count).into_iter().enumerate() {
        out.push((format!("random {i}"), f1, f2));
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// `Λ_j` is free of `b_i` for `i > j` and has diagonal coefficient `ρ ≠ 0`.
pub fn check_triangular(s: &LambdaSystem) -> Result<(), String> {
    if s.rho.is_zero() {
        return Err("zero diagonal".into());
    }
    let n = s.coefficients.len();
    for (j, l) in s.coefficients.iter().enumerate() {
        if let Some(i) = (j + 1..n).find(|&i| l.deg(i) > 0) {
            return Err(format!("Λ{j} involves b{i}"));
        }
        if l.coeff(&unit(n, j)) != s.rho {
            return Err(format!(
                "Λ{j} has diagonal {} instead of {}",
                l.coeff(&unit(n, j)),
                s.rho
            ));
        }
    }
    Ok(())
}

/// Degree of the numerator after solving is at most `μ - D - 1`, and so at most `μ - k - 1`.
pub fn check_residual_degree(s: &LambdaSystem, sol: &[AlgebraicNumber]) -> Result<(), String> {
    let bound = s.mu - s.degree as i64 - 1;
    match s.residual_degree(sol) {
        Some(d) if d > bound || d > s.mu - s.k as i64 - 1 => {
            Err(format!("residual degree {d} above {bound}"))
        }
        _ => Ok(()),
    }
}

/// The leading unknown is the coefficient of `z^(D/k)` in the lifted branch,
/// which is `m3` when `D = k`.
pub fn check_leading_unknown(r: &BranchResult) -> Result<(), String> {
    let (Some(s), Some(sol)) = (&r.system, &r.solution) else {
        return Err("no system".into());
    };
    let e = Exponent::new(s.degree as i64, s.k as i64);
    let want = r.branch.r3.coefficient(e);
    if sol[0] != want {
        return Err(format!("b0 = {} but r3 has {want} at z^{e}", sol[0]));
    }
    if s.degree == s.k && sol[0] != r.branch.m3() {
        return Err(format!("b0 = {} but m3 = {}", sol[0], r.branch.m3()));
    }
    Ok(())
}

/// Residual checks of every plane and space branch in working coordinates.
pub fn check_branch_residuals(a: &SpaceAnalysis) -> Result<(), String> {
    let p = &a.projection;
    for (i, r) in a.branches.iter().enumerate() {
        if !residual_vanishes(&p.fp, &r.branch.plane) {
            return Err(format!("plane branch {i} does not annihilate fp"));
        }
        for (name, f) in [("f1", &p.f1), ("f2", &p.f2), ("f3", &p.lift.f3)] {
            if !space_residual_vanishes(f, &r.branch) {
                return Err(format!("space branch {i} does not annihilate {name}"));
            }
        }
    }
    Ok(())
}

/// All improved-method checks on one analysis.
pub fn check_systems(a: &SpaceAnalysis) -> Result<(), String> {
    for (i, r) in a.branches.iter().enumerate() {
        let (Some(s), Some(sol)) = (&r.system, &r.solution) else {
            return Err(format!("branch {i} has no system"));
        };
        check_triangular(s).map_err(|e| format!("branch {i}: {e}"))?;
        check_residual_degree(s, sol).map_err(|e| format!("branch {i}: {e}"))?;
        check_leading_unknown(r).map_err(|e| format!("branch {i}: {e}"))?;
    }
    Ok(())
}

/// Asymptote sets of both methods, as lists sorted by their rendering.
pub fn both_methods(f1: &MultiPoly, f2: &MultiPoly) -> (Vec<AsymptoteParam>, Vec<AsymptoteParam>) {
    let sorted = |m| {
        let mut v: Vec<AsymptoteParam> = analyze_curve(f1, f2, m, &serial())
            .unwrap()
            .asymptotes
            .into_iter()
            .map(|e| e.asymptote)
            .collect();
        v.sort_by_key(|a| a.to_string());
        v
    };
    (sorted(Method::Basic), sorted(Method::Improved))
}

/// Two random polynomials of positive degree in `x3`.
pub fn random_resultant_pair(rng: &mut ChaCha8Rng) -> (MultiPoly, MultiPoly) {
    loop {
        let f = random_poly(rng, 3, (0, 3), 4, &[[0, 0, 1]]);
        let g = random_poly(rng, 3, (0, 3), 4, &[[0, 0, 1]]);
        if f.deg(2) > 0 && g.deg(2) > 0 {
            return (f, g);
        }
    }
}

/// The subresultant resultant in `x3` is a nonzero multiple of the Sylvester determinant.
pub fn check_resultant(f: &MultiPoly, g: &MultiPoly) -> Result<(), String> {
    let res = resultant(f, g, 2).map_err(|e| e.to_string())?;
    let det = sylvester_resultant(f, g, 2).map_err(|e| e.to_string())?;
    if res.is_zero() || det.is_zero() {
        return if res.is_zero() == det.is_zero() {
            Ok(())
        } else {
            Err(format!("{res} vs {det}"))
        };
    }
    let scale = res.lc().checked_div(&det.lc()).map_err(|e| e.to_string())?;
    if res == det.scale(&scale) {
        Ok(())
    } else {
        Err(format!("{res} is not a multiple of {det}"))
    }
}

/// `extend_branch` with `m` extra terms agrees with the quotient series above `z^(-(m+1)/k)`.
pub fn check_extension(f1: &MultiPoly, f2: &MultiPoly, m: u32) -> Result<(), String> {
    let pr = project(f1, f2).map_err(|e| e.to_string())?;
    for b in infinity_branches(&pr.fp, Exponent::from_integer(2)).map_err(|e| e.to_string())? {
        let k = b.ramification.max(1) as i64;
        let ext = extend_branch(&pr.lift, &b, m).map_err(|e| e.to_string())?;
        let lifted =
            lift_branch(&b, &pr.lift, Exponent::new(m as i64 + 1, k)).map_err(|e| e.to_string())?;
        if !ext
            .r3
            .agrees_above(&lifted.r3, Exponent::new(-(m as i64) - 1, k))
        {
            return Err(format!("{} vs {}", ext.r3, lifted.r3));
        }
    }
    Ok(())
}
