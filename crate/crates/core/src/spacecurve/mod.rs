//! Infinity branches and generalized asymptotes of space curves `f1 = f2 = 0`.

mod asymptote;
mod improved;
mod lift;
mod project;

pub use asymptote::{
    determinations, eliminate_lambda, eval_at, evaluate_on_param, make_proper, verify_convergence,
    AsymptoteParam, ConvergenceReport, DistanceSample,
};
pub use improved::{
    determine_truncation_params, extend_branch, lambda_coefficients, solve_triangular,
    LambdaSystem, TruncationParams,
};
pub use lift::{lift_branch, space_residual_vanishes, SpaceBranch};
pub use project::{
    lift_function, project, project_seeded, LiftFunction, Projection, DEFAULT_SEED, MAX_ATTEMPTS,
};

use crate::error::{Error, Result};
use crate::exactfield::{AlgebraicNumber, Exponent, Rational, UniPoly};
use crate::planecurve::{infinity_branches, PlaneBranch};
use crate::polynomial::MultiPoly;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Basic,
    Improved,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub seed: u64,
    /// Process branches on the rayon pool.
    pub parallel: bool,
    /// Exponents `> -order` of the lifted series are determined.
    pub order: Exponent,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            seed: DEFAULT_SEED,
            parallel: true,
            order: Exponent::from_integer(3),
        }
    }
}

/// One branch with its asymptote.
#[derive(Clone, Debug)]
pub struct BranchResult {
    pub branch: SpaceBranch,
    /// Asymptote in working coordinates, `q1 = t^k`.
    pub local: AsymptoteParam,
    /// Asymptote in the input coordinates.
    pub asymptote: AsymptoteParam,
    pub params: Option<TruncationParams>,
    pub system: Option<LambdaSystem>,
    pub solution: Option<Vec<AlgebraicNumber>>,
}

/// A distinct asymptote and the branches (indices) sharing it.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoteEntry {
    pub asymptote: AsymptoteParam,
    pub branches: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SpaceAnalysis {
    pub method: Method,
    pub projection: Projection,
    pub branches: Vec<BranchResult>,
    pub asymptotes: Vec<AsymptoteEntry>,
}

/// Space branches of the curve, one per plane branch of the projection.
pub fn space_branches(
    f1: &MultiPoly,
    f2: &MultiPoly,
    opts: &PipelineOptions,
) -> Result<(Projection, Vec<SpaceBranch>)> {
    let pr = project_seeded(f1, f2, opts.seed)?;
    let planes = infinity_branches(&pr.fp, opts.order)?;
    let lifted = run(&planes, opts.parallel, |b| {
        lift_branch(b, &pr.lift, opts.order)
    })?;
    Ok((pr, lifted))
}

fn run<T: Send>(
    planes: &[PlaneBranch],
    parallel: bool,
    f: impl Fn(&PlaneBranch) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if parallel {
        planes.par_iter().map(&f).collect()
    } else {
        planes.iter().map(f).collect()
    }
}

fn basic_one(pr: &Projection, b: &PlaneBranch, order: Exponent) -> Result<BranchResult> {
    let branch = lift_branch(b, &pr.lift, order)?;
    let local = AsymptoteParam::from_series(b.ramification.max(1), &branch.r2, &branch.r3)?;
    Ok(finish(pr, branch, local, None, None, None))
}

fn improved_one(pr: &Projection, b: &PlaneBranch, order: Exponent) -> Result<BranchResult> {
    let params = determine_truncation_params(&pr.lift, b)?;
    let system = lambda_coefficients(&pr.lift, b, params.n)?;
    let sol = solve_triangular(&system)?;
    let branch = lift_branch(b, &pr.lift, order)?;
    let q3 = UniPoly::new(system.q3(&sol));
    if q3.coeff(system.k as usize) != branch.m3() {
        return Err(Error::Inconsistent(format!(
            "leading coefficient {} of the system differs from m3 = {}",
            q3.coeff(system.k as usize),
            branch.m3()
        )));
    }
    let local = AsymptoteParam::new(system.k, UniPoly::new(system.q2.clone()), q3);
    Ok(finish(
        pr,
        branch,
        local,
        Some(params),
        Some(system),
        Some(sol),
    ))
}

fn finish(
    pr: &Projection,
    branch: SpaceBranch,
    local: AsymptoteParam,
    params: Option<TruncationParams>,
    system: Option<LambdaSystem>,
    solution: Option<Vec<AlgebraicNumber>>,
) -> BranchResult {
    let asymptote = match &pr.transform {
        Some(m) => local.transformed(m),
        None => local.clone(),
    };
    BranchResult {
        branch,
        local,
        asymptote,
        params,
        system,
        solution,
    }
}

fn number_key(a: &AlgebraicNumber) -> (Vec<Rational>, Vec<Rational>) {
    (a.minpoly().map(|m| m.to_vec()).unwrap_or_default(), a.rep())
}

/// Point at infinity, then the leading coefficient of `r2`.
fn branch_key(b: &SpaceBranch) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let mut key: Vec<_> = b.infinity_point().iter().map(number_key).collect();
    if let Some((_, c)) = b.r2.leading() {
        key.push(number_key(c));
    }
    key
}

/// Projection, branches and one asymptote per branch, merged when equal.
pub fn analyze_curve(
    f1: &MultiPoly,
    f2: &MultiPoly,
    method: Method,
    opts: &PipelineOptions,
) -> Result<SpaceAnalysis> {
    let projection = project_seeded(f1, f2, opts.seed)?;
    let planes = infinity_branches(&projection.fp, opts.order)?;
    let order = opts.order.max(Exponent::new(1, 1));
    let mut branches = run(&planes, opts.parallel, |b| match method {
        Method::Basic => basic_one(&projection, b, order),
        Method::Improved => improved_one(&projection, b, order),
    })?;
    branches.sort_by_cached_key(|r| branch_key(&r.branch));
    let mut asymptotes: Vec<AsymptoteEntry> = Vec::new();
    for (i, r) in branches.iter().enumerate() {
        match asymptotes.iter_mut().find(|e| e.asymptote == r.asymptote) {
            Some(e) => e.branches.push(i),
            None => asymptotes.push(AsymptoteEntry {
                asymptote: r.asymptote.clone(),
                branches: vec![i],
            }),
        }
    }
    Ok(SpaceAnalysis {
        method,
        projection,
        branches,
        asymptotes,
    })
}

/// Distinct asymptotes from the quotient series.
pub fn space_asymptotes_basic(f1: &MultiPoly, f2: &MultiPoly) -> Result<Vec<AsymptoteParam>> {
    Ok(
        analyze_curve(f1, f2, Method::Basic, &PipelineOptions::default())?
            .asymptotes
            .into_iter()
            .map(|e| e.asymptote)
            .collect(),
    )
}

/// Distinct asymptotes from the triangular systems.
pub fn space_asymptotes_improved(f1: &MultiPoly, f2: &MultiPoly) -> Result<Vec<AsymptoteParam>> {
    Ok(
        analyze_curve(f1, f2, Method::Improved, &PipelineOptions::default())?
            .asymptotes
            .into_iter()
            .map(|e| e.asymptote)
            .collect(),
    )
}
