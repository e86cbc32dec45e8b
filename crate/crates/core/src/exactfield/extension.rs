//! Factorization over number fields by norms (Trager), simple field towers
//! flattened through a primitive element, and cyclotomic polynomials.

use super::qpoly::{self, QPoly};
use super::{factor, AlgebraicNumber, NumberField, Rational, UniPoly};
use crate::error::{Error, Result};
use num::{One, Zero};
use std::sync::Arc;

/// Monic irreducible factors over `field` (or `Q`) with multiplicities.
pub fn factor_over(f: &UniPoly, field: Option<&Arc<NumberField>>) -> Result<Vec<(UniPoly, usize)>> {
    if f.degree().is_none() {
        return Err(Error::InvalidInput(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let field = match field.filter(|k| k.degree() > 1) {
        None => {
            let q = f.to_rationals().ok_or_else(|| {
                Error::InvalidInput("algebraic coefficients without a field".into())
            })?;
            return Ok(factor::factor_rational(&q)
                .into_iter()
                .map(|(g, e)| (UniPoly::from_rationals(&g), e))
                .collect());
        }
        Some(k) => k,
    };
    for c in f.coeffs() {
        c.in_field(Some(field))?;
    }
    let mut out = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        for h in trager(&g, field)? {
            out.push((h, e));
        }
    }
    out.sort();
    Ok(out)
}

fn shifts() -> impl Iterator<Item = i64> {
    (0i64..)
        .map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })
        .skip(1)
}

/// `g(x - s θ)` over the field of `θ`.
fn shift_poly(g: &UniPoly, theta: &AlgebraicNumber, s: i64) -> UniPoly {
    let lin = UniPoly::new(vec![
        -(theta * &AlgebraicNumber::from_int(s)),
        AlgebraicNumber::one(),
    ]);
    g.compose(&lin)
}

/// `Res_θ(m(θ), g(θ, x))`, computed by interpolation in `x`.
pub fn norm(g: &UniPoly, field: &Arc<NumberField>) -> QPoly {
    let reps: Vec<QPoly> = g.coeffs().iter().map(|c| c.rep()).collect();
    let deg = (reps.len() - 1) * field.degree();
    let xs: Vec<Rational> = (0..=deg as i64).map(super::rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let mut acc: QPoly = Vec::new();
            for r in reps.iter().rev() {
                acc = qpoly::add(&qpoly::scale(&acc, x), r);
            }
            qpoly::resultant(field.minpoly(), &acc)
        })
        .collect();
    qpoly::interpolate(&xs, &ys)
}

fn trager(g: &UniPoly, field: &Arc<NumberField>) -> Result<Vec<UniPoly>> {
    let g = g.monic();
    if g.degree() == Some(1) {
        return Ok(vec![g]);
    }
    let theta = field.generator();
    for s in std::iter::once(0).chain(shifts()) {
        let gs = shift_poly(&g, &theta, s);
        let n = norm(&gs, field);
        if !qpoly::is_squarefree(&n) {
            continue;
        }
        let parts = factor::factor_rational(&n);
        if parts.len() == 1 {
            return Ok(vec![g]);
        }
        let mut out = Vec::new();
        for (ni, _) in parts {
            let h = gs.gcd(&UniPoly::from_rationals(&ni));
            out.push(shift_poly(&h, &theta, -s).monic());
        }
        return Ok(out);
    }
    unreachable!("some shift yields a squarefree norm")
}

/// A simple extension `L = K(α)` presented as `Q(γ)` with `γ = α + s θ`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: Arc<NumberField>,
    /// Image of the generator of the base field in `L`; `None` when the base is `Q`.
    pub base_image: Option<AlgebraicNumber>,
    /// The adjoined root `α`.
    pub root: AlgebraicNumber,
}

impl Extension {
    /// Maps an element of the base field into `L`.
    pub fn embed(&self, a: &AlgebraicNumber) -> AlgebraicNumber {
        match (&self.base_image, a.is_rational()) {
            (_, true) => a.clone(),
            (Some(img), false) => a.map_generator(img),
            (None, false) => panic!("element outside the base field"),
        }
    }
}

/// Adjoins a root of `phi`, irreducible of degree ≥ 2 over the base.
pub fn extend(base: Option<&Arc<NumberField>>, phi: &UniPoly) -> Result<Extension> {
    let phi = phi.monic();
    let base = base.filter(|k| k.degree() > 1);
    let Some(k) = base else {
        let q = phi
            .to_rationals()
            .ok_or_else(|| Error::InvalidInput("algebraic coefficients without a field".into()))?;
        let l = NumberField::new_unchecked(&q);
        let root = l.generator();
        return Ok(Extension {
            field: l,
            base_image: None,
            root,
        });
    };
    let theta = k.generator();
    for s in shifts() {
        let n = norm(&shift_poly(&phi, &theta, s), k);
        if !qpoly::is_squarefree(&n) {
            continue;
        }
        let l = NumberField::new_unchecked(&n);
        let gamma = l.generator();
        // P(y) = phi~(y, γ - s y), with θ replaced by y
        let lin = UniPoly::new(vec![gamma.clone(), AlgebraicNumber::from_int(-s)]);
        let mut p = UniPoly::zero();
        let mut pw = UniPoly::constant(AlgebraicNumber::one());
        for c in phi.coeffs() {
            p = p.add(&UniPoly::from_rationals(&c.rep()).mul(&pw));
            pw = pw.mul(&lin);
        }
        let m = UniPoly::from_rationals(k.minpoly());
        let g = m.gcd(&p);
        if g.degree() != Some(1) {
            continue;
        }
        let img = -g.coeff(0);
        let root = &gamma - &(&img * &AlgebraicNumber::from_int(s));
        return Ok(Extension {
            field: l,
            base_image: Some(img),
            root,
        });
    }
    unreachable!("some shift gives a primitive element")
}

/// Cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: u32) -> QPoly {
    let mut p: QPoly = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = qpoly::divrem(&p, &cyclotomic(d)).0;
        }
    }
    p
}

/// A primitive `n`-th root of unity in an extension of `base`.
pub fn root_of_unity(
    base: Option<&Arc<NumberField>>,
    n: u32,
) -> Result<(Option<Extension>, AlgebraicNumber)> {
    let phi = UniPoly::from_rationals(&cyclotomic(n));
    let facs = factor_over(&phi, base)?;
    let f = &facs[0].0;
    if f.degree() == Some(1) {
        return Ok((None, -f.coeff(0)));
    }
    let ext = extend(base, f)?;
    let root = ext.root.clone();
    Ok((Some(ext), root))
}
