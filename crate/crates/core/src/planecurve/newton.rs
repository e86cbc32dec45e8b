//! Newton polygon expansion of the roots `x2(x1)` of a plane polynomial as
//! `x1 -> infinity`.
//!
//! With `T = 1/x1` the polynomial becomes `G(T, Y) = T^D fp(1/T, Y)`; a root
//! is built stage by stage as `Y = P(u) + u^s Y'` with `T = u^N`, until the
//! remaining equation has a simple root, which is then solved term by term.

use crate::error::{Error, Result};
use crate::exactfield::extension::{extend, factor_over, Extension};
use crate::exactfield::{
    AlgebraicNumber, Exponent, NumberField, OrderBound, PuiseuxTruncation, UniPoly,
};
use crate::polynomial::MultiPoly;
use num::Integer;
use std::sync::{Arc, Mutex};

type AN = AlgebraicNumber;

/// Dense bivariate polynomial, `rows[j][i]` the coefficient of `T^i Y^j`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Bivariate {
    rows: Vec<Vec<AN>>,
}

impl Bivariate {
    fn new(mut rows: Vec<Vec<AN>>) -> Self {
        for r in rows.iter_mut() {
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Bivariate { rows }
    }

    /// `T^D fp(1/T, Y)` with `D = deg_x1 fp`, for `fp` in the first two variables.
    pub(crate) fn at_infinity(fp: &MultiPoly) -> Self {
        let d = fp.deg(0) as usize;
        let dy = fp.deg(1) as usize;
        let mut rows = vec![vec![AN::zero(); d + 1]; dy + 1];
        for (e, c) in fp.terms() {
            rows[e[1] as usize][d - e[0] as usize] = c.clone();
        }
        Self::new(rows)
    }

    fn points(&self) -> impl Iterator<Item = (usize, usize, &AN)> {
        self.rows.iter().enumerate().flat_map(|(j, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (j, i, c))
        })
    }

    fn embed(&self, ext: &Extension) -> Self {
        Bivariate {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| ext.embed(c)).collect())
                .collect(),
        }
    }

    /// `u^-ord G(u^q, u^p (c + Y))`.
    fn substitute(&self, p: i64, q: i64, c: &AN, ord: i64) -> Self {
        let ny = self.rows.len();
        let mut binom: Vec<Vec<AN>> = vec![vec![AN::one()]];
        for j in 1..ny {
            let prev = &binom[j - 1];
            let mut next = vec![AN::zero(); j + 1];
            for (l, b) in prev.iter().enumerate() {
                next[l] = &next[l] + &(b * c);
                next[l + 1] = &next[l + 1] + b;
            }
            binom.push(next);
        }
        let mut rows: Vec<Vec<AN>> = vec![Vec::new(); ny];
        for (j, i, a) in self.points() {
            let e = q * i as i64 + p * j as i64 - ord;
            debug_assert!(e >= 0);
            let e = e as usize;
            for (l, b) in binom[j].iter().enumerate() {
                let row = &mut rows[l];
                if row.len() <= e {
                    row.resize(e + 1, AN::zero());
                }
                row[e] = &row[e] + &(a * b);
            }
        }
        Self::new(rows)
    }

    fn y_divisible(&self) -> bool {
        self.rows.first().is_some_and(|r| r.is_empty())
    }

    fn divide_by_y(&self) -> Self {
        Bivariate {
            rows: self.rows[1..].to_vec(),
        }
    }
}

/// One polygon edge: slope `gamma = p/q` (so `Y ~ c T^gamma`), the value `ord`
/// of `q i + p j` along it and its left end.
struct Edge {
    p: i64,
    q: i64,
    ord: i64,
    j_left: usize,
    j_right: usize,
}

fn lower_hull(g: &Bivariate, j_max: Option<usize>) -> Vec<Edge> {
    let mut best: Vec<Option<usize>> = vec![None; g.rows.len()];
    for (j, i, _) in g.points() {
        if j_max.is_some_and(|m| j > m) {
            continue;
        }
        if best[j].is_none_or(|b| i < b) {
            best[j] = Some(i);
        }
    }
    let pts: Vec<(i64, i64)> = best
        .iter()
        .enumerate()
        .filter_map(|(j, b)| b.map(|i| (j as i64, i as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let ((ja, ia), (jb, ib)) = (w[0], w[1]);
            let (num, den) = (ia - ib, jb - ja);
            let g = num.gcd(&den);
            let (p, q) = (num / g, den / g);
            Edge {
                p,
                q,
                ord: q * ia + p * ja,
                j_left: ja as usize,
                j_right: jb as usize,
            }
        })
        .collect()
}

/// Characteristic polynomial `Psi(u)` of an edge, where `Phi(c) = Psi(c^q)`.
fn characteristic(g: &Bivariate, e: &Edge) -> UniPoly {
    let mut cs = vec![AN::zero(); (e.j_right - e.j_left) / e.q as usize + 1];
    for (j, i, a) in g.points() {
        if j >= e.j_left && j <= e.j_right && e.q * i as i64 + e.p * j as i64 == e.ord {
            cs[(j - e.j_left) / e.q as usize] = a.clone();
        }
    }
    UniPoly::new(cs)
}

/// Simple-root stage: `G(0,0) = 0`, `G_Y(0,0) != 0`; the root is `sum y_i v^i`, `i >= 1`.
#[derive(Debug)]
pub(crate) struct RegularSeed {
    g: Bivariate,
    cache: Mutex<Vec<AN>>,
}

impl RegularSeed {
    fn new(g: Bivariate) -> Self {
        RegularSeed {
            g,
            cache: Mutex::new(Vec::new()),
        }
    }

    /// `y_1, ..., y_m`.
    pub(crate) fn coefficients(&self, m: usize) -> Vec<AN> {
        let mut known = self.cache.lock().expect("cache lock");
        while known.len() < m {
            let next = self.next(&known);
            known.push(next);
        }
        known[..m].to_vec()
    }

    fn next(&self, known: &[AN]) -> AN {
        let i = known.len() + 1;
        let mut y = vec![AN::zero()];
        y.extend_from_slice(known);
        let mut pow = vec![AN::one()];
        let mut total = AN::zero();
        for (j, row) in self.g.rows.iter().enumerate() {
            if j > i {
                break;
            }
            if j > 0 {
                pow = mul_trunc(&pow, &y, i);
            }
            for (l, gl) in row.iter().enumerate().take(i + 1) {
                if let Some(pc) = pow.get(i - l) {
                    if !gl.is_zero() && !pc.is_zero() {
                        total = &total + &(gl * pc);
                    }
                }
            }
        }
        let dy = &self.g.rows[1][0];
        -(&total / dy)
    }
}

fn mul_trunc(a: &[AN], b: &[AN], n: usize) -> Vec<AN> {
    let mut out = vec![AN::zero(); (a.len() + b.len()).min(n + 1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > n {
                break;
            }
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// A root in progress: `Y = sum prefix + u^sigma Y'`, `T = u^n`.
#[derive(Clone, Debug)]
struct State {
    field: Option<Arc<NumberField>>,
    prefix: Vec<(i64, AN)>,
    sigma: i64,
    n: i64,
    classes: usize,
}

impl State {
    fn embed(&self, ext: &Extension) -> Self {
        State {
            field: Some(ext.field.clone()),
            prefix: self
                .prefix
                .iter()
                .map(|(m, c)| (*m, ext.embed(c)))
                .collect(),
            ..self.clone()
        }
    }
}

/// A root representative: exact (finite) or continued by a regular seed.
#[derive(Clone, Debug)]
pub(crate) struct RawRoot {
    pub field: Option<Arc<NumberField>>,
    pub prefix: Vec<(i64, AN)>,
    pub sigma: i64,
    pub n: u32,
    pub classes: usize,
    pub seed: Option<Arc<RegularSeed>>,
}

impl RawRoot {
    /// Series in `z = x1` with every exponent `> -order` determined.
    pub(crate) fn series(&self, order: Exponent) -> PuiseuxTruncation {
        let n = self.n as i64;
        let to_z = |m: i64| Exponent::new(-m, n);
        let mut terms: Vec<(Exponent, AN)> = self
            .prefix
            .iter()
            .map(|(m, c)| (to_z(*m), c.clone()))
            .collect();
        match &self.seed {
            None => PuiseuxTruncation::exact(terms),
            Some(seed) => {
                let target = (order * Exponent::from_integer(n)).ceil().to_integer();
                let count = (target - self.sigma - 1).max(-self.sigma).max(0) as usize;
                for (i, c) in seed.coefficients(count).into_iter().enumerate() {
                    terms.push((to_z(self.sigma + i as i64 + 1), c));
                }
                PuiseuxTruncation::new(
                    terms,
                    OrderBound::Below(to_z(self.sigma + count as i64 + 1)),
                )
            }
        }
    }
}

/// Every root `x2(x1)` of `fp` at `x1 -> infinity`, one representative per conjugacy class.
pub(crate) fn roots_at_infinity(fp: &MultiPoly) -> Result<Vec<RawRoot>> {
    let g = Bivariate::at_infinity(fp);
    let field = fp.field();
    let st = State {
        field,
        prefix: Vec::new(),
        sigma: 0,
        n: 1,
        classes: 1,
    };
    let mut out = Vec::new();
    solve(g, st, None, &mut out)?;
    Ok(out)
}

fn solve(
    mut g: Bivariate,
    st: State,
    mut limit: Option<usize>,
    out: &mut Vec<RawRoot>,
) -> Result<()> {
    if g.rows.is_empty() {
        return Err(Error::InvalidInput(
            "zero polynomial has no branches".into(),
        ));
    }
    if g.y_divisible() {
        out.push(RawRoot {
            field: st.field.clone(),
            prefix: st.prefix.clone(),
            sigma: st.sigma,
            n: st.n as u32,
            classes: st.classes,
            seed: None,
        });
        g = g.divide_by_y();
        limit = limit.map(|m| m - 1);
        if limit == Some(0) || g.rows.len() <= 1 {
            return Ok(());
        }
    }
    if limit == Some(1) {
        out.push(RawRoot {
            field: st.field.clone(),
            prefix: st.prefix.clone(),
            sigma: st.sigma,
            n: st.n as u32,
            classes: st.classes,
            seed: Some(Arc::new(RegularSeed::new(g))),
        });
        return Ok(());
    }
    for edge in lower_hull(&g, limit) {
        let psi_all = characteristic(&g, &edge);
        for (psi, mult) in factor_over(&psi_all, st.field.as_ref())? {
            // c^q is a root of psi; adjoin one c
            let mut cq = vec![AN::zero(); edge.q as usize];
            cq.push(AN::one());
            let phi = psi.compose(&UniPoly::new(cq));
            let first = factor_over(&phi, st.field.as_ref())?.remove(0).0;
            let (c, st2, g2) = if first.degree() == Some(1) {
                (-first.coeff(0), st.clone(), g.clone())
            } else {
                let ext = extend(st.field.as_ref(), &first)?;
                (ext.root.clone(), st.embed(&ext), g.embed(&ext))
            };
            let sigma = edge.q * st2.sigma + edge.p;
            let mut prefix: Vec<(i64, AN)> = st2
                .prefix
                .iter()
                .map(|(m, x)| (m * edge.q, x.clone()))
                .collect();
            prefix.push((sigma, c.clone()));
            let next = State {
                field: st2.field,
                prefix,
                sigma,
                n: st2.n * edge.q,
                classes: st2.classes * psi.degree().unwrap_or(1),
            };
            let g3 = g2.substitute(edge.p, edge.q, &c, edge.ord);
            solve(g3, next, Some(mult), out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    #[test]
    fn root_count_matches_degree() {
        for s in [
            "x2^2 - x1^3 + 1",
            "x2^3 - x1*x2 + x1^2 - 2",
            "x2 - x1",
            "(x2 - x1)*(x2^2 - 2*x1^2 + 1)",
        ] {
            let fp = parse_poly(s, &["x1", "x2"]).unwrap();
            let roots = roots_at_infinity(&fp).unwrap();
            let total: usize = roots.iter().map(|r| r.classes * r.n as usize).sum();
            assert_eq!(total, fp.deg(1) as usize, "{s}");
        }
    }
}
