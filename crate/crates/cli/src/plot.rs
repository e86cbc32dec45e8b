//! Real sample points on branches and asymptotes.

use gasym::numeric::{self, Complex};
use gasym::spacecurve::{determinations, eval_at, SpaceAnalysis};
use gasym::{PuiseuxTruncation, Rational};
use num::{Integer, Zero};
use std::collections::HashSet;

pub const HEADER: &str = "object,z,x1,x2,x3,dist_to_asymptote";

pub struct PlotData {
    pub rows: Vec<String>,
    pub skipped: usize,
}

impl PlotData {
    pub fn render(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(r);
            out.push('\n');
        }
        if self.skipped > 0 {
            out.push_str(&format!("# skipped {} non-real points\n", self.skipped));
        }
        out
    }
}

fn real_point(
    z: &Rational,
    series: [&PuiseuxTruncation; 2],
    u: &Complex,
    n: u32,
    root: Option<&Complex>,
) -> Option<[Rational; 3]> {
    let v2 = eval_at(series[0], u, n, root);
    let v3 = eval_at(series[1], u, n, root);
    (v2.is_real() && v3.is_real()).then(|| [z.clone(), v2.re, v3.re])
}

fn distance(a: &[Rational], b: &[Rational]) -> Rational {
    let d2 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .fold(Rational::zero(), |s, x| s + x);
    numeric::sqrt(&d2)
}

/// Points at `z = ±m` for every sample magnitude `m`, over every embedding of
/// the coefficient field and every determination of `z^(1/N)`.
pub fn sample(analysis: &SpaceAnalysis, magnitudes: &[Rational], digits: usize) -> PlotData {
    let fmt = |x: &Rational| numeric::to_decimal(x, digits);
    let to_input = |y: [Rational; 3]| -> Vec<Rational> {
        match &analysis.projection.transform {
            Some(m) => m.map_vector(&y, Rational::zero(), |acc, c, v| acc + c * v),
            None => y.to_vec(),
        }
    };
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    let mut skipped = 0;
    let mut push = |row: String, rows: &mut Vec<String>| {
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    };
    for (i, r) in analysis.branches.iter().enumerate() {
        let entry = analysis
            .asymptotes
            .iter()
            .position(|e| e.branches.contains(&i))
            .unwrap_or(i);
        let Some(asym) = r.local.as_series() else {
            continue;
        };
        let b = &r.branch;
        let n = [&b.r2, &b.r3, &asym[0], &asym[1]]
            .iter()
            .fold(b.ramification().max(1), |acc, s| acc.lcm(&s.ramification()));
        let roots: Vec<Option<Complex>> = match b
            .r2
            .field()
            .or_else(|| b.r3.field())
            .or_else(|| r.local.q2.field())
        {
            Some(f) if f.degree() > 1 => numeric::embeddings(&f).into_iter().map(Some).collect(),
            _ => vec![None],
        };
        for m in magnitudes {
            for z in [m.clone(), -m.clone()] {
                for u in determinations(&z, n) {
                    for root in &roots {
                        let on_branch =
                            real_point(&z, [&b.r2, &b.r3], &u, n, root.as_ref()).map(to_input);
                        let on_asym = real_point(&z, [&asym[0], &asym[1]], &u, n, root.as_ref())
                            .map(to_input);
                        let zs = fmt(&z);
                        match (&on_branch, &on_asym) {
                            (Some(p), Some(q)) => {
                                let d = distance(p, q);
                                push(
                                    format!(
                                        "branch{},{zs},{},{},{},{}",
                                        i + 1,
                                        fmt(&p[0]),
                                        fmt(&p[1]),
                                        fmt(&p[2]),
                                        fmt(&d)
                                    ),
                                    &mut rows,
                                );
                            }
                            (Some(p), None) => {
                                push(
                                    format!(
                                        "branch{},{zs},{},{},{},",
                                        i + 1,
                                        fmt(&p[0]),
                                        fmt(&p[1]),
                                        fmt(&p[2])
                                    ),
                                    &mut rows,
                                );
                            }
                            (None, _) => skipped += 1,
                        }
                        match &on_asym {
                            Some(q) => push(
                                format!(
                                    "asymptote{},{zs},{},{},{},",
                                    entry + 1,
                                    fmt(&q[0]),
                                    fmt(&q[1]),
                                    fmt(&q[2])
                                ),
                                &mut rows,
                            ),
                            None => skipped += 1,
                        }
                    }
                }
            }
        }
    }
    PlotData { rows, skipped }
}
