//! Resultants: the subresultant remainder sequence and the Sylvester
//! determinant, which serves as an independent check.

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::exactfield::AlgebraicNumber;

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` on coefficient vectors.
pub(crate) fn prem_coeffs(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let lb = b.last().expect("nonzero divisor").clone();
    let mut e = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let lr = r.last().expect("nonempty").clone();
        let k = r.len() - b.len();
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = r[i + k].sub(&lr.mul(bc));
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

pub(crate) fn prem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let r = prem_coeffs(&a.coeffs_in(var), &b.coeffs_in(var));
    MultiPoly::from_coeffs_in(a.vars(), var, &r)
}

/// Polynomial remainder sequence in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrsSequence {
    pub var: usize,
    /// `[A, B, R1, R2, ...]`, strictly decreasing degree in `var` after the first pair.
    pub elements: Vec<MultiPoly>,
    pub resultant: MultiPoly,
}

impl PrsSequence {
    /// Last element of the given degree in the eliminated variable.
    pub fn element_of_degree(&self, d: u32) -> Option<&MultiPoly> {
        self.elements
            .iter()
            .rev()
            .find(|e| !e.is_zero() && e.deg(self.var) == d)
    }
}

/// Subresultant PRS of `f` and `g` in variable `var`, with the exact resultant.
pub fn subresultant_prs(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<PrsSequence> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidInput(
            "resultant of the zero polynomial".into(),
        ));
    }
    let vars = f.vars().clone();
    let one = MultiPoly::one(&vars);
    let (mut a, mut b) = (f.coeffs_in(var), g.coeffs_in(var));
    let mut s = AlgebraicNumber::one();
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = -&s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut elements = vec![
        MultiPoly::from_coeffs_in(&vars, var, &a),
        MultiPoly::from_coeffs_in(&vars, var, &b),
    ];
    if b.len() == 1 {
        let r = b[0].pow((a.len() - 1) as u32).scale(&s);
        return Ok(PrsSequence {
            var,
            elements,
            resultant: r,
        });
    }
    let mut gg = one.clone();
    let mut h = one.clone();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = -&s;
        }
        let r = prem_coeffs(&a, &b);
        a = b;
        let div = gg.mul(&h.pow(delta));
        b = r
            .iter()
            .map(|c| c.exact_divide(&div))
            .collect::<Result<Vec<_>>>()?;
        if b.is_empty() {
            return Ok(PrsSequence {
                var,
                elements,
                resultant: MultiPoly::zero(&vars),
            });
        }
        elements.push(MultiPoly::from_coeffs_in(&vars, var, &b));
        gg = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta).exact_divide(&h.pow(delta - 1))?
        };
        if b.len() == 1 {
            let da = (a.len() - 1) as u32;
            let res = b[0].pow(da).exact_divide(&h.pow(da - 1))?;
            return Ok(PrsSequence {
                var,
                elements,
                resultant: res.scale(&s),
            });
        }
    }
}

/// `Res_var(f, g)` through the subresultant PRS.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    Ok(subresultant_prs(f, g, var)?.resultant)
}

/// Sylvester matrix of `f` and `g` in `var`, both of positive degree.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<Vec<Vec<MultiPoly>>> {
    let (m, n) = (f.deg(var) as usize, g.deg(var) as usize);
    if f.is_zero() || g.is_zero() || m == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "Sylvester matrix needs positive degrees".into(),
        ));
    }
    let vars = f.vars();
    let size = m + n;
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let mut rows = Vec::with_capacity(size);
    for (coeffs, count, deg) in [(&fc, n, m), (&gc, m, n)] {
        for i in 0..count {
            let mut row = vec![MultiPoly::zero(vars); size];
            for j in 0..=deg {
                row[i + j] = coeffs[deg - j].clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// `Res_var(f, g)` as the Sylvester determinant, by fraction-free elimination.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    let mut m = sylvester_matrix(f, g, var)?;
    let n = m.len();
    let vars = f.vars().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(&vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_divide(&prev)?;
            }
            m[i][k] = MultiPoly::zero(&vars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn agrees_with_sylvester() {
        let cases = [
            ("x1*x3^2 + x2*x3 - 1", "x3^3 - x1*x2 + x3"),
            ("x3^2 - x1", "x3^2 - x2"),
            ("(x1 + x2)*x3 - 1", "x3^4 + x1*x3^2 + x2"),
            ("x3^3 + x3 + x1", "x1*x3^2 - x2"),
        ];
        for (a, b) in cases {
            let (a, b) = (p(a), p(b));
            let r = resultant(&a, &b, 2).unwrap();
            assert_eq!(r, sylvester_resultant(&a, &b, 2).unwrap(), "{a} / {b}");
            let swapped = resultant(&b, &a, 2).unwrap();
            let sign = if a.deg(2) % 2 == 1 && b.deg(2) % 2 == 1 {
                r.neg()
            } else {
                r.clone()
            };
            assert_eq!(swapped, sign);
        }
    }

    #[test]
    fn common_root_gives_zero() {
        let a = p("(x3 - x1)*(x3 + 1)");
        let b = p("(x3 - x1)*(x3 - x2)");
        assert!(resultant(&a, &b, 2).unwrap().is_zero());
        assert!(sylvester_resultant(&a, &b, 2).unwrap().is_zero());
    }

    #[test]
    fn sequence_contains_linear_element() {
        let a = p("x3^2 + x1*x3 - x2");
        let b = p("x3^2 - x2*x3 + x1");
        let prs = subresultant_prs(&a, &b, 2).unwrap();
        let lin = prs.element_of_degree(1).unwrap();
        assert_eq!(lin.deg(2), 1);
        assert_eq!(prs.resultant.deg(2), 0);
    }
}
