//! Recursive gcd through contents and primitive remainder sequences.

use super::resultant::prem;
use super::MultiPoly;

fn first_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.deg(i) > 0 || b.deg(i) > 0)
}

/// Content with respect to `var`: the gcd of the coefficients in `var`, made monic.
pub fn content_in(f: &MultiPoly, var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(f.vars());
    for c in f.coeffs_in(var) {
        acc = gcd(&acc, &c);
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    acc
}

pub fn primitive_part_in(f: &MultiPoly, var: usize) -> MultiPoly {
    if f.is_zero() {
        return f.clone();
    }
    f.exact_divide(&content_in(f, var))
        .expect("content divides")
}

/// Removes the numeric content to keep remainder coefficients small.
fn shrink(f: &MultiPoly) -> MultiPoly {
    if f.terms().all(|(_, c)| c.is_rational()) {
        f.primitive_integer()
    } else {
        f.monic()
    }
}

/// Monic gcd (leading coefficient 1 in lexicographic order).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(v) = first_var(a, b) else {
        return MultiPoly::one(a.vars());
    };
    if a.deg(v) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if b.deg(v) == 0 {
        return gcd(&content_in(a, v), b);
    }
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let c = gcd(&ca, &cb);
    let mut x = a.exact_divide(&ca).expect("content divides");
    let mut y = b.exact_divide(&cb).expect("content divides");
    if x.deg(v) < y.deg(v) {
        std::mem::swap(&mut x, &mut y);
    }
    let g = loop {
        let r = prem(&x, &y, v);
        if r.is_zero() {
            break y;
        }
        if r.deg(v) == 0 {
            break MultiPoly::one(a.vars());
        }
        x = y;
        y = shrink(&primitive_part_in(&r, v));
    };
    c.mul(&primitive_part_in(&g, v)).monic()
}

/// Product of the distinct irreducible factors, made monic.
pub fn squarefree_part(f: &MultiPoly) -> MultiPoly {
    let Some(v) = first_var(f, f) else {
        return MultiPoly::one(f.vars());
    };
    let c = content_in(f, v);
    let p = f.exact_divide(&c).expect("content divides");
    let g = gcd(&p, &p.derivative(v));
    let core = p.exact_divide(&g).expect("gcd divides");
    squarefree_part(&c).mul(&core).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let g = p("x1*x2 - x3 + 1");
        let a = g.mul(&p("x1 + x3^2"));
        let b = g.mul(&p("x2^2 - 3"));
        assert_eq!(gcd(&a, &b), g.monic());
        assert_eq!(
            gcd(&p("x1 + 1"), &p("x2")).constant_value().unwrap(),
            1.into()
        );
    }

    #[test]
    fn squarefree() {
        let f = p("(x1 - x2)^2*(x3 + x1)*(x2 + 2)^3");
        assert_eq!(
            squarefree_part(&f),
            p("(x1 - x2)*(x3 + x1)*(x2 + 2)").monic()
        );
    }
}
