//! Dense univariate polynomials over the rationals, stored as ascending
//! coefficient vectors without trailing zeros. The zero polynomial is empty.

use super::Rational;
use num::{BigInt, Integer, One, Signed, Zero};

pub type QPoly = Vec<Rational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(mut p: QPoly) -> QPoly {
    trim(&mut p);
    p
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn from_ints(c: &[i64]) -> QPoly {
    trimmed(c.iter().map(|&x| super::rat(x)).collect())
}

pub fn add(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x + y);
    }
    trimmed(out)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    trimmed(out)
}

pub fn scale(a: &[Rational], c: &Rational) -> QPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

pub fn pow(a: &[Rational], e: usize) -> QPoly {
    let mut out = vec![Rational::one()];
    for _ in 0..e {
        out = mul(&out, a);
    }
    out
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &inv;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (trimmed(q), r)
}

pub fn rem(a: &[Rational], b: &[Rational]) -> QPoly {
    divrem(a, b).1
}

pub fn monic(a: &[Rational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = l.recip();
            a.iter().map(|x| x * &inv).collect()
        }
    }
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub fn ext_gcd(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last().cloned() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = l.recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative(a: &[Rational]) -> QPoly {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn eval(a: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `a(b(x))`.
pub fn compose(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut acc: QPoly = Vec::new();
    for c in a.iter().rev() {
        acc = add(&mul(&acc, b), std::slice::from_ref(c));
    }
    acc
}

/// Resultant by the Euclidean recurrence; agrees with the Sylvester
/// determinant taken with the rows of `a` first.
pub fn resultant(a: &[Rational], b: &[Rational]) -> Rational {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return acc * num::pow(b[0].clone(), da);
        }
        let r = rem(&a, &b);
        if r.is_empty() {
            return Rational::zero();
        }
        let dr = r.len() - 1;
        if da % 2 == 1 && db % 2 == 1 {
            acc = -acc;
        }
        acc *= num::pow(b[db].clone(), da - dr);
        a = b;
        b = r;
    }
}

pub fn is_squarefree(a: &[Rational]) -> bool {
    gcd(a, &derivative(a)).len() <= 1
}

/// Yun's algorithm; returns monic squarefree factors with multiplicities.
pub fn squarefree_decomposition(a: &[Rational]) -> Vec<(QPoly, usize)> {
    let f = monic(&trimmed(a.to_vec()));
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let df = derivative(&f);
    let a0 = gcd(&f, &df);
    let mut b = divrem(&f, &a0).0;
    let mut c = divrem(&df, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    loop {
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divrem(&b, &a).0;
        if b.len() <= 1 {
            break;
        }
        c = divrem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

/// Primitive integer polynomial proportional to `a` with positive leading coefficient.
pub fn to_primitive_integer(a: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in a {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = a
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    if ints.last().is_some_and(|l| l.is_negative()) {
        g = -g;
    }
    for c in ints.iter_mut() {
        *c = &*c / &g;
    }
    ints
}

pub fn from_integers(a: &[BigInt]) -> QPoly {
    trimmed(
        a.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> QPoly {
    let n = xs.len();
    let mut coef: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out: QPoly = Vec::new();
    for i in (0..n).rev() {
        out = add(
            &mul(&out, &[-xs[i].clone(), Rational::one()]),
            &[coef[i].clone()],
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_of_linears() {
        // Res(x - 2, x - 5) = 2 - 5
        assert_eq!(
            resultant(&from_ints(&[-2, 1]), &from_ints(&[-5, 1])),
            crate::exactfield::rat(-3)
        );
    }

    #[test]
    fn yun_splits_powers() {
        // (x-1)^2 (x+2)^3
        let f = mul(&pow(&from_ints(&[-1, 1]), 2), &pow(&from_ints(&[2, 1]), 3));
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(from_ints(&[-1, 1]), 2), (from_ints(&[2, 1]), 3)]);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = from_ints(&[3, 0, -2, 5]);
        let xs: Vec<Rational> = (0..4).map(crate::exactfield::rat).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| eval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }
}
