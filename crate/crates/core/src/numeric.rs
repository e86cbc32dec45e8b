//! Decimal evaluation of exact quantities: complex embeddings of number
//! fields, real roots of positive rationals and fixed-digit rendering.
//! Every value is a rational approximation rounded to `PREC_BITS` bits.

use crate::exactfield::{AlgebraicNumber, Exponent, NumberField, Rational};
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use std::sync::Arc;

pub const PREC_BITS: u32 = 256;

/// Complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: Rational,
    pub im: Rational,
}

impl Complex {
    pub fn new(re: Rational, im: Rational) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Complex::new(Rational::one(), Rational::zero())
    }

    pub fn real(re: Rational) -> Self {
        Complex::new(re, Rational::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Complex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
        .rounded()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Complex::new(&self.re * r, &self.im * r).rounded()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        let conj = Complex::new(o.re.clone(), -o.im.clone());
        let p = self.mul(&conj);
        Complex::new(p.re / &n, p.im / &n).rounded()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Complex::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn rounded(&self) -> Self {
        Complex::new(
            round_dyadic(&self.re, PREC_BITS),
            round_dyadic(&self.im, PREC_BITS),
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True when the imaginary part is negligible relative to `1 + |re|`.
    pub fn is_real(&self) -> bool {
        let scale = Rational::one() + self.re.abs();
        let tol = Rational::new(BigInt::one(), BigInt::from(10).pow(40));
        self.im.abs() <= tol * scale
    }
}

/// Nearest multiple of `2^-bits`.
pub fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Rational::new((scaled + half).floor().to_integer(), scale)
}

fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

fn eval_q(p: &[Rational], x: &Complex) -> (Complex, Complex) {
    let mut v = Complex::zero();
    let mut d = Complex::zero();
    for c in p.iter().rev() {
        d = d.mul(x).add(&v);
        v = v.mul(x).add(&Complex::real(c.clone()));
    }
    (v, d)
}

/// All complex roots of a squarefree polynomial (ascending rational coefficients).
pub fn complex_roots(p: &[Rational]) -> Vec<Complex> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lc = p[n].to_f64().unwrap_or(1.0);
    let c: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap_or(0.0) / lc).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / n as f64 + 0.4;
            (radius * a.cos() * 0.9, radius * a.sin() * 0.9)
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut v = (0.0, 0.0);
            let mut d = (0.0, 0.0);
            for &ck in c.iter().rev() {
                d = cmul(d, z[i]);
                d = (d.0 + v.0, d.1 + v.1);
                v = cmul(v, z[i]);
                v = (v.0 + ck, v.1);
            }
            if v.0 == 0.0 && v.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(v, d);
            let mut s = (0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let inv = cdiv((1.0, 0.0), (z[i].0 - zj.0, z[i].1 - zj.1));
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let denom = (
                1.0 - (ratio.0 * s.0 - ratio.1 * s.1),
                -(ratio.0 * s.1 + ratio.1 * s.0),
            );
            let w = cdiv(ratio, denom);
            z[i] = (z[i].0 - w.0, z[i].1 - w.1);
            moved = moved.max(w.0.abs() + w.1.abs());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    let tol = Rational::new(BigInt::one(), BigInt::one() << (PREC_BITS - 8));
    let mut roots: Vec<Complex> = z
        .into_iter()
        .map(|(re, im)| {
            let mut x = Complex::new(from_f64(re), from_f64(im)).rounded();
            for _ in 0..12 {
                let (v, d) = eval_q(p, &x);
                if d.norm_sqr().is_zero() {
                    break;
                }
                let step = v.div(&d);
                x = x.sub(&step);
                if step.norm_sqr() < &tol * &tol {
                    break;
                }
            }
            if x.is_real() {
                x.im = Rational::zero();
            }
            x
        })
        .collect();
    roots.sort_by(|a, b| {
        let (ar, ai) = a.to_f64();
        let (br, bi) = b.to_f64();
        ar.total_cmp(&br).then(ai.total_cmp(&bi))
    });
    roots
}

/// Images of the generator under every complex embedding of the field.
pub fn embeddings(field: &Arc<NumberField>) -> Vec<Complex> {
    complex_roots(field.minpoly())
}

/// Value of `a` when the generator of its field is sent to `root`.
pub fn eval_algebraic(a: &AlgebraicNumber, root: Option<&Complex>) -> Complex {
    if let Some(r) = a.to_rational() {
        return Complex::real(r);
    }
    let root = root.expect("embedding required for an algebraic coefficient");
    let mut acc = Complex::zero();
    for c in a.rep().iter().rev() {
        acc = acc.mul(root).add(&Complex::real(c.clone()));
    }
    acc
}

/// `x^(1/n)` for `x > 0`.
pub fn nth_root(x: &Rational, n: u32) -> Rational {
    assert!(x.is_positive(), "root of a non-positive number");
    if n == 1 {
        return x.clone();
    }
    let guess = x
        .to_f64()
        .map(|f| f.powf(1.0 / n as f64))
        .filter(|g| g.is_finite() && *g > 0.0);
    let mut y = guess.map(from_f64).unwrap_or_else(Rational::one);
    let nn = Rational::from_integer(BigInt::from(n));
    let tol = Rational::new(BigInt::one(), BigInt::one() << (PREC_BITS - 8));
    for _ in 0..64 {
        let yn1 = pow_r(&y, n - 1);
        let next = round_dyadic(
            &((&y * (&nn - Rational::one()) + x / &yn1) / &nn),
            PREC_BITS,
        );
        let diff = (&next - &y).abs();
        y = next;
        if diff <= &tol * (Rational::one() + y.abs()) {
            break;
        }
    }
    y
}

fn pow_r(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc = round_dyadic(&(acc * x), PREC_BITS);
    }
    acc
}

/// `x^e` for `x > 0` and rational `e`.
pub fn real_power(x: &Rational, e: Exponent) -> Rational {
    let root = nth_root(x, *e.denom() as u32);
    let p = *e.numer();
    let m = pow_r(&root, p.unsigned_abs() as u32);
    if p < 0 {
        round_dyadic(&m.recip(), PREC_BITS)
    } else {
        m
    }
}

pub fn sqrt(x: &Rational) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    nth_root(x, 2)
}

/// Decimal rendering with `digits` significant digits; scientific notation
/// outside `[1e-6, 1e21)`.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let ten = BigInt::from(10);
    let mut e10: i64 = {
        let n = a.numer().to_string().len() as i64;
        let d = a.denom().to_string().len() as i64;
        n - d
    };
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(ten.pow(k as u32))
        } else {
            Rational::new(BigInt::one(), ten.pow((-k) as u32))
        }
    };
    while a < pow10(e10) {
        e10 -= 1;
    }
    while a >= pow10(e10 + 1) {
        e10 += 1;
    }
    let scaled = &a * pow10(digits as i64 - 1 - e10);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut m = (scaled + half).floor().to_integer();
    if m >= ten.pow(digits as u32) {
        m = m.div_floor(&ten);
        e10 += 1;
    }
    let s = m.to_string();
    let body = if (-6..21).contains(&e10) {
        if e10 >= 0 {
            let int_len = e10 as usize + 1;
            if s.len() <= int_len {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                let (i, f) = s.split_at(int_len);
                format!("{i}.{}", f.trim_end_matches('0'))
                    .trim_end_matches('.')
                    .to_string()
            }
        } else {
            let frac = format!("{}{}", "0".repeat((-e10 - 1) as usize), s);
            format!("0.{}", frac.trim_end_matches('0'))
        }
    } else {
        let (i, f) = s.split_at(1);
        let f = f.trim_end_matches('0');
        if f.is_empty() {
            format!("{i}e{e10}")
        } else {
            format!("{i}.{f}e{e10}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{qpoly, ratio};

    #[test]
    fn roots_of_cubic() {
        let p = qpoly::from_ints(&[-2, 1, -4, 1]);
        let rs = complex_roots(&p);
        assert_eq!(rs.len(), 3);
        assert_eq!(rs.iter().filter(|r| r.is_real()).count(), 1);
        for r in &rs {
            let (v, _) = eval_q(&p, r);
            assert!(v.norm_sqr() < Rational::new(BigInt::one(), BigInt::from(10).pow(100)));
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&ratio(-7, 2), 30), "-3.5");
        assert_eq!(to_decimal(&ratio(1, 10_000_000), 3), "1e-7");
        assert_eq!(
            to_decimal(&sqrt(&crate::exactfield::rat(2)), 30),
            "1.41421356237309504880168872421"
        );
        assert_eq!(
            to_decimal(
                &real_power(&crate::exactfield::rat(10000), Exponent::new(-1, 4)),
                10
            ),
            "0.1"
        );
    }
}
