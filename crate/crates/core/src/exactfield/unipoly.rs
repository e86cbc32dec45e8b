use super::{AlgebraicNumber, NumberField, Rational};
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Dense univariate polynomial over `Q` or a number field, ascending
/// coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<AlgebraicNumber>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<AlgebraicNumber>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: AlgebraicNumber) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^e`.
    pub fn monomial(c: AlgebraicNumber, e: usize) -> Self {
        let mut v = vec![AlgebraicNumber::zero(); e];
        v.push(c);
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(AlgebraicNumber::one(), 1)
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        Self::new(c.iter().cloned().map(AlgebraicNumber::from).collect())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| AlgebraicNumber::from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[AlgebraicNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> AlgebraicNumber {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(AlgebraicNumber::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> AlgebraicNumber {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(AlgebraicNumber::zero)
    }

    /// First number field among the coefficients.
    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.coeffs.iter().find_map(|c| c.field().cloned())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &AlgebraicNumber) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![AlgebraicNumber::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(AlgebraicNumber::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv = b.lc().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![AlgebraicNumber::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=db {
                r[i + j] = &r[i + j] - &(&c * &b.coeffs[j]);
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero leading coefficient"))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &AlgebraicNumber::from_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(o(t))`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(o).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&AlgebraicNumber) -> AlgebraicNumber) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    /// Yun's algorithm over the coefficient field; monic squarefree parts.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).expect("gcd nonzero").0;
        let c = df.divrem(&a0).expect("gcd nonzero").0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).expect("nonzero").0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            let c = d.divrem(&a).expect("nonzero").0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Rational coefficients, if every coefficient is rational.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.to_rational()).collect()
    }

    /// Renders in the variable `var`, highest degree first.
    pub fn format_in(&self, var: &str) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(format_term(c, &mono));
        }
        join_terms(parts)
    }
}

/// Sign and magnitude text of `c * mono`.
pub(crate) fn format_term(c: &AlgebraicNumber, mono: &str) -> (bool, String) {
    if let Some(r) = c.to_rational() {
        use num::{One, Signed};
        let neg = r.is_negative();
        let a = r.abs();
        let body = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono.to_string()
        } else {
            format!("{a}*{mono}")
        };
        (neg, body)
    } else {
        let s = c.to_string();
        let body = if mono.is_empty() {
            if c.is_compound() {
                format!("({s})")
            } else {
                s
            }
        } else if c.is_compound() {
            format!("({s})*{mono}")
        } else {
            format!("{s}*{mono}")
        };
        if !c.is_compound() && body.starts_with('-') {
            (true, body[1..].to_string())
        } else {
            (false, body)
        }
    }
}

pub(crate) fn join_terms(parts: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (neg, body) in parts {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_over_extension() {
        let k = NumberField::from_ints(&[-2, 0, 1]).unwrap();
        let s = k.generator();
        // (x - s)(x + 1) and (x - s)(x - 3)
        let a = UniPoly::new(vec![-&s, AlgebraicNumber::one()]);
        let p = a.mul(&UniPoly::from_ints(&[1, 1]));
        let q = a.mul(&UniPoly::from_ints(&[-3, 1]));
        assert_eq!(p.gcd(&q), a);
    }

    #[test]
    fn squarefree_parts() {
        let f = UniPoly::from_ints(&[1, 1])
            .pow(2)
            .mul(&UniPoly::from_ints(&[-2, 1]));
        let d = f.squarefree_decomposition();
        assert_eq!(
            d,
            vec![
                (UniPoly::from_ints(&[-2, 1]), 1),
                (UniPoly::from_ints(&[1, 1]), 2)
            ]
        );
    }
}
