//! Sparse multivariate polynomials over `Q` or a number field.

mod gcd;
mod linear;
mod parse;
mod resultant;

pub use gcd::{content_in, gcd, primitive_part_in, squarefree_part};
pub use linear::{linear_change, LinearChange};
pub use parse::{parse_poly, parse_poly_at};
pub use resultant::{
    resultant, subresultant_prs, sylvester_matrix, sylvester_resultant, PrsSequence,
};

use crate::error::{Error, Result};
use crate::exactfield::{AlgebraicNumber, NumberField, Rational, UniPoly};
use num::{BigInt, Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Exps, AlgebraicNumber>,
}

pub fn var_list(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

impl MultiPoly {
    pub fn zero(vars: &Arc<Vec<String>>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Vec<String>>, c: AlgebraicNumber) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<Vec<String>>) -> Self {
        Self::constant(vars, AlgebraicNumber::one())
    }

    pub fn var(vars: &Arc<Vec<String>>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, AlgebraicNumber::one())
    }

    pub fn monomial(vars: &Arc<Vec<String>>, exps: Exps, c: AlgebraicNumber) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(
        vars: &Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Exps, AlgebraicNumber)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exps, c: AlgebraicNumber) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.vars.len());
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &AlgebraicNumber)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<AlgebraicNumber> {
        if self.is_zero() {
            Some(AlgebraicNumber::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn coeff(&self, e: &[u32]) -> AlgebraicNumber {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(AlgebraicNumber::zero)
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.terms.values().find_map(|c| c.field().cloned())
    }

    fn check_vars(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            o.vars
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &AlgebraicNumber) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut p = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by the monomial with exponents `e`.
    pub fn shift(&self, e: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Degree in `i`, zero for the zero polynomial.
    pub fn deg(&self, i: usize) -> u32 {
        self.degree_in(i).unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Coefficients with respect to variable `i`, indexed by power.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = match self.degree_in(i) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![Self::zero(&self.vars); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: &Arc<Vec<String>>, i: usize, cs: &[MultiPoly]) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in cs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[i] += k as u32;
                p.add_term(e2, x.clone());
            }
        }
        p
    }

    pub fn leading_coeff_in(&self, i: usize) -> Self {
        self.coeffs_in(i)
            .pop()
            .unwrap_or_else(|| Self::zero(&self.vars))
    }

    /// Leading term in lexicographic order (`x1 > x2 > ...`).
    pub fn leading_term(&self) -> Option<(&Exps, &AlgebraicNumber)> {
        self.terms.iter().next_back()
    }

    pub fn lc(&self) -> AlgebraicNumber {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(AlgebraicNumber::zero)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.add_term(e2, c * &AlgebraicNumber::from_int(e[i] as i64));
        }
        p
    }

    /// Replaces variable `i` by `value` (a polynomial over the same variables).
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> Self {
        self.check_vars(value);
        let cs = self.coeffs_in(i);
        let mut acc = Self::zero(&self.vars);
        for c in cs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    pub fn eval_var(&self, i: usize, value: &AlgebraicNumber) -> Self {
        let mut p = Self::zero(&self.vars);
        let d = self.deg(i);
        let pows: Vec<AlgebraicNumber> = (0..=d).map(|k| value.pow(k)).collect();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            p.add_term(e2, c * &pows[k]);
        }
        p
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[AlgebraicNumber]) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes every variable `x_i` by `args[i]`; all `args` share one variable list.
    pub fn compose(&self, args: &[MultiPoly]) -> Self {
        assert_eq!(args.len(), self.nvars());
        let target = args[0].vars.clone();
        let mut cache: Vec<Vec<MultiPoly>> = args
            .iter()
            .map(|a| vec![Self::one(&a.vars), a.clone()])
            .collect();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().expect("cache").mul(&args[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][k as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Polynomial over `new_vars`, sending variable `i` to `map[i]`.
    pub fn remap(&self, new_vars: &Arc<Vec<String>>, map: &[usize]) -> Self {
        let mut p = Self::zero(new_vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Re-expresses over `new_vars` by variable name; every used variable must exist there.
    pub fn with_vars(&self, new_vars: &Arc<Vec<String>>) -> Result<Self> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match new_vars.iter().position(|w| w == v) {
                Some(j) => map.push(j),
                None => {
                    if self.deg(i) > 0 {
                        return Err(Error::InvalidInput(format!("variable {v} not available")));
                    }
                    map.push(usize::MAX);
                }
            }
        }
        let mut p = Self::zero(new_vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[i]] += k;
                }
            }
            p.add_term(e2, c.clone());
        }
        Ok(p)
    }

    pub fn map_coeffs(&self, f: impl Fn(&AlgebraicNumber) -> AlgebraicNumber) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// Exact quotient; fails when the division leaves a remainder.
    pub fn exact_divide(&self, b: &Self) -> Result<Self> {
        self.check_vars(b);
        let (eb, cb) = b.leading_term().ok_or(Error::DivisionByZero)?;
        let (eb, cbinv) = (eb.clone(), cb.inv()?);
        if let Some(c) = b.constant_value() {
            return Ok(self.scale(&c.inv()?));
        }
        let mut q = Self::zero(&self.vars);
        let mut r = self.clone();
        while let Some((er, cr)) = r.leading_term() {
            if er.iter().zip(&eb).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible);
            }
            let e: Exps = er.iter().zip(&eb).map(|(a, b)| a - b).collect();
            let c = cr * &cbinv;
            let t = Self::monomial(&self.vars, e, c);
            r = r.sub(&t.mul(b));
            q = q.add(&t);
        }
        Ok(q)
    }

    pub fn divides(&self, a: &Self) -> bool {
        a.exact_divide(self).is_ok()
    }

    /// Divides by the lexicographic leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero"))
    }

    /// For rational coefficients: divides by the positive rational content so
    /// the coefficients become coprime integers. Other polynomials are returned unchanged.
    pub fn primitive_integer(&self) -> Self {
        let Some(rs) = self
            .terms
            .values()
            .map(|c| c.to_rational())
            .collect::<Option<Vec<Rational>>>()
        else {
            return self.clone();
        };
        if rs.is_empty() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for r in &rs {
            den = den.lcm(r.denom());
            num = num.gcd(r.numer());
        }
        let content = Rational::new(num, den);
        self.scale(&AlgebraicNumber::from(content.recip()))
    }

    /// Like `primitive_integer`, then makes the graded-leading coefficient positive.
    pub fn normalized_integer(&self) -> Self {
        let p = self.primitive_integer();
        match p.display_order().first() {
            Some((_, c)) if c.to_rational().is_some_and(|r| r.is_negative()) => p.neg(),
            _ => p,
        }
    }

    /// Homogenizes with a new trailing variable `name`.
    pub fn homogenize(&self, name: &str) -> Self {
        let mut vars: Vec<String> = (*self.vars).clone();
        vars.push(name.to_string());
        let vars = Arc::new(vars);
        let d = self.total_degree().unwrap_or(0);
        let mut p = Self::zero(&vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.push(d - e.iter().sum::<u32>());
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Substitutes `var = value` and removes the variable from the list.
    pub fn dehomogenize(&self, var: &str, value: &AlgebraicNumber) -> Result<Self> {
        let i = self
            .var_index(var)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {var}")))?;
        let mut vars: Vec<String> = (*self.vars).clone();
        vars.remove(i);
        let vars = Arc::new(vars);
        let evaluated = self.eval_var(i, value);
        let mut p = Self::zero(&vars);
        for (e, c) in &evaluated.terms {
            let mut e2 = e.clone();
            e2.remove(i);
            p.add_term(e2, c.clone());
        }
        Ok(p)
    }

    /// Univariate view in variable `i`; `None` if another variable occurs.
    pub fn to_unipoly(&self, i: usize) -> Option<UniPoly> {
        if self
            .terms
            .keys()
            .any(|e| e.iter().enumerate().any(|(j, &k)| j != i && k > 0))
        {
            return None;
        }
        let d = self.deg(i) as usize;
        let mut cs = vec![AlgebraicNumber::zero(); d + 1];
        for (e, c) in &self.terms {
            cs[e[i] as usize] = c.clone();
        }
        Some(UniPoly::new(cs))
    }

    pub fn from_unipoly(vars: &Arc<Vec<String>>, i: usize, u: &UniPoly) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Terms in display order: total degree descending, then lexicographic descending.
    pub fn display_order(&self) -> Vec<(&Exps, &AlgebraicNumber)> {
        let mut v: Vec<(&Exps, &AlgebraicNumber)> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Top-degree homogeneous component.
    pub fn top_form(&self) -> Self {
        let d = self.total_degree().unwrap_or(0);
        Self::from_terms(
            &self.vars,
            self.terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn format_with(&self, symbol: &str) -> String {
        let parts = self
            .display_order()
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], k)
                        }
                    })
                    .collect();
                let mono = mono.join("*");
                let (neg, body) = crate::exactfield::format_term(c, &mono);
                (neg, body.replace('λ', symbol))
            })
            .collect();
        crate::exactfield::join_terms(parts)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("λ"))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}
