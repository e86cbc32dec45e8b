use super::MultiPoly;
use crate::error::{Error, Result};
use crate::exactfield::{AlgebraicNumber, Rational};
use num::{One, Zero};

/// Invertible rational linear change `x = M y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    pub matrix: Vec<Vec<Rational>>,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTransform);
        }
        let c = LinearChange { matrix };
        if c.inverse_matrix().is_none() {
            return Err(Error::InvalidTransform);
        }
        Ok(c)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::exactfield::rat(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        LinearChange {
            matrix: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.matrix.len())
    }

    fn inverse_matrix(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.matrix.len();
        let mut a: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for k in 0..n {
            let piv = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, piv);
            let inv = a[k][k].recip();
            for x in a[k].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    let rowk = a[k].clone();
                    for (x, y) in a[i].iter_mut().zip(&rowk) {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    pub fn inverse(&self) -> Self {
        LinearChange {
            matrix: self.inverse_matrix().expect("invertible by construction"),
        }
    }

    /// `f(M y)`, written again in the variables of `f`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let vars = f.vars();
        let args: Vec<MultiPoly> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(MultiPoly::zero(vars), |acc, (j, m)| {
                        acc.add(&MultiPoly::var(vars, j).scale(&AlgebraicNumber::from(m.clone())))
                    })
            })
            .collect();
        f.compose(&args)
    }

    /// Image `M y` of a vector.
    pub fn map_vector<T, F>(&self, y: &[T], zero: T, combine: F) -> Vec<T>
    where
        T: Clone,
        F: Fn(&T, &Rational, &T) -> T,
    {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(y)
                    .fold(zero.clone(), |acc, (m, v)| combine(&acc, m, v))
            })
            .collect()
    }
}

/// `f(M x)` for a square rational matrix `M`; fails when `M` is singular.
pub fn linear_change(f: &MultiPoly, matrix: &[Vec<Rational>]) -> Result<MultiPoly> {
    if matrix.len() != f.nvars() {
        return Err(Error::InvalidTransform);
    }
    Ok(LinearChange::new(matrix.to_vec())?.apply(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    #[test]
    fn change_and_back() {
        let f = parse_poly("x1^2*x3 - x2 + 7", &["x1", "x2", "x3"]).unwrap();
        let m = LinearChange::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[2, -1, 1]]).unwrap();
        let g = m.apply(&f);
        assert_eq!(m.inverse().apply(&g), f);
        assert!(LinearChange::from_ints(&[&[1, 1], &[2, 2]]).is_err());
    }
}
