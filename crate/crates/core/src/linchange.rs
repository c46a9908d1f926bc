//! Invertible linear coordinate changes `x = M X`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::PolyError;
use crate::poly::Poly;
use crate::ring::RingRef;

/// Old coordinates in terms of new ones: `x_i = Σ_j m[i][j] X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    m: Vec<Vec<BigRational>>,
}

impl LinearChange {
    pub fn new(m: Vec<Vec<BigRational>>) -> Result<Self, PolyError> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(PolyError::ChangeSize { expected: n, got: m.iter().map(|r| r.len()).max().unwrap_or(0) });
        }
        let c = LinearChange { m };
        if c.determinant().is_zero() {
            return Err(PolyError::SingularChange);
        }
        Ok(c)
    }

    pub fn from_ints(m: &[Vec<i64>]) -> Result<Self, PolyError> {
        Self::new(
            m.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        LinearChange { m }
    }

    /// Swap of two coordinates.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut c = Self::identity(n);
        c.m.swap(a, b);
        c
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }

    /// Rows as strings (`"1"`, `"-1/2"`), for reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.m.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    }

    fn determinant(&self) -> BigRational {
        let n = self.m.len();
        let mut a = self.m.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let piv = a[col][col].clone();
            det *= &piv;
            for r in col + 1..n {
                let f = &a[r][col] / &piv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Self {
        let n = self.m.len();
        let mut a: Vec<Vec<BigRational>> = self
            .m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
            a.swap(p, col);
            let piv = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &piv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        LinearChange { m: a.into_iter().map(|r| r[n..].to_vec()).collect() }
    }

    /// `self` followed by `next`: if `x = M X` and `X = N W` then `x = M N W`.
    pub fn then(&self, next: &LinearChange) -> LinearChange {
        let n = self.size();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &self.m[i][k] * &next.m[k][j]))
                    .collect()
            })
            .collect();
        LinearChange { m }
    }

    /// `p(x) -> p(M X)`, result expressed in `target` (same shape as `p`'s ring).
    pub fn apply_into(&self, p: &Poly, target: &RingRef) -> Result<Poly, PolyError> {
        let n = p.ring().nvars();
        if self.size() != n {
            return Err(PolyError::ChangeSize { expected: n, got: self.size() });
        }
        if target.nvars() != n || target.params() != p.ring().params() {
            return Err(PolyError::RingMismatch(p.ring().to_string(), target.to_string()));
        }
        let images: Vec<Poly> = self
            .m
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (crate::Monomial::var(n, j), Coeff::Rat(v.clone())));
                Poly::from_terms(target, terms)
            })
            .collect();
        Ok(p.substitute(target, &images))
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly, PolyError> {
        self.apply_into(p, &p.ring().clone())
    }
}

/// Serializable view used in reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChangeReport {
    pub new_variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

/// Apply a coordinate change to a polynomial. Alias of [`LinearChange::apply`].
pub fn apply_linear_change(p: &Poly, change: &LinearChange) -> Result<Poly, PolyError> {
    change.apply(p)
}
