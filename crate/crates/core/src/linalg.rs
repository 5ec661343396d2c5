//! Dense exact matrices over the rationals, sized for `N ≤ 16`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num::integer::Integer;
use num::traits::{One, Signed, Zero};
use num::BigInt;

use crate::error::{Error, Result};
use crate::qcore::QScalar;

pub type QVector = Vec<QScalar>;

pub fn dot(u: &[QScalar], v: &[QScalar]) -> QScalar {
    u.iter().zip(v).fold(QScalar::zero(), |acc, (a, b)| acc + a * b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    dim: usize,
    data: Vec<QScalar>,
}

impl QMatrix {
    pub fn zeros(dim: usize) -> Self {
        QMatrix { dim, data: vec![QScalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = QScalar::one();
        }
        m
    }

    pub fn scalar(dim: usize, c: &QScalar) -> Self {
        Self::identity(dim).scale(c)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> QScalar) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        QMatrix { dim, data }
    }

    pub fn try_from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Result<QScalar>) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j)?);
            }
        }
        Ok(QMatrix { dim, data })
    }

    /// Matrix whose n-th column is `cols[n]`.
    pub fn from_columns(cols: &[QVector]) -> Self {
        let dim = cols.len();
        Self::from_fn(dim, |i, j| cols[j][i].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.dim).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        QMatrix { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<QScalar> {
        if self.dim == 0 {
            return Some(QScalar::zero());
        }
        let c = self[(0, 0)].clone();
        (*self == Self::scalar(self.dim, &c)).then_some(c)
    }

    pub fn first_difference(&self, other: &QMatrix) -> Option<(usize, usize)> {
        (0..self.dim * self.dim).find(|&k| self.data[k] != other.data[k]).map(|k| (k / self.dim, k % self.dim))
    }

    pub fn mul_vec(&self, v: &[QScalar]) -> QVector {
        (0..self.dim).map(|i| dot(&self.data[i * self.dim..(i + 1) * self.dim], v)).collect()
    }

    /// `Σ_i u_i v_j` outer product.
    pub fn outer(u: &[QScalar], v: &[QScalar]) -> Self {
        Self::from_fn(u.len(), |i, j| &u[i] * &v[j])
    }

    pub fn try_mul(&self, o: &QMatrix) -> Result<QMatrix> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch(self.dim, o.dim));
        }
        Ok(self * o)
    }

    /// Entries `(i, j)` with `|i - j|` larger than the band, or on the wrong side.
    pub fn entries_outside(&self, lower: usize, upper: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let outside = (i > j && i - j > lower) || (j > i && j - i > upper);
                if outside && !self[(i, j)].is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Solves `self · X = rhs` exactly. Rows are cleared to integers and
    /// reduced by fraction-free (Bareiss) elimination; only the final
    /// back-substitution divides.
    pub fn solve(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let w = 2 * n;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row: Vec<&QScalar> = (0..n).map(|j| &self[(i, j)]).chain((0..n).map(|j| &rhs[(i, j)])).collect();
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularBasisMatrix)?;
            a.swap(k, p);
            for i in k + 1..n {
                for j in k + 1..w {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = QMatrix::zeros(n);
        for c in 0..n {
            for i in (0..n).rev() {
                let mut s = QScalar::from_integer(a[i][n + c].clone());
                for j in i + 1..n {
                    s -= QScalar::from_integer(a[i][j].clone()) * &x[(j, c)];
                }
                x[(i, c)] = s / QScalar::from_integer(a[i][i].clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        self.solve(&QMatrix::identity(self.dim))
    }

    /// Largest absolute entry, for diagnostics only.
    pub fn max_abs(&self) -> QScalar {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(QScalar::zero)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = QScalar;
    fn index(&self, (i, j): (usize, usize)) -> &QScalar {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QScalar {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = QMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        QMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        QMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

/// Sum of scaled matrices `Σ c_i M_i`.
pub fn lincomb(terms: &[(QScalar, &QMatrix)]) -> QMatrix {
    let dim = terms.first().map_or(0, |t| t.1.dim());
    let mut out = QMatrix::zeros(dim);
    for (c, m) in terms {
        assert_eq!(m.dim(), dim, "dimension mismatch");
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.data.iter_mut().zip(&m.data) {
            *o += c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use proptest::prelude::*;

    fn gauss_inverse(m: &QMatrix) -> Option<QMatrix> {
        // textbook Gauss-Jordan on rationals, independent of the Bareiss path
        let n = m.dim();
        let mut a: Vec<Vec<QScalar>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            m[(i, j)].clone()
                        } else if j - n == i {
                            rat(1, 1)
                        } else {
                            rat(0, 1)
                        }
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            let p = (i..n).find(|&k| !a[k][i].is_zero())?;
            a.swap(i, p);
            let pv = a[i][i].clone();
            for x in a[i].iter_mut() {
                *x /= &pv;
            }
            for k in 0..n {
                if k != i && !a[k][i].is_zero() {
                    let f = a[k][i].clone();
                    let row = a[i].clone();
                    for (x, y) in a[k].iter_mut().zip(row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Some(QMatrix::from_fn(n, |i, j| a[i][n + j].clone()))
    }

    fn matrix(n: usize) -> impl Strategy<Value = QMatrix> {
        prop::collection::vec((-7i64..=7, 1i64..=5), n * n)
            .prop_map(move |v| QMatrix::from_fn(n, |i, j| rat(v[i * n + j].0, v[i * n + j].1)))
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = QMatrix::from_fn(2, |i, _| rat(i as i64 + 1, 1));
        assert_eq!(m.inverse(), Err(Error::SingularBasisMatrix));
    }

    #[test]
    fn solve_needs_pivoting() {
        let m = QMatrix::from_fn(2, |i, j| if i == j { rat(0, 1) } else { rat(1, 3) });
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
    }

    proptest! {
        #[test]
        fn bareiss_matches_gauss_jordan(m in (1usize..6).prop_flat_map(matrix)) {
            match gauss_inverse(&m) {
                Some(g) => prop_assert_eq!(m.inverse().unwrap(), g),
                None => prop_assert_eq!(m.inverse(), Err(Error::SingularBasisMatrix)),
            }
        }

        #[test]
        fn transpose_is_an_involution(m in (1usize..6).prop_flat_map(matrix)) {
            prop_assert_eq!(m.transpose().transpose(), m);
        }

        #[test]
        fn product_is_associative(a in matrix(3), b in matrix(3), c in matrix(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn solve_reproduces_rhs(a in matrix(4), b in matrix(4)) {
            if let Ok(x) = a.solve(&b) {
                prop_assert_eq!(&a * &x, b);
            }
        }
    }
}
