//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(&self.to_rows())
    }

    /// Gauss–Jordan inverse; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Scales a rational row to a primitive integer row with the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

/// Rank of a rational matrix using Bareiss fraction-free elimination over
/// the integers (after clearing denominators row by row).
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                // exact by Sylvester's identity
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::q;

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(mat(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]]).rank(), 2);
        assert_eq!(QMatrix::identity(5).rank(), 5);
        assert_eq!(bareiss_rank(&[]), 0);
        let frac = QMatrix::from_rows(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]]).unwrap();
        assert_eq!(frac.rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = mat(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, -3, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(4));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
