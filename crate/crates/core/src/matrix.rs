//! Dense matrices over arbitrary-precision integers.

use crate::arith::{int, Int};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// An immutable-by-convention integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    e: Vec<Int>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            e: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.e[i * n + i] = Int::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut e = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                e.push(f(r, c));
            }
        }
        Mat { rows, cols, e }
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Mat::from_fn(r, c, |i, j| int(rows[i][j]))
    }

    pub fn col_vec_i64(v: &[i64]) -> Self {
        Mat::from_fn(v.len(), 1, |i, _| int(v[i]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        debug_assert!(r < self.rows && c < self.cols);
        &self.e[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        debug_assert!(r < self.rows && c < self.cols);
        self.e[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let want = if r == c { Int::one() } else { Int::zero() };
                if *self.at(r, c) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |r, c| -self.at(r, c).clone())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, k: &Int) -> Mat {
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * k)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Int::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Int> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn from_columns(ambient: usize, cols: &[Vec<Int>]) -> Mat {
        for c in cols {
            assert_eq!(c.len(), ambient);
        }
        Mat::from_fn(ambient, cols.len(), |r, c| cols[c][r].clone())
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    pub fn submatrix(&self, row_ids: &[usize], col_ids: &[usize]) -> Mat {
        Mat::from_fn(row_ids.len(), col_ids.len(), |r, c| {
            self.at(row_ids[r], col_ids[c]).clone()
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a: Vec<Vec<Int>> = (0..n).map(|r| self.row(r)).collect();
        let mut prev = Int::one();
        let mut sign = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let mut swap = None;
                for r in k + 1..n {
                    if !a[r][k].is_zero() {
                        swap = Some(r);
                        break;
                    }
                }
                match swap {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Inverse of a unimodular matrix (det = ±1). Panics otherwise.
    pub fn inverse_unimodular(&self) -> Mat {
        assert_eq!(self.rows, self.cols);
        let d = self.det();
        assert!(d.abs().is_one(), "matrix is not unimodular");
        let sm = crate::snf::smith(self);
        assert!(sm.divisors.iter().all(|x| x.abs().is_one()));
        // u * a * v = I  =>  a^{-1} = v * u
        sm.v.mul(&sm.u)
    }

    pub fn max_abs(&self) -> Int {
        self.e
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Int::zero)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let a = Mat::from_rows_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.det(), int(1));
        let inv = a.inverse_unimodular();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());

        let b = Mat::from_rows_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.det(), int(1));
        assert!(b.mul(&b.inverse_unimodular()).is_identity());

        let c = Mat::from_rows_i64(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(c.det(), int(3 * (25 - 54) - 1 * (5 - 18) + 4 * (6 - 10)));
    }
}
