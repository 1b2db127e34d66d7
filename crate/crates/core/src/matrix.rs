//! Dense exact-rational matrices.
//!
//! Sizes here are tiny (actions are capped in the low hundreds), so plain
//! Gaussian elimination and cubic multiplication are perfectly adequate and
//! keep everything exact.

use crate::error::{Error, Result};
use crate::ratio::Rat;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Basis of the (right) null space, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; m.cols];
        let mut row = 0;
        for col in 0..m.cols {
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            // swap rows
            for c in 0..m.cols {
                let a = m.at(row, c).clone();
                let b = m.at(pr, c).clone();
                *m.at_mut(row, c) = b;
                *m.at_mut(pr, c) = a;
            }
            let inv = m.at(row, col).clone();
            for c in col..m.cols {
                let v = m.at(row, c).clone() / inv.clone();
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).clone() - &f * m.at(row, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); m.cols];
            v[free] = Rat::one();
            for (col, pivot) in pivot_of_col.iter().enumerate() {
                if let Some(pr) = pivot {
                    v[col] = -m.at(*pr, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {}x{} with rhs of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n) = b[i].clone();
        }
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !aug.at(r, col).is_zero()) else {
                return Err(Error::DimensionMismatch("singular matrix in solve".into()));
            };
            for c in 0..=n {
                let a = aug.at(col, c).clone();
                let bb = aug.at(pr, c).clone();
                *aug.at_mut(col, c) = bb;
                *aug.at_mut(pr, c) = a;
            }
            let inv = aug.at(col, col).clone();
            for c in col..=n {
                let v = aug.at(col, c).clone() / inv.clone();
                *aug.at_mut(col, c) = v;
            }
            for r in 0..n {
                if r != col && !aug.at(r, col).is_zero() {
                    let f = aug.at(r, col).clone();
                    for c in col..=n {
                        let v = aug.at(r, c).clone() - &f * aug.at(col, c);
                        *aug.at_mut(r, c) = v;
                    }
                }
            }
        }
        Ok((0..n).map(|i| aug.at(i, n).clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};

    #[test]
    fn mul_pow_trace() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 2), rat(2, 3)],
        ]);
        let m2 = m.pow(2);
        assert_eq!(m2.at(0, 0), &(rat(1, 4) + rat(1, 6)));
        assert_eq!(m.pow(0), Matrix::identity(2));
        assert_eq!(m.trace(), rat(1, 2) + rat(2, 3));
    }

    #[test]
    fn null_space_of_singular() {
        // rank 1 matrix
        let m = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(v[0].clone() + rat_int(2) * v[1].clone(), rat_int(0));
    }

    #[test]
    fn solve_small_system() {
        let m = Matrix::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(3)],
        ]);
        let x = m.solve(&[rat_int(5), rat_int(10)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(3)]);
    }
}
