//! Dense linear algebra over GF(q) on element codes.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;

/// Row-major dense matrix of field codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(f: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, f: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.clone().rref(f).len()
    }

    /// Determinant by elimination with explicit pivoting.
    pub fn det(&self, f: &FieldCtx) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| a.get(r, col) != 0) else {
                return Ok(0);
            };
            if pr != col {
                for c in 0..n {
                    a.data.swap(pr * n + c, col * n + c);
                }
                det = f.neg(det);
            }
            let pivot = a.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in col + 1..n {
                let factor = f.mul(a.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(a.get(r, c), f.mul(factor, a.get(col, c)));
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self, f: &FieldCtx) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, f.one());
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(inv)
    }
}

/// Solution set of `A x = b`: one particular solution plus a nullspace basis.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<u32>,
    pub nullspace: Vec<Vec<u32>>,
}

/// Solves `A x = b` exactly; `None` when the system is inconsistent.
pub fn solve(f: &FieldCtx, a: &Matrix, b: &[u32]) -> Option<LinearSolution> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for r in 0..a.rows {
        for c in 0..n {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, n, b[r]);
    }
    let pivots = aug.rref(f);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![0; n];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = aug.get(row, n);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; n];
            v[fc] = f.one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = f.neg(aug.get(row, fc));
            }
            v
        })
        .collect();
    Some(LinearSolution { particular, nullspace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_of_order;

    #[test]
    fn solve_and_nullspace() {
        let f = field_of_order(3).unwrap();
        // x + y = 1, 2x + 2y = 2 -> one free variable
        let a = Matrix::from_rows(vec![vec![1, 1], vec![2, 2]]);
        let sol = solve(&f, &a, &[1, 2]).unwrap();
        assert_eq!(sol.nullspace.len(), 1);
        let check = |x: &[u32]| {
            (0..2)
                .map(|r| (0..2).fold(0, |acc, c| f.add(acc, f.mul(a.get(r, c), x[c]))))
                .collect::<Vec<_>>()
        };
        assert_eq!(check(&sol.particular), vec![1, 2]);
        assert_eq!(check(&sol.nullspace[0]), vec![0, 0]);
        assert!(solve(&f, &a, &[1, 0]).is_none());
    }

    #[test]
    fn det_and_inverse() {
        let f = field_of_order(5).unwrap();
        let a = Matrix::from_rows(vec![vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 1]]);
        // permutation expansion as the oracle
        let mut expect = 0;
        let perms = [[0, 1, 2, 0], [1, 2, 0, 0], [2, 0, 1, 0], [0, 2, 1, 1], [2, 1, 0, 1], [1, 0, 2, 1]];
        for p in perms {
            let mut t = f.one();
            for (r, &c) in p[..3].iter().enumerate() {
                t = f.mul(t, a.get(r, c));
            }
            expect = if p[3] == 1 { f.sub(expect, t) } else { f.add(expect, t) };
        }
        assert_eq!(a.det(&f).unwrap(), expect);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv), Matrix::identity(&f, 3));
        let sing = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.det(&f).unwrap(), 0);
        assert!(matches!(sing.inverse(&f), Err(Error::Singular)));
        assert!(matches!(Matrix::zeros(2, 3).det(&f), Err(Error::NotSquare)));
    }
}
