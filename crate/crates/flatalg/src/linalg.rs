//! Dense exact matrices and Gaussian elimination.
//!
//! Elimination always takes the first nonzero pivot in column order, so every
//! result (echelon forms, kernels, solutions) is deterministic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::Scalar;

/// A dense `rows x cols` matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.at(row, col).recip();
            for c in col..m.cols {
                let v = m.at(row, c) * &inv;
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &(&f * m.at(row, c));
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A basis of the kernel, one vector per free column, echelon-normalised
    /// so the free coordinate is `1`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Scalar::zero(); self.cols];
            vec[free] = Scalar::one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(prow) = slot {
                    vec[col] = -r.at(*prow, free);
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        match solve_linear(self, &Matrix::identity(self.rows))? {
            LinSolve::Unique(inv) => Ok(inv),
            LinSolve::Singular { .. } => Err(Error::DimensionMismatch("singular matrix".into())),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + rhs.at(r, c))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - rhs.at(r, c))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.at(r, c))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).map(|k| self.at(r, k) * rhs.at(k, c)).sum()
        })
    }
}

/// Outcome of solving `A x = b` for one or more right-hand columns.
#[derive(Clone, Debug)]
pub enum LinSolve {
    /// The unique solution; columns correspond to the right-hand columns.
    Unique(Matrix),
    /// The coefficient matrix has a nontrivial kernel; a nonzero witness is
    /// returned, normalised so its first nonzero entry is `1`.
    Singular { kernel_witness: Vec<Scalar> },
}

/// Solves `A x = b` column by column with exact elimination.
///
/// Returns the unique solution when `A` has full column rank and the system
/// is consistent, the kernel witness when the columns are dependent, and an
/// error when the system is inconsistent.
pub fn solve_linear(a: &Matrix, rhs: &Matrix) -> Result<LinSolve, Error> {
    if a.rows() != rhs.rows() {
        return Err(Error::DimensionMismatch(format!(
            "coefficient matrix has {} rows, right-hand side has {}",
            a.rows(),
            rhs.rows()
        )));
    }
    let kernel = a.kernel_basis();
    if let Some(first) = kernel.into_iter().next() {
        let lead = first.iter().find(|x| !x.is_zero()).expect("nonzero kernel vector");
        let inv = lead.recip();
        let witness = first.iter().map(|x| x * &inv).collect();
        return Ok(LinSolve::Singular { kernel_witness: witness });
    }
    // Full column rank: eliminate the augmented matrix.
    let aug = Matrix::from_fn(a.rows(), a.cols() + rhs.cols(), |r, c| {
        if c < a.cols() {
            a.at(r, c).clone()
        } else {
            rhs.at(r, c - a.cols()).clone()
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= a.cols()) {
        return Err(Error::InconsistentSystem);
    }
    let mut sol = Matrix::zero(a.cols(), rhs.cols());
    for (row, &col) in pivots.iter().enumerate() {
        for k in 0..rhs.cols() {
            *sol.at_mut(col, k) = red.at(row, a.cols() + k).clone();
        }
    }
    Ok(LinSolve::Unique(sol))
}

/// A particular solution of `A x = b` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve_any(a: &Matrix, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows(), rhs.len(), "dimension mismatch");
    let aug = Matrix::from_fn(a.rows(), a.cols() + 1, |r, c| {
        if c < a.cols() {
            a.at(r, c).clone()
        } else {
            rhs[r].clone()
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.iter().any(|&p| p == a.cols()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = red.at(row, a.cols()).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn solve_any_underdetermined() {
        let a = Matrix::from_rows(vec![vec![s(1), s(1), s(0)], vec![s(0), s(0), s(1)]]);
        let x = solve_any(&a, &[s(3), s(5)]).unwrap();
        assert_eq!(a.apply(&x), vec![s(3), s(5)]);
        assert!(solve_any(&Matrix::from_rows(vec![vec![s(0)], vec![s(0)]]), &[s(1), s(0)]).is_none());
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let a = Matrix::identity(3);
        let b = Matrix::from_rows(vec![vec![s(2)], vec![s(-5)], vec![s(7)]]);
        match solve_linear(&a, &b).unwrap() {
            LinSolve::Unique(x) => assert_eq!(x, b),
            _ => panic!("expected unique solution"),
        }
    }

    #[test]
    fn rank_deficient_returns_kernel_witness() {
        let a = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(1)]]);
        let b = Matrix::from_rows(vec![vec![s(1)], vec![s(1)]]);
        match solve_linear(&a, &b).unwrap() {
            LinSolve::Singular { kernel_witness } => {
                assert_eq!(kernel_witness, vec![s(1), s(-1)]);
            }
            _ => panic!("expected kernel witness"),
        }
    }

    #[test]
    fn solve_then_multiply_reproduces_rhs() {
        let a = Matrix::from_rows(vec![
            vec![s(2), s(1), s(0)],
            vec![s(1), s(-1), s(3)],
            vec![s(0), s(4), s(1)],
        ]);
        let b = Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(2), s(1)], vec![s(-1), s(5)]]);
        match solve_linear(&a, &b).unwrap() {
            LinSolve::Unique(x) => assert_eq!(&(&a * &x), &b),
            _ => panic!("expected unique solution"),
        }
    }

    #[test]
    fn inconsistent_is_reported() {
        let a = Matrix::from_rows(vec![vec![s(1)], vec![s(1)]]);
        let b = Matrix::from_rows(vec![vec![s(1)], vec![s(2)]]);
        assert!(matches!(solve_linear(&a, &b), Err(Error::InconsistentSystem)));
    }

    #[test]
    fn kernel_of_invertible_is_empty() {
        let a = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(3), s(4)]]);
        assert!(a.kernel_basis().is_empty());
        assert!(a.is_invertible());
        let inv = a.inverse().unwrap();
        assert_eq!(&(&a * &inv), &Matrix::identity(2));
    }
}
