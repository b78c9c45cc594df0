//! Dense matrices over a field, exact elimination, and the tridiagonal
//! determinant recurrence.

use std::fmt;

use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[T]>::to_vec).collect()
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination with non-zero pivoting.
    ///
    /// Exact over exact fields; the empty matrix has determinant one.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return T::zero();
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = T::zero() - det;
            }
            let p = a[col * n + col].clone();
            det = det * p.clone();
            for r in col + 1..n {
                let factor = a[r * n + col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[col * n + c].clone() * factor.clone();
                    a[r * n + c] = a[r * n + c].clone() - v;
                }
            }
        }
        det
    }

    pub fn is_singular(&self) -> bool {
        self.determinant().is_zero()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, "\t")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `M(α)`: `m × m`, ones on the diagonal, `α` on both adjacent diagonals.
pub fn tridiagonal<T: Field>(m: usize, alpha: &T) -> Matrix<T> {
    Matrix::from_fn(m, m, |r, c| match r.abs_diff(c) {
        0 => T::one(),
        1 => alpha.clone(),
        _ => T::zero(),
    })
}

/// `d_m(α) = det M(α)` via `d_m = d_{m-1} - α² d_{m-2}`, `d_0 = d_1 = 1`.
pub fn tridiag_det<T: Field>(m: usize, alpha: &T) -> T {
    let sq = alpha.clone() * alpha.clone();
    let (mut prev, mut cur) = (T::one(), T::one());
    for _ in 1..m {
        let next = cur.clone() - sq.clone() * prev;
        prev = cur;
        cur = next;
    }
    cur
}
