//! Dense matrices over ℤ with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row.iter().map(|&v| v.into()));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// An empty matrix with a fixed column count, for stacking.
    pub fn empty(cols: usize) -> Self {
        IntMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// `A·Aᵀ`.
    pub fn gram(&self) -> IntMatrix {
        let mut g = IntMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let dot: BigInt = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(a, b)| a * b)
                    .sum();
                g[(j, i)] = dot.clone();
                g[(i, j)] = dot;
            }
        }
        g
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Vertical concatenation; column counts must agree.
    pub fn stack(blocks: &[IntMatrix]) -> IntMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "column counts differ");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        IntMatrix { rows, cols, data }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if pivot != k {
                a.swap(pivot, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        self.pivots().len()
    }

    /// Pivot positions `(row, col)` of exact rational elimination, scanning
    /// columns left to right and choosing, among the rows not yet used, the
    /// one of largest absolute value (lowest index on ties).
    ///
    /// The submatrix on the pivot rows and columns is nonsingular.
    pub fn pivots(&self) -> Vec<(usize, usize)> {
        let mut a: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| BigRational::from_integer(v.clone()))
                    .collect()
            })
            .collect();
        let mut used = vec![false; self.rows];
        let mut out = Vec::new();
        for col in 0..self.cols {
            let best = (0..self.rows)
                .filter(|&i| !used[i] && !a[i][col].is_zero())
                .fold(None::<usize>, |best, i| match best {
                    Some(b) if a[b][col].abs() >= a[i][col].abs() => Some(b),
                    _ => Some(i),
                });
            let Some(pr) = best else { continue };
            used[pr] = true;
            out.push((pr, col));
            let pivot_row = a[pr].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if used[i] || row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &pivot_row[col];
                for j in col..self.cols {
                    let delta = &factor * &pivot_row[j];
                    row[j] -= delta;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row[dst] += k · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = k * &self[(src, c)];
            self[(dst, c)] += v;
        }
    }

    /// `col[dst] += k · col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = k * &self[(r, src)];
            self[(r, dst)] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// Rows of decimal strings, so entries of any size survive JSON.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// `det(A·Aᵀ)`, exact.
pub fn gram_det(a: &IntMatrix) -> BigInt {
    a.gram().det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[&[3, 1], &[1, 3]]).det(), 8.into());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), (-1).into());
        assert_eq!(m(&[&[2, 4], &[1, 2]]).det(), 0.into());
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det(), 6.into());
        assert_eq!(IntMatrix::zeros(0, 0).det(), 1.into());
    }

    #[test]
    fn rank_and_pivots() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let piv = a.pivots();
        let rows: Vec<usize> = piv.iter().map(|p| p.0).collect();
        let cols: Vec<usize> = piv.iter().map(|p| p.1).collect();
        assert!(!a.submatrix(&rows, &cols).det().is_zero());
        // partial pivoting prefers the row with the larger leading entry
        assert_eq!(piv[0], (1, 0));
    }

    #[test]
    fn gram_det_examples() {
        assert_eq!(gram_det(&IntMatrix::identity(2)), 1.into());
        assert_eq!(gram_det(&m(&[&[3, 1, 0]])), 10.into());
        assert_eq!(gram_det(&m(&[&[1, 0], &[1, 0]])), 0.into());
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(a.mul(&a.transpose()), a.gram());
        let s = IntMatrix::stack(&[m(&[&[1, 0]]), m(&[&[0, 1]])]);
        assert_eq!(s, IntMatrix::identity(2));
    }
}
