//! Dense exact matrices over a [`FieldSpec`] field. Rank goes through
//! fraction-free elimination on integers in characteristic zero and plain
//! Gaussian elimination mod p; reduced echelon forms are computed with field
//! arithmetic so representatives come out bit-identical across runs.

use crate::error::Result;
use crate::scalar::{FieldSpec, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Reduced row echelon form; returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv();
            for j in col..m.cols {
                let v = m.get(row, j).mul(&inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in col..m.cols {
                        let v = m.get(r, j).sub(&factor.mul(m.get(row, j)));
                        m.set(r, j, v);
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
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact rank. Characteristic 0 clears denominators and runs Bareiss
    /// fraction-free elimination over the integers; characteristic p uses
    /// ordinary elimination on residues.
    pub fn rank(&self) -> usize {
        let r = if self.field.is_rational() {
            self.rank_bareiss()
        } else {
            self.rref().1.len()
        };
        debug_assert_eq!(r, self.rref().1.len());
        r
    }

    fn rank_bareiss(&self) -> usize {
        // Clear denominators row by row; the row lcm never changes the rank.
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut lcm = BigInt::one();
            for j in 0..self.cols {
                if let Scalar::Rat(r) = self.get(i, j) {
                    lcm = lcm.lcm(r.denom());
                }
            }
            let row: Vec<BigInt> = (0..self.cols)
                .map(|j| match self.get(i, j) {
                    Scalar::Rat(r) => r.numer() * (&lcm / r.denom()),
                    Scalar::Fp { .. } => unreachable!("rational matrix expected"),
                })
                .collect();
            m.push(row);
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, pr);
            for r in (row + 1)..rows {
                for c in (col + 1)..cols {
                    let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[r][c] = q;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            if prev.is_negative() {
                // Sign of the pivot does not affect exact division validity.
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Echelon-normalized basis of the null space of this matrix acting on
    /// column vectors. Deterministic: free variables in increasing column
    /// order, each basis vector has a 1 in its free slot.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.cols];
            vec[free] = self.field.one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    vec[col] = r.get(*row, free).neg();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Whether `v` lies in the column space.
    pub fn column_space_contains(&self, v: &[Scalar]) -> Result<bool> {
        assert_eq!(v.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, v[i].clone());
        }
        Ok(aug.rank() == self.rank())
    }
}

/// Reduce `v` against rows of an rref matrix (kills the pivot coordinates).
pub fn reduce_against(v: &[Scalar], rref: &Matrix, pivots: &[usize]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for (row, &col) in pivots.iter().enumerate() {
        if out[col].is_zero() {
            continue;
        }
        let factor = out[col].clone();
        for j in 0..out.len() {
            out[j] = out[j].sub(&factor.mul(rref.get(row, j)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn qm(rows: Vec<Vec<i64>>) -> Matrix {
        let f = q();
        Matrix::from_rows(
            f,
            rows.into_iter()
                .map(|r| r.into_iter().map(|n| f.from_i64(n)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_rational_matches_rref() {
        let m = qm(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_mod_p() {
        let f = FieldSpec::new(5).unwrap();
        let m = Matrix::from_rows(
            f,
            vec![
                vec![f.from_i64(1), f.from_i64(2)],
                vec![f.from_i64(3), f.from_i64(6)], // 3*(1,2) mod 5
            ],
        );
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let m = Matrix::identity(q(), 3);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_dimension() {
        let m = qm(vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // Kernel vector maps to zero.
        for v in &k {
            for i in 0..m.rows() {
                let mut acc = q().zero();
                for j in 0..m.cols() {
                    acc = acc.add(&m.get(i, j).mul(&v[j]));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn membership() {
        let m = qm(vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let f = q();
        let inside = vec![f.from_i64(2), f.from_i64(3), f.from_i64(5)];
        let outside = vec![f.from_i64(1), f.from_i64(0), f.from_i64(3)];
        assert!(m.column_space_contains(&inside).unwrap());
        assert!(!m.column_space_contains(&outside).unwrap());
    }
}
