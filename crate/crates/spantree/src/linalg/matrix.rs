use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Dense square matrix of exact rationals.
///
/// Row/column indices are 0-based. The order is fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(order: usize) -> Self {
        RationalMatrix {
            order,
            entries: vec![Rational::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zero(order);
        for i in 0..order {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let order = rows.len();
        for row in &rows {
            if row.len() != order {
                return Err(Error::DimensionMismatch {
                    left: order,
                    right: row.len(),
                });
            }
        }
        Ok(RationalMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.order + col] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        RationalMatrix {
            order: self.order,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(RationalMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Returns the matrix with row and column `index` (0-based) removed.
    pub fn delete_row_col(&self, index: usize) -> Result<Self> {
        if index >= self.order {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        let m = self.order - 1;
        let mut out = Self::zero(m);
        for (oi, i) in (0..self.order).filter(|&i| i != index).enumerate() {
            for (oj, j) in (0..self.order).filter(|&j| j != index).enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Exact determinant.
    ///
    /// Entries are scaled by the LCM of their denominators to an integer
    /// matrix, eliminated with fraction-free Bareiss, and the integer
    /// determinant is divided by `LCM^n`. Zero pivots are handled by row
    /// swaps with sign tracking; a fully singular column yields 0. The
    /// 0x0 matrix has determinant 1.
    pub fn determinant(&self) -> Rational {
        let n = self.order;
        if n == 0 {
            return Rational::one();
        }
        let mut common = BigInt::one();
        for e in &self.entries {
            common = common.lcm(e.denom());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&common / e.denom())
                    })
                    .collect()
            })
            .collect();

        let mut sign = 1i8;
        let mut prev_pivot = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss guarantees exact divisibility by the previous pivot.
                    m[i][j] = num / &prev_pivot;
                }
                m[i][k] = BigInt::zero();
            }
            prev_pivot = m[k][k].clone();
        }
        let mut det_scaled = m[n - 1][n - 1].clone();
        if sign < 0 {
            det_scaled = -det_scaled;
        }
        let denom = num_traits::pow(common, n);
        Rational::from_bigint(det_scaled) / Rational::from_bigint(denom)
    }

    /// Solves `self * x = b` exactly by rational Gaussian elimination.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.order;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: b.len(),
            });
        }
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rhs: Vec<Rational> = b.to_vec();

        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot_row);
            rhs.swap(col, pivot_row);
            let pivot = a[col][col].clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pivot;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }

        let mut x = vec![Rational::zero(); n];
        for row in (0..n).rev() {
            let mut acc = rhs[row].clone();
            for c in row + 1..n {
                acc -= &a[row][c] * &x[c];
            }
            x[row] = acc / &a[row][row];
        }
        Ok(x)
    }

    /// Multiplies `self * x`.
    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.order;
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: x.len(),
            });
        }
        Ok((0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) * &x[j]).sum())
            .collect())
    }
}
