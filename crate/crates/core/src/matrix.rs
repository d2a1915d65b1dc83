use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{VertexId, VertexSet};

/// Square matrix over arbitrary-precision integers, row-major. Rows and
/// columns are indexed by vertex; column `v` is the image of basis vector `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.n + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<BigInt> {
        (0..self.n).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self * a` where `a` differs from the identity only in column `col`,
    /// given as that column. Only column `col` of the product changes.
    pub fn mul_column_map(&self, col: usize, column: &[(usize, BigInt)]) -> IntMatrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            let mut acc = BigInt::zero();
            for (k, c) in column {
                let a = &self.entries[i * n + k];
                if !a.is_zero() {
                    acc += a * c;
                }
            }
            out.entries[i * n + col] = acc;
        }
        out
    }

    /// Submatrix on the rows and columns of `keep`, in increasing vertex order.
    pub fn minor(&self, keep: VertexSet) -> IntMatrix {
        let idx: Vec<usize> = keep.iter().map(VertexId::index).collect();
        IntMatrix::from_rows(
            idx.iter()
                .map(|&r| idx.iter().map(|&c| self.get(r, c).clone()).collect())
                .collect(),
        )
    }

    /// Nonzero pattern, row-major.
    pub fn support(&self) -> Vec<bool> {
        self.entries.iter().map(|e| !e.is_zero()).collect()
    }

    /// Row-major decimal dump, one row per line.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            for c in 0..self.n {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[test]
    fn products() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&IntMatrix::identity(2)), a);
        let col = [(0, BigInt::from(5)), (1, BigInt::from(7))];
        let mut full = IntMatrix::identity(2);
        full.set(0, 1, BigInt::from(5));
        full.set(1, 1, BigInt::from(7));
        assert_eq!(a.mul_column_map(1, &col), a.mul(&full));
    }

    #[test]
    fn dump_and_minor() {
        let a = m(&[&[1, 0, -2], &[0, 1, 0], &[4, 0, 9]]);
        assert_eq!(a.dump(), "1 0 -2\n0 1 0\n4 0 9\n");
        let keep: VertexSet = [VertexId(0), VertexId(2)].into_iter().collect();
        assert_eq!(a.minor(keep), m(&[&[1, -2], &[4, 9]]));
        assert_eq!(IntMatrix::identity(0).dump(), "");
    }
}
