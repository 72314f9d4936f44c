//! Dense exact matrices: rationals for the small `P`/`Q` tables, integers
//! for the idempotent numerators.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::ExactScalar;

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: alloc::vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ExactScalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn scale(&self, s: &ExactScalar) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimensions");
        RatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = ExactScalar::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * rhs.get(k, j);
            }
            acc
        })
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Row-major integer matrix for exact products of scaled idempotents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    size: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                data.push(f(i, j));
            }
        }
        IntMatrix { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn trace(&self) -> i128 {
        (0..self.size).map(|i| self.get(i, i) as i128).sum()
    }

    /// Exact product with 128-bit accumulation.
    pub fn mul_wide(&self, rhs: &IntMatrix) -> Vec<i128> {
        let n = self.size;
        assert_eq!(n, rhs.size, "matrix dimensions");
        let mut out = alloc::vec![0i128; n * n];
        for i in 0..n {
            let row = self.row(i);
            let dst = &mut out[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as i128;
                for (d, &b) in dst.iter_mut().zip(rhs.row(k)) {
                    *d += a * b as i128;
                }
            }
        }
        out
    }

    /// `M · v` for a 0/1 indicator given as a set of column indices.
    pub fn mul_indicator(&self, columns: &[usize]) -> Vec<i128> {
        (0..self.size)
            .map(|i| columns.iter().map(|&j| self.get(i, j) as i128).sum())
            .collect()
    }

    /// Rank over the rationals by fraction-free elimination on big integers,
    /// dividing each row by its content as it goes.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.size)
            .map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        rank_of(&mut rows, self.size)
    }
}

fn rank_of(rows: &mut [Vec<BigInt>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let p = prow[col].clone();
        for r in rest.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for c in col..cols {
                r[c] = &r[c] * &p - &f * &prow[c];
            }
            normalise_row(r);
        }
        rank += 1;
    }
    rank
}

fn normalise_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// Rank of a rational matrix.
pub fn rational_rank(m: &RatMatrix) -> usize {
    // Clear denominators row by row, then eliminate over the integers.
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    rank_of(&mut rows, m.cols())
}
