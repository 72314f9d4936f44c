//! Primitive idempotents of the Bose–Mesner algebra for small `n`.
//!
//! `E_μ(x, y) = Q_μ(ρ(x, y)) / |X|`. Multiplying by `(2n)! = |X|·|B_n|` makes
//! every entry an integer, so the matrices are kept as integer numerators
//! over the common denominator `(2n)!`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::matching::{all_matchings, Matching, RelationIndex};
use crate::partition::{factorial, Partition};
use crate::perm::hyperoctahedral_order;
use crate::scalar::{from_uint, ExactScalar};
use crate::zonal::ZonalTable;

/// Largest `n` for which full idempotent matrices are built.
pub const MAX_IDEMPOTENT_N: usize = 5;

/// All `E_μ` for one `n`, sharing the relation matrix of the scheme.
#[derive(Clone, Debug)]
pub struct Idempotents {
    n: usize,
    points: Vec<Matching>,
    relation: Vec<u8>,
    partitions: Vec<Partition>,
    // entry numerators per (μ, ρ)
    values: Vec<Vec<i64>>,
    denominator: i64,
}

/// Builds `E_μ` for every `μ ⊢ n`, `n ≤ 5`.
pub fn idempotents(table: &ZonalTable) -> Result<Idempotents> {
    let n = table.n();
    if n > MAX_IDEMPOTENT_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            max: MAX_IDEMPOTENT_N,
        });
    }
    let points = all_matchings(n)?;
    let index = RelationIndex::new(n);
    let size = points.len();
    let mut relation = alloc::vec![0u8; size * size];
    for i in 0..size {
        for j in i..size {
            let r = index.distance_index(&points[i], &points[j]) as u8;
            relation[i * size + j] = r;
            relation[j * size + i] = r;
        }
    }
    let order = from_uint(&hyperoctahedral_order(n).into());
    let r = table.classes();
    let mut values = Vec::with_capacity(r);
    for mu in 0..r {
        let deg = from_uint(table.degree(mu));
        let row = (0..r)
            .map(|rho| {
                let v: ExactScalar = table.omega(mu, rho) * &order * &deg;
                debug_assert!(v.is_integer());
                v.to_integer().to_i64().expect("idempotent numerator fits i64")
            })
            .collect();
        values.push(row);
    }
    let denominator = factorial(2 * n).to_i64().expect("(2n)! fits i64");
    Ok(Idempotents {
        n,
        points,
        relation,
        partitions: table.partitions().to_vec(),
        values,
        denominator,
    })
}

impl Idempotents {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Matching] {
        &self.points
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Common denominator `(2n)!`.
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// Numerator matrix of `E_μ`; `E_μ = matrix / denominator`.
    pub fn numerators(&self, mu: usize) -> IntMatrix {
        let size = self.points.len();
        let vals = &self.values[mu];
        IntMatrix::from_fn(size, |i, j| vals[self.relation[i * size + j] as usize])
    }

    /// Exact entry `E_μ(x_i, x_j)`.
    pub fn entry(&self, mu: usize, i: usize, j: usize) -> ExactScalar {
        let size = self.points.len();
        ExactScalar::new(
            BigInt::from(self.values[mu][self.relation[i * size + j] as usize]),
            BigInt::from(self.denominator),
        )
    }

    /// True iff `E_μ 1_Z = 0`, where `Z` is given by indices into [`Idempotents::points`].
    pub fn annihilates(&self, mu: usize, members: &[usize]) -> bool {
        let size = self.points.len();
        let vals = &self.values[mu];
        (0..size).all(|i| {
            members
                .iter()
                .map(|&j| vals[self.relation[i * size + j] as usize] as i128)
                .sum::<i128>()
                == 0
        })
    }

    /// Index of a matching in [`Idempotents::points`].
    pub fn position(&self, m: &Matching) -> Option<usize> {
        self.points.binary_search(m).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zonal::zonal_table;
    use num_bigint::BigUint;

    #[test]
    fn products_sum_and_rank_n3() {
        let t = zonal_table(3).unwrap();
        let e = idempotents(&t).unwrap();
        let d = e.denominator() as i128;
        let mats: Vec<IntMatrix> = (0..t.classes()).map(|m| e.numerators(m)).collect();
        let size = e.points().len();
        for (a, ma) in mats.iter().enumerate() {
            for (b, mb) in mats.iter().enumerate() {
                let prod = ma.mul_wide(mb);
                for i in 0..size {
                    for j in 0..size {
                        let want = if a == b { d * ma.get(i, j) as i128 } else { 0 };
                        assert_eq!(prod[i * size + j], want);
                    }
                }
            }
            assert_eq!(BigUint::from(ma.rank()), *t.degree(a));
        }
        // sum is the identity
        for i in 0..size {
            for j in 0..size {
                let s: i64 = mats.iter().map(|m| m.get(i, j)).sum();
                assert_eq!(s, if i == j { e.denominator() } else { 0 });
            }
        }
        // E_(n) = J / |X|
        assert_eq!(e.entry(0, 3, 7), ExactScalar::new(1.into(), 15.into()));
    }

    #[test]
    fn rank_of_42_is_nine() {
        let t = zonal_table(3).unwrap();
        let e = idempotents(&t).unwrap();
        let mu = t.position(&Partition::new(alloc::vec![2, 1]).unwrap()).unwrap();
        assert_eq!(e.numerators(mu).rank(), 9);
    }
}
