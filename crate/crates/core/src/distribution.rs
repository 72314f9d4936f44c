//! Inner and dual distributions of a set of matchings.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matching::{Matching, RelationIndex};
use crate::partition::Partition;
use crate::scalar::{from_uint, ExactScalar};
use crate::zonal::ZonalTable;

/// Values indexed by the partitions of `n` in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct Distribution {
    partitions: Vec<Partition>,
    values: Vec<ExactScalar>,
}

impl Distribution {
    pub fn new(partitions: Vec<Partition>, values: Vec<ExactScalar>) -> Self {
        assert_eq!(partitions.len(), values.len());
        Distribution { partitions, values }
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn values(&self) -> &[ExactScalar] {
        &self.values
    }

    pub fn get(&self, p: &Partition) -> Option<&ExactScalar> {
        self.partitions.iter().position(|q| q == p).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &ExactScalar)> {
        self.partitions.iter().zip(&self.values)
    }

    /// Labels with a nonzero value.
    pub fn support(&self) -> Vec<Partition> {
        self.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn total(&self) -> ExactScalar {
        self.values.iter().sum()
    }
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p:?}: {v}")?;
        }
        f.write_str("}")
    }
}

fn common_n(members: &[Matching]) -> Result<usize> {
    let first = members.first().ok_or(Error::EmptySet)?;
    let n = first.n();
    if let Some(m) = members.iter().find(|m| m.n() != n) {
        return Err(Error::GroundSetMismatch {
            expected: 2 * n,
            found: m.points(),
        });
    }
    Ok(n)
}

/// Ordered pair counts `|{(x, y) ∈ Z² : coset_distance(x, y) = ρ}|`.
pub fn pair_counts(members: &[Matching], index: &RelationIndex) -> Vec<u64> {
    let mut counts = alloc::vec![0u64; index.partitions().len()];
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            counts[index.distance_index(a, b)] += 2;
        }
    }
    if let Some(last) = counts.last_mut() {
        *last += members.len() as u64;
    }
    counts
}

/// `a_ρ = |Z|⁻¹ |{(x, y) ∈ Z² : coset_distance(x, y) = ρ}|`.
///
/// `members` may contain repeats; they are counted as separate points.
pub fn inner_distribution(members: &[Matching]) -> Result<Distribution> {
    let n = common_n(members)?;
    let index = RelationIndex::new(n);
    let counts = pair_counts(members, &index);
    Ok(inner_from_counts(&index, &counts, members.len()))
}

pub fn inner_from_counts(index: &RelationIndex, counts: &[u64], size: usize) -> Distribution {
    let size = BigInt::from(size);
    Distribution::new(
        index.partitions().to_vec(),
        counts
            .iter()
            .map(|&c| ExactScalar::new(BigInt::from(c), size.clone()))
            .collect(),
    )
}

/// `a′_μ = (|X| χ^{2μ}(1) / |Z|) Σ_ρ ω^μ_ρ a_ρ`.
pub fn dual_distribution(members: &[Matching], table: &ZonalTable) -> Result<Distribution> {
    let n = common_n(members)?;
    if n != table.n() {
        return Err(Error::SizeMismatch {
            expected: table.n(),
            found: n,
        });
    }
    let inner = inner_distribution(members)?;
    Ok(dual_from_inner(&inner, members.len(), table))
}

/// The dual distribution from an inner distribution of a `size`-element set.
pub fn dual_from_inner(inner: &Distribution, size: usize, table: &ZonalTable) -> Distribution {
    let r = table.classes();
    let x = from_uint(&table.points());
    let size = ExactScalar::from_integer(BigInt::from(size));
    let values = (0..r)
        .map(|mu| {
            let mut s = ExactScalar::zero();
            for (rho, a) in inner.values().iter().enumerate() {
                if !a.is_zero() {
                    s += table.omega(mu, rho) * a;
                }
            }
            s * &x * from_uint(table.degree(mu)) / &size
        })
        .collect();
    Distribution::new(table.partitions().to_vec(), values)
}
