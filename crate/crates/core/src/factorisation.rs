//! λ-factorisations: the two checkers, size and index algebra, derivation.
//!
//! A nonempty `D` is a λ-factorisation of index `c` when every set
//! partition of `{1..2n}` of shape `2λ` is refined by exactly `c` members.
//! Equivalently the dual distribution of `D` vanishes on every `μ ⊵ λ`
//! other than `(n)`, which is what [`check_by_design`] tests.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::distribution::{dual_distribution, Distribution};
use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::partition::{block_matching_count, dominates, odd_double_factorial, partitions_of, Partition};
use crate::scalar::ExactScalar;
use crate::setpartition::{set_partitions_of_shape, SetPartition};
use crate::zonal::ZonalTable;

/// Outcome of [`check_by_definition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every partition of shape `2λ` is refined by exactly `index` members.
    Yes { index: u64 },
    /// `witness` is refined by `count` members, unlike the partitions before it.
    No { witness: SetPartition, count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorisationReport {
    pub lambda: Partition,
    pub verdict: Verdict,
}

impl FactorisationReport {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, Verdict::Yes { .. })
    }

    pub fn index(&self) -> Option<u64> {
        match self.verdict {
            Verdict::Yes { index } => Some(index),
            Verdict::No { .. } => None,
        }
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

fn check_shape(n: usize, lambda: &Partition) -> Result<()> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lambda.size(),
        });
    }
    Ok(())
}

/// Counts refining members for every partition of shape `2λ` and stops at
/// the first partition whose count differs from the first one.
pub fn check_by_definition(members: &[Matching], lambda: &Partition) -> Result<FactorisationReport> {
    let n = common_n(members)?;
    check_shape(n, lambda)?;
    let edges: Vec<Vec<(u8, u8)>> = members
        .iter()
        .map(|m| {
            m.pairs()
                .into_iter()
                .map(|(a, b)| ((a - 1) as u8, (b - 1) as u8))
                .collect()
        })
        .collect();
    let mut label = [0u8; 64];
    let mut first: Option<u64> = None;
    for part in set_partitions_of_shape(2 * n, &lambda.doubled())? {
        for (i, b) in part.blocks().iter().enumerate() {
            for &x in b {
                label[x - 1] = i as u8;
            }
        }
        let count = edges
            .iter()
            .filter(|es| es.iter().all(|&(a, b)| label[a as usize] == label[b as usize]))
            .count() as u64;
        match first {
            None => first = Some(count),
            Some(c) if c == count => {}
            Some(_) => {
                return Ok(FactorisationReport {
                    lambda: lambda.clone(),
                    verdict: Verdict::No { witness: part, count },
                })
            }
        }
    }
    Ok(FactorisationReport {
        lambda: lambda.clone(),
        verdict: Verdict::Yes {
            index: first.unwrap_or(0),
        },
    })
}

/// The `μ ⊢ n` with `λ ⊴ μ` and `μ ≠ (n)` at which the dual distribution of
/// `D` is nonzero. Empty exactly when `D` is a λ-factorisation.
pub fn design_violations(members: &[Matching], lambda: &Partition, table: &ZonalTable) -> Result<Vec<Partition>> {
    let n = common_n(members)?;
    check_shape(n, lambda)?;
    let dual = dual_distribution(members, table)?;
    violations_in_dual(&dual, lambda)
}

/// [`design_violations`] for an already computed dual distribution, so one
/// distribution can be tested against several shapes.
pub fn violations_in_dual(dual: &Distribution, lambda: &Partition) -> Result<Vec<Partition>> {
    let n = dual.partitions().first().map_or(0, Partition::size);
    check_shape(n, lambda)?;
    let mut out = Vec::new();
    for (mu, v) in dual.iter().skip(1) {
        if dominates(mu, lambda)? && !v.is_zero() {
            out.push(mu.clone());
        }
    }
    Ok(out)
}

/// True iff the dual distribution vanishes on every `μ ⊵ λ` other than `(n)`.
pub fn check_by_design(members: &[Matching], lambda: &Partition, table: &ZonalTable) -> Result<bool> {
    Ok(design_violations(members, lambda, table)?.is_empty())
}

/// `|D| = c (2n−1)!! / ∏ (2λ_i − 1)!!`; fails with [`Error::NonIntegral`]
/// when no λ-factorisation of index `c` can exist for that reason alone.
pub fn expected_size(lambda: &Partition, c: u64) -> Result<BigUint> {
    let num = odd_double_factorial(lambda.size()) * BigUint::from(c);
    let den = block_matching_count(lambda);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegral);
    }
    Ok(q)
}

/// `c_μ = c_λ ∏(2μ_i−1)!! / ∏(2λ_i−1)!!` for `λ ⊴ μ`.
pub fn index_conversion(lambda: &Partition, mu: &Partition, c: u64) -> Result<ExactScalar> {
    if !dominates(mu, lambda)? {
        return Err(Error::NotDominated {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    Ok(ExactScalar::new(
        BigInt::from(block_matching_count(mu) * BigUint::from(c)),
        BigInt::from(block_matching_count(lambda)),
    ))
}

/// A shape forced by dominance together with its converted index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consequence {
    pub mu: Partition,
    pub index: ExactScalar,
}

impl Consequence {
    /// A non-integral index rules out the original `(λ, c)`.
    pub fn is_contradiction(&self) -> bool {
        !self.index.is_integer()
    }
}

/// Every `μ ⊳ λ` with its index, in canonical partition order.
pub fn dominance_consequences(lambda: &Partition, c: u64) -> Vec<Consequence> {
    partitions_of(lambda.size())
        .into_iter()
        .filter(|mu| mu != lambda && dominates(mu, lambda).unwrap_or(false))
        .map(|mu| {
            let index = index_conversion(lambda, &mu, c).expect("dominance checked");
            Consequence { mu, index }
        })
        .collect()
}

fn subset_mask(points: usize, s: &[usize]) -> Result<Vec<bool>> {
    if s.len() % 2 == 1 {
        return Err(Error::OddSubset(s.len()));
    }
    let mut inside = alloc::vec![false; points];
    for &v in s {
        if v == 0 || v > points || inside[v - 1] {
            return Err(Error::Invalid("derive: S must be distinct vertices in 1..2n"));
        }
        inside[v - 1] = true;
    }
    Ok(inside)
}

/// True iff `m` has no edge between `S` and its complement.
pub fn splits_at(m: &Matching, inside: &[bool]) -> bool {
    (1..=m.points()).all(|v| inside[v - 1] == inside[m.partner(v) - 1])
}

/// The derivation `D_S`: members splitting at `S`, restricted to the
/// complement and relabelled to `1..2n−|S|` in increasing order.
///
/// With `|S| ≥ 4` distinct members can restrict to the same matching; each
/// occurrence is kept.
pub fn derive(members: &[Matching], s: &[usize]) -> Result<Vec<Matching>> {
    let n = common_n(members)?;
    let inside = subset_mask(2 * n, s)?;
    let mut relabel = alloc::vec![0usize; 2 * n];
    let mut next = 1;
    for v in 0..2 * n {
        if !inside[v] {
            relabel[v] = next;
            next += 1;
        }
    }
    let mut out = Vec::new();
    for m in members {
        if !splits_at(m, &inside) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = m
            .pairs()
            .into_iter()
            .filter(|&(a, _)| !inside[a - 1])
            .map(|(a, b)| (relabel[a - 1], relabel[b - 1]))
            .collect();
        out.push(Matching::from_pairs(&pairs)?);
    }
    Ok(out)
}

/// The antidesign `A(P)`: all matchings refining `P`, in canonical order.
pub fn antidesign(part: &SetPartition) -> Vec<Matching> {
    let points = part.ground_size();
    let mut out = Vec::new();
    let mut partner = alloc::vec![0usize; points];
    fill_blocks(
        part.blocks(),
        0,
        &mut alloc::vec![false; points],
        &mut partner,
        &mut out,
    );
    out.sort_unstable();
    out
}

fn fill_blocks(
    blocks: &[Vec<usize>],
    bi: usize,
    used: &mut Vec<bool>,
    partner: &mut Vec<usize>,
    out: &mut Vec<Matching>,
) {
    let Some(block) = blocks.get(bi) else {
        let pairs: Vec<(usize, usize)> = (0..partner.len())
            .filter(|&v| v < partner[v])
            .map(|v| (v + 1, partner[v] + 1))
            .collect();
        out.push(Matching::from_pairs(&pairs).expect("complete matching"));
        return;
    };
    let Some(&v) = block.iter().find(|&&v| !used[v - 1]) else {
        fill_blocks(blocks, bi + 1, used, partner, out);
        return;
    };
    used[v - 1] = true;
    for &w in block {
        if used[w - 1] {
            continue;
        }
        used[w - 1] = true;
        partner[v - 1] = w - 1;
        partner[w - 1] = v - 1;
        fill_blocks(blocks, bi, used, partner, out);
        used[w - 1] = false;
    }
    used[v - 1] = false;
}
