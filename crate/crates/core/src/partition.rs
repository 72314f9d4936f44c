//! Integer partitions and the counting functions built on them.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, ParseError, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Parts are stored without trailing zeros, so equality is sequence equality.
/// The empty partition is the unique partition of 0.
///
/// `Ord` is plain lexicographic order on the parts; canonical table order is
/// the one produced by [`partitions_of`].
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition: zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("partition: parts not weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive sizes into a partition; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: alloc::vec![n] }
        }
    }

    /// `(1, 1, ..., 1)` with `n` ones.
    pub fn ones(n: usize) -> Self {
        Partition {
            parts: alloc::vec![1; n],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `2λ`, the partition of `2n` with every part doubled.
    pub fn doubled(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
        }
    }

    /// Pairs `(part size, multiplicity)` in decreasing order of part size.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn contains_part(&self, k: usize) -> bool {
        self.parts.contains(&k)
    }

    /// Removes one copy of part `k`.
    pub fn without_part(&self, k: usize) -> Result<Partition> {
        let pos = self.parts.iter().position(|&p| p == k).ok_or(Error::NotAPart {
            part: k,
            lambda: self.clone(),
        })?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Ok(Partition { parts })
    }

    /// True if every part of `self`, counted with multiplicity, is a part of `other`.
    pub fn is_submultiset_of(&self, other: &Partition) -> bool {
        let theirs = other.multiplicities();
        self.multiplicities()
            .iter()
            .all(|&(p, m)| theirs.iter().any(|&(q, k)| q == p && k >= m))
    }

    /// All distinct sub-multisets of the parts, including the empty one and `self`.
    pub fn submultisets(&self) -> Vec<Partition> {
        let mults = self.multiplicities();
        let mut out = alloc::vec![Vec::new()];
        for (p, m) in mults {
            let mut next = Vec::new();
            for base in &out {
                for c in 0..=m {
                    let mut v: Vec<usize> = base.clone();
                    v.extend(core::iter::repeat_n(p, c));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(|parts| Partition { parts }).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"4,2"`, `" 4 , 2 "`, `"(4,2)"`. Parts may come in any order.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let (body, offset) = match trimmed.strip_prefix('(') {
            Some(rest) => match rest.strip_suffix(')') {
                Some(inner) => (inner, 1),
                None => {
                    return Err(ParseError {
                        position: s.len(),
                        message: "unclosed parenthesis",
                    }
                    .into())
                }
            },
            None => (trimmed, 0),
        };
        let lead = s.len() - s.trim_start().len() + offset;
        if body.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut pos = lead;
        for item in body.split(',') {
            let t = item.trim();
            let v: usize = t.parse().map_err(|_| ParseError {
                position: pos + (item.len() - item.trim_start().len()),
                message: "expected a positive integer part",
            })?;
            if v == 0 {
                return Err(ParseError {
                    position: pos,
                    message: "partition parts must be positive",
                }
                .into());
            }
            parts.push(v);
            pos += item.len() + 1;
        }
        Ok(Partition::from_unsorted(parts))
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting with `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::empty());
        return out;
    }
    let mut current = alloc::vec![n];
    loop {
        out.push(Partition { parts: current.clone() });
        // Find the rightmost part > 1, decrement it and refill greedily.
        let mut ones = 0;
        while let Some(&1) = current.last() {
            current.pop();
            ones += 1;
        }
        let Some(last) = current.last_mut() else {
            break;
        };
        *last -= 1;
        let cap = *last;
        let mut remaining = ones + 1;
        while remaining > 0 {
            let take = remaining.min(cap);
            current.push(take);
            remaining -= take;
        }
    }
    out
}

/// `λ ⊴ μ`: every prefix sum of `lambda` is at most the matching prefix sum of `mu`.
pub fn dominates(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch {
            expected: mu.size(),
            found: lambda.size(),
        });
    }
    let len = mu.len().max(lambda.len());
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..len {
        a += lambda.part(i);
        b += mu.part(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(2k-1)!! = (2k-1)(2k-3)...3·1`, with `(-1)!! = 1`.
pub fn odd_double_factorial(k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= BigUint::from(2 * i - 1);
    }
    acc
}

pub(crate) fn odd_double_factorial_u64(k: usize) -> u64 {
    (1..=k as u64).map(|i| 2 * i - 1).product()
}

pub fn factorial(k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=k {
        acc *= BigUint::from(i);
    }
    acc
}

/// Content polynomial `∏ (x − i + 2j − 1)` over the cells `(i, j)` of the diagram, 1-indexed.
pub fn content_polynomial_at(lambda: &Partition, x: i64) -> BigInt {
    let mut acc = BigInt::one();
    for (row, &len) in lambda.parts().iter().enumerate() {
        let i = row as i64 + 1;
        for j in 1..=len as i64 {
            acc *= BigInt::from(x - i + 2 * j - 1);
        }
    }
    acc
}

/// Number of set partitions of an `|shape|`-set with the given block sizes:
/// `N! / ∏ (s!^{m_s} m_s!)`.
pub fn set_partition_count(shape: &Partition) -> BigUint {
    let mut den = BigUint::one();
    for (s, m) in shape.multiplicities() {
        den *= factorial(s).pow(m as u32) * factorial(m);
    }
    factorial(shape.size()) / den
}

/// Number of set partitions of shape `2λ` that a fixed perfect matching refines:
/// `n! / ∏ (i!^{m_i} m_i!)`.
pub fn refinement_count(lambda: &Partition) -> BigUint {
    set_partition_count(lambda)
}

/// `z_λ = ∏ i^{m_i} m_i!`, the centraliser order of a permutation of cycle type `λ`.
pub fn z_number(lambda: &Partition) -> BigUint {
    let mut acc = BigUint::one();
    for (i, m) in lambda.multiplicities() {
        acc *= BigUint::from(i).pow(m as u32) * factorial(m);
    }
    acc
}

/// `∏ (2λ_i − 1)!!`, the number of perfect matchings refining a fixed set partition of shape `2λ`.
pub fn block_matching_count(lambda: &Partition) -> BigUint {
    lambda.parts().iter().map(|&p| odd_double_factorial(p)).product()
}
