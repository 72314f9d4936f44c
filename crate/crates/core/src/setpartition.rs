//! Set partitions of `{1, ..., N}` with a prescribed shape.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A set partition of `{1, ..., N}`.
///
/// Blocks are stored 1-indexed, each sorted ascending, and ordered by their
/// minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
    shape: Partition,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = alloc::vec![false; n + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::Invalid("set partition: empty block"));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::Invalid("set partition: blocks do not partition 1..N"));
                }
                seen[x] = true;
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let shape = Partition::from_unsorted(blocks.iter().map(Vec::len).collect());
        Ok(SetPartition { blocks, shape })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn ground_size(&self) -> usize {
        self.shape.size()
    }

    /// `label[v-1]` is the index of the block containing `v`.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut label = alloc::vec![0; self.ground_size()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                label[x - 1] = i;
            }
        }
        label
    }
}

struct Frame {
    /// Elements in use before this block was opened.
    used_before: u64,
    /// Index into the distinct-size list.
    size_slot: usize,
    /// Candidate elements (unused, larger than the block minimum).
    candidates: Vec<u8>,
    /// Positions into `candidates` of the chosen companions, ascending.
    combo: Vec<usize>,
}

/// Lazy iterator over all set partitions of `{1..N}` of a given shape.
///
/// The order is canonical: the block containing the smallest unused element
/// is opened next, its size is tried from largest to smallest, and its other
/// elements run through combinations in lexicographic order.
pub struct SetPartitionIter {
    n: usize,
    sizes: Vec<usize>,
    remaining: Vec<usize>,
    stack: Vec<Frame>,
    started: bool,
    done: bool,
}

/// Iterates the set partitions of `{1, ..., n}` with block sizes `shape`.
pub fn set_partitions_of_shape(n: usize, shape: &Partition) -> Result<SetPartitionIter> {
    if shape.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: shape.size(),
        });
    }
    if n > 64 {
        return Err(Error::OutOfRange {
            what: "ground set size",
            value: n,
            max: 64,
        });
    }
    let mults = shape.multiplicities();
    Ok(SetPartitionIter {
        n,
        sizes: mults.iter().map(|&(s, _)| s).collect(),
        remaining: mults.iter().map(|&(_, m)| m).collect(),
        stack: Vec::new(),
        started: false,
        done: false,
    })
}

impl SetPartitionIter {
    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn used_now(&self) -> u64 {
        match self.stack.last() {
            None => 0,
            Some(f) => {
                let mut u = f.used_before;
                u |= 1u64 << first_free(f.used_before);
                for &c in &f.combo {
                    u |= 1u64 << f.candidates[c];
                }
                u
            }
        }
    }

    fn first_slot_from(&self, from: usize) -> Option<usize> {
        (from..self.sizes.len()).find(|&i| self.remaining[i] > 0)
    }

    /// Opens new blocks with first choices until the ground set is covered.
    fn descend(&mut self) {
        loop {
            let used = self.used_now();
            if used == self.full_mask() {
                return;
            }
            let slot = self.first_slot_from(0).expect("block sizes sum to the ground set size");
            self.push_frame(used, slot);
        }
    }

    fn push_frame(&mut self, used: u64, slot: usize) {
        let min = first_free(used);
        let candidates: Vec<u8> = (min + 1..self.n as u8).filter(|&x| used & (1u64 << x) == 0).collect();
        let k = self.sizes[slot] - 1;
        self.remaining[slot] -= 1;
        self.stack.push(Frame {
            used_before: used,
            size_slot: slot,
            candidates,
            combo: (0..k).collect(),
        });
    }

    /// Moves the top frame to its next choice, popping exhausted frames.
    fn advance(&mut self) -> bool {
        while let Some(frame) = self.stack.last_mut() {
            if next_combination(&mut frame.combo, frame.candidates.len()) {
                return true;
            }
            let used = frame.used_before;
            let slot = frame.size_slot;
            self.stack.pop();
            self.remaining[slot] += 1;
            if let Some(next) = self.first_slot_from(slot + 1) {
                self.push_frame(used, next);
                return true;
            }
        }
        false
    }

    fn current(&self) -> SetPartition {
        let blocks: Vec<Vec<usize>> = self
            .stack
            .iter()
            .map(|f| {
                let mut b = Vec::with_capacity(f.combo.len() + 1);
                b.push(first_free(f.used_before) as usize + 1);
                b.extend(f.combo.iter().map(|&c| f.candidates[c] as usize + 1));
                b
            })
            .collect();
        let shape = Partition::from_unsorted(blocks.iter().map(Vec::len).collect());
        SetPartition { blocks, shape }
    }
}

/// Blocks separated by `|`: `"1 2 3 4 | 5 6"`.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl Iterator for SetPartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.done = true;
                return Some(SetPartition {
                    blocks: Vec::new(),
                    shape: Partition::empty(),
                });
            }
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        self.descend();
        Some(self.current())
    }
}

fn first_free(used: u64) -> u8 {
    (!used).trailing_zeros() as u8
}

/// Advances an ascending `k`-combination of `0..len` in lexicographic order.
fn next_combination(combo: &mut [usize], len: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < len - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partitions_of, set_partition_count};
    use alloc::collections::BTreeSet;
    use num_traits::ToPrimitive;

    fn shape(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn display() {
        let sp = SetPartition::new(alloc::vec![alloc::vec![5, 6], alloc::vec![3, 1, 2, 4]]).unwrap();
        assert_eq!(alloc::format!("{sp}"), "1 2 3 4 | 5 6");
    }

    #[test]
    fn named_counts() {
        assert_eq!(set_partitions_of_shape(12, &shape(&[8, 4])).unwrap().count(), 495);
        assert_eq!(set_partitions_of_shape(8, &shape(&[4, 2, 2])).unwrap().count(), 210);
        assert_eq!(set_partitions_of_shape(6, &shape(&[2, 2, 2])).unwrap().count(), 15);
    }

    #[test]
    fn counts_match_formula_up_to_ten() {
        for n in 0..=10 {
            for s in partitions_of(n) {
                let got = set_partitions_of_shape(n, &s).unwrap().count();
                assert_eq!(got, set_partition_count(&s).to_usize().unwrap(), "{s:?}");
            }
        }
    }

    #[test]
    fn each_partition_once_and_well_formed() {
        let s = shape(&[3, 2, 2, 1]);
        let all: alloc::vec::Vec<_> = set_partitions_of_shape(8, &s).unwrap().collect();
        let distinct: BTreeSet<_> = all.iter().map(|p| p.blocks().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
        for p in &all {
            assert_eq!(p.shape(), &s);
            let rebuilt = SetPartition::new(p.blocks().to_vec()).unwrap();
            assert_eq!(&rebuilt, p);
        }
    }

    #[test]
    fn first_partition_is_consecutive_blocks() {
        let first = set_partitions_of_shape(6, &shape(&[4, 2])).unwrap().next().unwrap();
        assert_eq!(first.blocks(), &[alloc::vec![1, 2, 3, 4], alloc::vec![5, 6]]);
    }

    #[test]
    fn size_mismatch() {
        assert!(set_partitions_of_shape(5, &shape(&[2, 2])).is_err());
    }
}
