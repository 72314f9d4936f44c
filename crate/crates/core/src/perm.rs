//! Permutations of `{1, ..., m}`, the hyperoctahedral group `B_n`, and
//! coset-type representatives.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::partition::Partition;

/// A bijection of `{1, ..., m}`. Stored 0-indexed; all public indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

/// Cycle type of a permutation of `m` points (fixed points counted as 1-cycles).
pub type CycleType = Partition;

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m as u8).collect(),
        }
    }

    /// From 1-based images: `images[i-1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if m > 255 {
            return Err(Error::OutOfRange {
                what: "permutation degree",
                value: m,
                max: 255,
            });
        }
        let mut seen = alloc::vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &v in images {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::Invalid("permutation images"));
            }
            seen[v - 1] = true;
            out.push((v - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// From disjoint cycles over `{1..m}`, e.g. `&[&[1, 2, 3, 4], &[5, 6]]`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=m).collect();
        let mut touched = alloc::vec![false; m + 1];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > m || touched[a] {
                    return Err(Error::Invalid("cycle notation"));
                }
                touched[a] = true;
                images[a - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles (1-based), each starting at its smallest point,
    /// ordered by that point. Fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.images.len();
        let mut seen = alloc::vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        cycle_type_of(&self.images)
    }
}

/// Cycle type of a raw 0-indexed image array.
pub(crate) fn cycle_type_of(images: &[u8]) -> CycleType {
    let m = images.len();
    let mut seen = [false; 256];
    let mut lens = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x] as usize;
        }
        lens.push(len);
    }
    Partition::from_unsorted(lens)
}

/// Cycle type of `σ`.
pub fn cycle_type(sigma: &Permutation) -> CycleType {
    sigma.cycle_type()
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S_{}", self.degree())
    }
}

/// Parses cycle notation such as `"(1 2 3 4)(5 6)"` for a given degree.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut num: Option<(usize, usize)> = None;
    let bytes = s.as_bytes();
    let flush = |num: &mut Option<(usize, usize)>, current: &mut Option<Vec<usize>>| -> Result<()> {
        if let Some((v, pos)) = num.take() {
            match current {
                Some(c) => c.push(v),
                None => {
                    return Err(ParseError {
                        position: pos,
                        message: "number outside a cycle",
                    }
                    .into())
                }
            }
        }
        Ok(())
    };
    for (pos, &b) in bytes.iter().enumerate() {
        match b {
            b'0'..=b'9' => {
                let d = (b - b'0') as usize;
                num = Some(match num {
                    Some((v, p)) => (v * 10 + d, p),
                    None => (d, pos),
                });
            }
            b'(' => {
                flush(&mut num, &mut current)?;
                if current.is_some() {
                    return Err(ParseError {
                        position: pos,
                        message: "nested parenthesis",
                    }
                    .into());
                }
                current = Some(Vec::new());
            }
            b')' => {
                flush(&mut num, &mut current)?;
                match current.take() {
                    Some(c) => cycles.push(c),
                    None => {
                        return Err(ParseError {
                            position: pos,
                            message: "unmatched ')'",
                        }
                        .into())
                    }
                }
            }
            b' ' | b',' | b'\t' => flush(&mut num, &mut current)?,
            _ => {
                return Err(ParseError {
                    position: pos,
                    message: "unexpected character",
                }
                .into())
            }
        }
    }
    flush(&mut num, &mut current)?;
    if current.is_some() {
        return Err(ParseError {
            position: s.len(),
            message: "unclosed cycle",
        }
        .into());
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(degree, &refs)
}

impl FromStr for Permutation {
    type Err = Error;

    /// Degree is the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let degree = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        parse_cycles(s, degree)
    }
}

/// Elements of `B_n ≤ S_{2n}`, the stabiliser of `m* = {{1,2},{3,4},...}`.
///
/// Each element is a block permutation `π ∈ S_n` combined with a flip vector
/// `ε ∈ {0,1}^n`: point `2i-1+δ` goes to block `π(i)`, swapped inside the
/// block iff `ε_i = 1`. Block permutations run in lexicographic order and,
/// for each, flip vectors in binary counting order.
pub struct Hyperoctahedral {
    n: usize,
    block_perm: Vec<usize>,
    flips: u64,
    done: bool,
}

pub fn hyperoctahedral_elements(n: usize) -> Hyperoctahedral {
    Hyperoctahedral {
        n,
        block_perm: (0..n).collect(),
        flips: 0,
        done: n > 32,
    }
}

/// `|B_n| = 2^n n!`.
pub fn hyperoctahedral_order(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

impl Hyperoctahedral {
    fn write_current(&self, out: &mut [u8]) {
        for (i, &b) in self.block_perm.iter().enumerate() {
            let flip = ((self.flips >> i) & 1) as u8;
            out[2 * i] = (2 * b) as u8 + flip;
            out[2 * i + 1] = (2 * b) as u8 + (1 - flip);
        }
    }

    fn step(&mut self) {
        self.flips += 1;
        if self.flips >> self.n != 0 {
            self.flips = 0;
            if !next_permutation(&mut self.block_perm) {
                self.done = true;
            }
        }
    }

    /// Calls `f` on the raw 0-indexed image array of each element, reusing one buffer.
    pub(crate) fn for_each_raw(mut self, mut f: impl FnMut(&[u8])) {
        let mut buf = alloc::vec![0u8; 2 * self.n];
        while !self.done {
            self.write_current(&mut buf);
            f(&buf);
            self.step();
        }
    }
}

impl Iterator for Hyperoctahedral {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut buf = alloc::vec![0u8; 2 * self.n];
        self.write_current(&mut buf);
        self.step();
        Some(Permutation { images: buf })
    }
}

/// Lexicographic successor; false when `v` is the last permutation.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A permutation `σ_ρ ∈ S_{2n}` of coset type `ρ`: on consecutive runs of
/// `2ρ_i` points it acts as the full cycle `(s+1, s+2, ..., s+2ρ_i)`.
pub fn coset_type_rep(rho: &Partition) -> Permutation {
    let m = 2 * rho.size();
    let mut images = alloc::vec![0u8; m];
    let mut start = 0;
    for &p in rho.parts() {
        let len = 2 * p;
        for k in 0..len {
            images[start + k] = (start + (k + 1) % len) as u8;
        }
        start += len;
    }
    Permutation { images }
}
