//! Perfect matchings of `K_{2n}`, the points of the scheme.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::partition::{odd_double_factorial_u64, partitions_of, Partition};
use crate::perm::Permutation;

/// Largest `n` for which [`all_matchings`] materialises the point set.
pub const MAX_ENUMERATION_N: usize = 8;

/// A perfect matching of `{1, ..., 2n}`.
///
/// Stored as the partner involution (0-indexed internally). The derived
/// ordering on partner arrays coincides with the enumeration order of
/// [`all_matchings`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<u8>,
}

impl Matching {
    /// From 1-based pairs. Pair and element order are irrelevant.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let points = 2 * pairs.len();
        if points > 254 {
            return Err(Error::OutOfRange {
                what: "matching points",
                value: points,
                max: 254,
            });
        }
        let mut partner = alloc::vec![u8::MAX; points];
        let mut seen = alloc::vec![false; points];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a > points || b > points {
                return Err(Error::Invalid("matching: pair outside 1..2n"));
            }
            if seen[a - 1] || seen[b - 1] {
                return Err(Error::Invalid("matching: vertex covered twice"));
            }
            seen[a - 1] = true;
            seen[b - 1] = true;
            partner[a - 1] = (b - 1) as u8;
            partner[b - 1] = (a - 1) as u8;
        }
        Ok(Matching { partner })
    }

    /// The base matching `m* = {{1,2},{3,4},...,{2n-1,2n}}`.
    pub fn base(n: usize) -> Self {
        Matching {
            partner: (0..2 * n as u8).map(|v| v ^ 1).collect(),
        }
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    /// Mate of the 1-based vertex `v`.
    pub fn partner(&self, v: usize) -> usize {
        self.partner[v - 1] as usize + 1
    }

    /// Canonical pairs `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p as usize)
            .map(|(i, &p)| (i + 1, p as usize + 1))
            .collect()
    }

    /// True iff every edge lies inside one block; `labels[v-1]` is the block of `v`.
    pub fn refines(&self, labels: &[usize]) -> bool {
        self.partner
            .iter()
            .enumerate()
            .all(|(i, &p)| labels[i] == labels[p as usize])
    }

    /// Position in the order of [`all_matchings`] (mixed radix, first choice most significant).
    pub fn rank(&self) -> u64 {
        let points = self.partner.len();
        let mut used = [false; 256];
        let mut rank = 0u64;
        let mut remaining = points;
        for v in 0..points {
            if used[v] {
                continue;
            }
            let mate = self.partner[v] as usize;
            // choice = number of free vertices above v that are smaller than mate
            let choice = (v + 1..mate).filter(|&x| !used[x]).count() as u64;
            used[v] = true;
            used[mate] = true;
            remaining -= 2;
            rank += choice * odd_double_factorial_u64(remaining / 2);
        }
        rank
    }

    /// Inverse of [`Matching::rank`].
    pub fn unrank(n: usize, mut rank: u64) -> Result<Self> {
        let total = odd_double_factorial_u64(n);
        if rank >= total {
            return Err(Error::OutOfRange {
                what: "matching rank",
                value: rank as usize,
                max: total.saturating_sub(1) as usize,
            });
        }
        let points = 2 * n;
        let mut partner = alloc::vec![0u8; points];
        let mut free: Vec<u8> = (0..points as u8).collect();
        while !free.is_empty() {
            let v = free.remove(0);
            let block = odd_double_factorial_u64((free.len() - 1) / 2);
            let choice = (rank / block) as usize;
            rank %= block;
            let mate = free.remove(choice);
            partner[v as usize] = mate;
            partner[mate as usize] = v;
        }
        Ok(Matching { partner })
    }
}

impl fmt::Display for Matching {
    /// Plain-text form: `"1-2 3-4 5-6"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for Matching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut pos = 0;
        for token in s.split(' ') {
            if !token.trim().is_empty() {
                let start = pos + (token.len() - token.trim_start().len());
                let t = token.trim();
                let (a, b) = t.split_once('-').ok_or(ParseError {
                    position: start,
                    message: "expected an edge written as a-b",
                })?;
                let a: usize = a.parse().map_err(|_| ParseError {
                    position: start,
                    message: "expected a vertex number",
                })?;
                let b: usize = b.parse().map_err(|_| ParseError {
                    position: start + t.find('-').unwrap_or(0) + 1,
                    message: "expected a vertex number",
                })?;
                pairs.push((a, b));
            }
            pos += token.len() + 1;
        }
        Matching::from_pairs(&pairs)
    }
}

/// All `(2n−1)!!` perfect matchings of `K_{2n}` in canonical order; index 0 is `m*`.
pub fn all_matchings(n: usize) -> Result<Vec<Matching>> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            max: MAX_ENUMERATION_N,
        });
    }
    let mut out = Vec::with_capacity(odd_double_factorial_u64(n) as usize);
    let mut partner = alloc::vec![u8::MAX; 2 * n];
    extend_matchings(&mut partner, &mut out);
    Ok(out)
}

fn extend_matchings(partner: &mut [u8], out: &mut Vec<Matching>) {
    let Some(v) = partner.iter().position(|&p| p == u8::MAX) else {
        out.push(Matching {
            partner: partner.to_vec(),
        });
        return;
    };
    for w in v + 1..partner.len() {
        if partner[w] != u8::MAX {
            continue;
        }
        partner[v] = w as u8;
        partner[w] = v as u8;
        extend_matchings(partner, out);
        partner[v] = u8::MAX;
        partner[w] = u8::MAX;
    }
}

/// Half-lengths of the cycles of `a ∪ b`, as a partition of `n`, written into
/// a caller-provided buffer; returns the number of parts.
pub(crate) fn coset_distance_raw(a: &[u8], b: &[u8], parts: &mut [u8; 128]) -> usize {
    let points = a.len();
    let mut seen = [false; 256];
    let mut len = 0;
    for start in 0..points {
        if seen[start] {
            continue;
        }
        let mut edges = 0usize;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = a[x] as usize;
            seen[y] = true;
            let z = b[y] as usize;
            edges += 2;
            if z == start {
                break;
            }
            x = z;
        }
        parts[len] = (edges / 2) as u8;
        len += 1;
    }
    parts[..len].sort_unstable_by(|x, y| y.cmp(x));
    len
}

/// Coset type of the pair: half the cycle lengths of the union `m1 ∪ m2`.
pub fn coset_distance(m1: &Matching, m2: &Matching) -> Result<Partition> {
    if m1.points() != m2.points() {
        return Err(Error::GroundSetMismatch {
            expected: m1.points(),
            found: m2.points(),
        });
    }
    let mut buf = [0u8; 128];
    let len = coset_distance_raw(&m1.partner, &m2.partner, &mut buf);
    Ok(Partition::new(buf[..len].iter().map(|&x| x as usize).collect()).expect("sorted positive parts"))
}

/// `σ(m) = {{σ(a), σ(b)}}`.
pub fn apply_perm(sigma: &Permutation, m: &Matching) -> Result<Matching> {
    if sigma.degree() != m.points() {
        return Err(Error::GroundSetMismatch {
            expected: m.points(),
            found: sigma.degree(),
        });
    }
    let img = sigma.raw();
    let mut partner = alloc::vec![0u8; m.points()];
    for (v, &w) in m.partner.iter().enumerate() {
        partner[img[v] as usize] = img[w as usize];
    }
    Ok(Matching { partner })
}

/// Maps relation labels (partitions of `n`) to their position in `partitions_of(n)`.
#[derive(Clone, Debug)]
pub struct RelationIndex {
    n: usize,
    partitions: Vec<Partition>,
    lookup: BTreeMap<Vec<u8>, usize>,
}

impl RelationIndex {
    pub fn new(n: usize) -> Self {
        let partitions = partitions_of(n);
        let lookup = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.parts().iter().map(|&x| x as u8).collect(), i))
            .collect();
        RelationIndex { n, partitions, lookup }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        let key: Vec<u8> = p.parts().iter().map(|&x| x as u8).collect();
        self.lookup.get(&key).copied()
    }

    /// Index of `coset_distance(a, b)`; both must have `n` edges.
    pub fn distance_index(&self, a: &Matching, b: &Matching) -> usize {
        let mut buf = [0u8; 128];
        let len = coset_distance_raw(&a.partner, &b.partner, &mut buf);
        self.lookup[&buf[..len]]
    }
}

/// A finite set of perfect matchings of `K_{2n}`, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchingSet {
    n: usize,
    members: Vec<Matching>,
}

impl MatchingSet {
    /// Sorts the members; rejects duplicates and mixed ground sets.
    pub fn new(n: usize, mut members: Vec<Matching>) -> Result<Self> {
        for m in &members {
            if m.n() != n {
                return Err(Error::GroundSetMismatch {
                    expected: 2 * n,
                    found: m.points(),
                });
            }
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMatching);
        }
        Ok(MatchingSet { n, members })
    }

    /// Like [`MatchingSet::new`] but silently drops repeated members.
    pub fn deduplicated(n: usize, mut members: Vec<Matching>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Matching] {
        &self.members
    }

    pub fn contains(&self, m: &Matching) -> bool {
        self.members.binary_search(m).is_ok()
    }

    pub fn into_members(self) -> Vec<Matching> {
        self.members
    }

    /// The set with `m` removed (no-op if absent).
    pub fn without(&self, m: &Matching) -> MatchingSet {
        MatchingSet {
            n: self.n,
            members: self.members.iter().filter(|x| *x != m).cloned().collect(),
        }
    }
}

impl core::ops::Deref for MatchingSet {
    type Target = [Matching];

    fn deref(&self) -> &[Matching] {
        &self.members
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn counts_and_first_element() {
        assert_eq!(all_matchings(3).unwrap().len(), 15);
        assert_eq!(all_matchings(5).unwrap().len(), 945);
        assert_eq!(all_matchings(4).unwrap()[0], Matching::base(4));
        assert!(all_matchings(0).is_err());
        assert!(all_matchings(9).is_err());
    }

    #[test]
    fn canonical_order_is_sorted_and_ranked() {
        let all = all_matchings(4).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, m) in all.iter().enumerate() {
            assert_eq!(m.rank(), i as u64);
            assert_eq!(&Matching::unrank(4, i as u64).unwrap(), m);
        }
        assert!(Matching::unrank(4, 105).is_err());
    }

    #[test]
    fn coset_type_of_a_pair() {
        let blue = Matching::from_pairs(&[(1, 2), (3, 6), (4, 8), (5, 7)]).unwrap();
        let red = Matching::from_pairs(&[(1, 2), (3, 8), (4, 5), (6, 7)]).unwrap();
        assert_eq!(coset_distance(&blue, &red).unwrap(), p(&[3, 1]));
    }

    #[test]
    fn self_distance_is_all_ones() {
        for m in all_matchings(3).unwrap() {
            assert_eq!(coset_distance(&m, &m).unwrap(), Partition::ones(3));
        }
    }

    #[test]
    fn text_form() {
        let m: Matching = "3-4 2-1  5-6".parse().unwrap();
        assert_eq!(m.to_string(), "1-2 3-4 5-6");
        assert_eq!(m, Matching::base(3));
        assert!("1-2 2-3".parse::<Matching>().is_err());
        let e = "1-2 3_4".parse::<Matching>().unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { position: 4, .. })));
    }

    #[test]
    fn perm_action() {
        let s = crate::perm::coset_type_rep(&p(&[2]));
        let img = apply_perm(&s, &Matching::base(2)).unwrap();
        assert_eq!(img.pairs(), vec![(1, 4), (2, 3)]);
        assert_eq!(coset_distance(&Matching::base(2), &img).unwrap(), p(&[2]));
        let id = Permutation::identity(6);
        let m: Matching = "1-4 2-6 3-5".parse().unwrap();
        assert_eq!(apply_perm(&id, &m).unwrap(), m);
    }

    #[test]
    fn set_rejects_duplicates() {
        let m = Matching::base(2);
        assert_eq!(
            MatchingSet::new(2, vec![m.clone(), m.clone()]),
            Err(Error::DuplicateMatching)
        );
        assert_eq!(MatchingSet::deduplicated(2, vec![m.clone(), m]).unwrap().len(), 1);
        assert!(MatchingSet::new(3, vec![Matching::base(2)]).is_err());
    }
}
