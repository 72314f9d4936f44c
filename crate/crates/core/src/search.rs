//! Exact cover with multiplicity: choose matchings so that every set
//! partition of shape `2λ` is refined by exactly `c` chosen ones.
//!
//! Plain backtracking over column states with counter propagation. A row is
//! one antidesign, so a solution meets every antidesign in exactly `c`
//! members.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::factorisation::{check_by_definition, splits_at};
use crate::matching::{Matching, MatchingSet};
use crate::partition::{block_matching_count, refinement_count, Partition};
use crate::setpartition::{set_partitions_of_shape, SetPartition};
use crate::{all_matchings, factorisation::antidesign};

/// Largest `n` for which a full system is built.
pub const MAX_SEARCH_N: usize = 6;

/// Columns are all matchings, rows all set partitions of shape `2λ`.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    n: usize,
    lambda: Partition,
    c: u32,
    columns: Vec<Matching>,
    rows: Vec<SetPartition>,
    row_cols: Vec<Vec<u32>>,
    col_rows: Vec<Vec<u32>>,
}

/// Builds the incidence and checks both weight invariants.
pub fn build_system(n: usize, lambda: &Partition, c: u32) -> Result<ConstraintSystem> {
    if n == 0 || n > MAX_SEARCH_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            max: MAX_SEARCH_N,
        });
    }
    if lambda.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lambda.size(),
        });
    }
    if c == 0 {
        return Err(Error::Invalid("the index must be at least 1"));
    }
    let columns = all_matchings(n)?;
    let rows: Vec<SetPartition> = set_partitions_of_shape(2 * n, &lambda.doubled())?.collect();
    let mut row_cols = Vec::with_capacity(rows.len());
    let mut col_rows = alloc::vec![Vec::new(); columns.len()];
    for (r, part) in rows.iter().enumerate() {
        let mut cols: Vec<u32> = antidesign(part).iter().map(|m| m.rank() as u32).collect();
        cols.sort_unstable();
        for &j in &cols {
            col_rows[j as usize].push(r as u32);
        }
        row_cols.push(cols);
    }
    let row_weight = block_matching_count(lambda).to_usize().unwrap_or(usize::MAX);
    let col_weight = refinement_count(lambda).to_usize().unwrap_or(usize::MAX);
    if row_cols.iter().any(|r| r.len() != row_weight) || col_rows.iter().any(|c| c.len() != col_weight) {
        return Err(Error::Invalid("incidence weights disagree with the counting formulas"));
    }
    Ok(ConstraintSystem {
        n,
        lambda: lambda.clone(),
        c,
        columns,
        rows,
        row_cols,
        col_rows,
    })
}

impl ConstraintSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn index(&self) -> u32 {
        self.c
    }

    pub fn columns(&self) -> &[Matching] {
        &self.columns
    }

    pub fn rows(&self) -> &[SetPartition] {
        &self.rows
    }

    /// Columns refining row `r`, ascending.
    pub fn row(&self, r: usize) -> &[u32] {
        &self.row_cols[r]
    }

    /// Rows refined by column `j`, ascending.
    pub fn column(&self, j: usize) -> &[u32] {
        &self.col_rows[j]
    }

    pub fn column_of(&self, m: &Matching) -> Option<usize> {
        (m.n() == self.n).then(|| m.rank() as usize)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Require `m*` (column 0) in the solution.
    pub force_base: bool,
    /// Stop with [`Status::Aborted`] after this many branching nodes.
    pub node_limit: Option<u64>,
    /// Count every solution instead of stopping at the first.
    pub enumerate_all: bool,
    /// Columns fixed in (`true`) or out (`false`) before the search.
    pub pins: Vec<(usize, bool)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    Aborted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: Status,
    /// The first solution found.
    pub solution: Option<MatchingSet>,
    /// Number of solutions seen; all of them when enumerating to completion.
    pub solutions: u64,
    pub stats: SearchStats,
}

const UNKNOWN: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct State<'a> {
    sys: &'a ConstraintSystem,
    c: u32,
    col: Vec<u8>,
    sat: Vec<u32>,
    avail: Vec<u32>,
    trail: Vec<u32>,
    queue: Vec<(u32, u8)>,
    stats: SearchStats,
}

impl<'a> State<'a> {
    fn new(sys: &'a ConstraintSystem) -> Self {
        State {
            sys,
            c: sys.c,
            col: alloc::vec![UNKNOWN; sys.columns.len()],
            sat: alloc::vec![0; sys.rows.len()],
            avail: sys.row_cols.iter().map(|r| r.len() as u32).collect(),
            trail: Vec::new(),
            queue: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    // Applies one assignment to every row of the column; returns false on conflict.
    fn apply(&mut self, j: u32, v: u8) -> bool {
        let ju = j as usize;
        if self.col[ju] != UNKNOWN {
            return self.col[ju] == v;
        }
        self.col[ju] = v;
        self.trail.push(j);
        let mut ok = true;
        for &r in &self.sys.col_rows[ju] {
            let r = r as usize;
            self.avail[r] -= 1;
            if v == IN {
                self.sat[r] += 1;
                if self.sat[r] > self.c {
                    ok = false;
                } else if self.sat[r] == self.c && self.avail[r] > 0 {
                    self.queue_row(r, OUT);
                }
            } else if self.sat[r] + self.avail[r] < self.c {
                ok = false;
            } else if self.sat[r] + self.avail[r] == self.c && self.avail[r] > 0 {
                self.queue_row(r, IN);
            }
        }
        ok
    }

    fn queue_row(&mut self, r: usize, v: u8) {
        for &k in &self.sys.row_cols[r] {
            if self.col[k as usize] == UNKNOWN {
                self.queue.push((k, v));
            }
        }
    }

    fn assign(&mut self, j: u32, v: u8) -> bool {
        self.queue.clear();
        if !self.apply(j, v) {
            return false;
        }
        while let Some((k, w)) = self.queue.pop() {
            if self.col[k as usize] == UNKNOWN {
                self.stats.propagations += 1;
            }
            if !self.apply(k, w) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let j = self.trail.pop().expect("nonempty") as usize;
            let v = self.col[j];
            self.col[j] = UNKNOWN;
            for &r in &self.sys.col_rows[j] {
                let r = r as usize;
                self.avail[r] += 1;
                if v == IN {
                    self.sat[r] -= 1;
                }
            }
        }
    }

    // Unsatisfied row with least slack; first unknown column in it.
    fn branch_column(&self) -> Option<u32> {
        let mut best: Option<(u32, usize)> = None;
        for r in 0..self.sat.len() {
            if self.sat[r] >= self.c {
                continue;
            }
            let slack = self.avail[r] - (self.c - self.sat[r]);
            if best.is_none_or(|(s, _)| slack < s) {
                best = Some((slack, r));
                if slack == 0 {
                    break;
                }
            }
        }
        let (_, r) = best?;
        self.sys.row_cols[r]
            .iter()
            .copied()
            .find(|&k| self.col[k as usize] == UNKNOWN)
    }

    fn solution(&self) -> MatchingSet {
        let members = self
            .col
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == IN)
            .map(|(j, _)| self.sys.columns[j].clone())
            .collect();
        MatchingSet::new(self.sys.n, members).expect("columns are distinct")
    }
}

struct Frame {
    mark: usize,
    column: u32,
    included: bool,
}

/// Complete search. [`Status::Unsat`] is only returned after the whole
/// tree has been explored; hitting the node limit gives [`Status::Aborted`].
pub fn solve(sys: &ConstraintSystem, options: &SearchOptions) -> SearchOutcome {
    let mut st = State::new(sys);
    let mut outcome = SearchOutcome {
        status: Status::Unsat,
        solution: None,
        solutions: 0,
        stats: SearchStats::default(),
    };
    let mut root: Vec<(usize, bool)> = options.pins.clone();
    if options.force_base {
        root.push((0, true));
    }
    // a row with fewer than c columns can never be satisfied
    let mut conflict = st.avail.iter().any(|&a| a < st.c);
    for (j, v) in root {
        if conflict {
            break;
        }
        if j >= sys.columns.len() || !st.assign(j as u32, if v { IN } else { OUT }) {
            conflict = true;
            break;
        }
    }
    let mut stack: Vec<Frame> = Vec::new();
    loop {
        if conflict {
            // backtrack to the most recent include branch and flip it
            let mut resumed = false;
            while let Some(frame) = stack.pop() {
                st.undo_to(frame.mark);
                if frame.included {
                    stack.push(Frame {
                        included: false,
                        ..frame
                    });
                    conflict = !st.assign(frame.column, OUT);
                    resumed = true;
                    break;
                }
            }
            if !resumed {
                break;
            }
            continue;
        }
        match st.branch_column() {
            None => {
                let sol = st.solution();
                let report = check_by_definition(&sol, &sys.lambda).expect("nonempty solution");
                assert_eq!(report.index(), Some(sys.c as u64), "search returned a non-solution");
                outcome.solutions += 1;
                if outcome.solution.is_none() {
                    outcome.solution = Some(sol);
                }
                if !options.enumerate_all {
                    outcome.status = Status::Sat;
                    break;
                }
                conflict = true;
            }
            Some(j) => {
                if options.node_limit.is_some_and(|lim| st.stats.nodes >= lim) {
                    outcome.status = Status::Aborted;
                    outcome.stats = st.stats;
                    return outcome;
                }
                st.stats.nodes += 1;
                stack.push(Frame {
                    mark: st.trail.len(),
                    column: j,
                    included: true,
                });
                conflict = !st.assign(j, IN);
            }
        }
    }
    if outcome.solutions > 0 {
        outcome.status = Status::Sat;
    }
    outcome.stats = st.stats;
    outcome
}

/// Pins derived from requiring the derivation at `s` to be `d_sub`.
///
/// A column splitting at `S` is pinned out when its restriction to the
/// complement is not in `d_sub`; for `|S| = 2` the extension is unique, so
/// columns restricting into `d_sub` are pinned in. An empty `d_sub` pins
/// nothing.
pub fn seed_from_derivation(sys: &ConstraintSystem, d_sub: &[Matching], s: &[usize]) -> Result<Vec<(usize, bool)>> {
    if s.len() % 2 == 1 {
        return Err(Error::OddSubset(s.len()));
    }
    let k = s.len() / 2;
    if !sys.lambda.contains_part(k) {
        return Err(Error::NotAPart {
            part: k,
            lambda: sys.lambda.clone(),
        });
    }
    if d_sub.is_empty() {
        return Ok(Vec::new());
    }
    let rest = 2 * (sys.n - k);
    if let Some(m) = d_sub.iter().find(|m| m.points() != rest) {
        return Err(Error::GroundSetMismatch {
            expected: rest,
            found: m.points(),
        });
    }
    let mut inside = alloc::vec![false; 2 * sys.n];
    for &v in s {
        if v == 0 || v > 2 * sys.n || inside[v - 1] {
            return Err(Error::Invalid("seed: S must be distinct vertices in 1..2n"));
        }
        inside[v - 1] = true;
    }
    let mut wanted: Vec<&Matching> = d_sub.iter().collect();
    wanted.sort_unstable();
    let mut pins = Vec::new();
    for (j, m) in sys.columns.iter().enumerate() {
        if !splits_at(m, &inside) {
            continue;
        }
        let r = crate::factorisation::derive(core::slice::from_ref(m), s)?;
        let hit = wanted.binary_search(&&r[0]).is_ok();
        if !hit {
            pins.push((j, false));
        } else if k == 1 {
            pins.push((j, true));
        }
    }
    Ok(pins)
}
