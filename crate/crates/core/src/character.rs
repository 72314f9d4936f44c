//! Irreducible characters of the symmetric group.
//!
//! Values come from the Murnaghan–Nakayama rule on beta-sets: removing a
//! border strip of length `r` is moving one bead from `β` to `β − r`, with
//! sign `(−1)^{beads strictly between}`. Degrees use the hook-length formula.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::partition::{dominates, factorial, partitions_of, Partition};

/// Memoised character values `χ^λ(ρ)`, keyed on `(λ, ρ)`.
///
/// Filled on demand through `&mut self`; share it read-only once built.
#[derive(Default, Clone, Debug)]
pub struct CharacterTable {
    memo: BTreeMap<(Partition, Partition), i64>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^λ(ρ)` for `λ, ρ ⊢ m`.
    pub fn value(&mut self, lambda: &Partition, rho: &Partition) -> Result<i64> {
        if lambda.size() != rho.size() {
            return Err(Error::SizeMismatch {
                expected: lambda.size(),
                found: rho.size(),
            });
        }
        Ok(self.eval(lambda, rho.parts()))
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    fn eval(&mut self, lambda: &Partition, rho: &[usize]) -> i64 {
        if rho.is_empty() {
            return 1;
        }
        if lambda.len() <= 1 {
            return 1;
        }
        let key = (lambda.clone(), Partition::from_unsorted(rho.to_vec()));
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = rho[0];
        let rest = &rho[1..];
        let mut total = 0i64;
        for (sign, smaller) in remove_border_strips(lambda, r) {
            total += sign * self.eval(&smaller, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// All partitions obtained from `lambda` by removing a border strip of
/// length `r`, each with its sign `(−1)^{height}`.
fn remove_border_strips(lambda: &Partition, r: usize) -> Vec<(i64, Partition)> {
    let l = lambda.len();
    // beta_i = lambda_i + (l - 1 - i), strictly decreasing.
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i))
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (l - 1 - i)).collect();
        out.push((sign, Partition::from_unsorted(parts)));
    }
    out
}

/// `χ^λ(ρ)` with a fresh memo table.
pub fn character_value(lambda: &Partition, rho: &Partition) -> Result<i64> {
    CharacterTable::new().value(lambda, rho)
}

/// `χ^λ(1) = m! / ∏ hook lengths`.
pub fn character_degree(lambda: &Partition) -> BigUint {
    let parts = lambda.parts();
    let mut hooks = BigUint::from(1u32);
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&p| p > j).count();
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(lambda.size()) / hooks
}

/// `{μ ⊢ m : λ ⊴ μ}`, the constituents of the permutation character on the
/// cosets of the Young subgroup `S_λ`, in canonical partition order.
pub fn young_rule_constituents(lambda: &Partition) -> Vec<Partition> {
    partitions_of(lambda.size())
        .into_iter()
        .filter(|mu| dominates(mu, lambda).unwrap_or(false))
        .collect()
}
