//! Valencies, zonal spherical functions and the eigenvalue matrices.
//!
//! `ω^μ(σ) = |B_n|⁻¹ Σ_b χ^{2μ}(σb)`. For each relation `ρ` we walk `B_n`
//! once, tallying the cycle types of `σ_ρ b`; every `μ` then reuses the
//! tally, so only `p(2n)·p(n)` character values are ever needed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::character::{character_degree, CharacterTable};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::matching::{all_matchings, Matching, RelationIndex};
use crate::partition::{odd_double_factorial, partitions_of, z_number, Partition};
use crate::perm::{coset_type_rep, hyperoctahedral_elements, hyperoctahedral_order};
use crate::scalar::{from_uint, ExactScalar};

/// Largest `n` accepted by [`zonal_table`].
pub const MAX_ZONAL_N: usize = 7;

/// `k_ρ = 2^n n! / z_{2ρ}` for every `ρ ⊢ n`, in canonical order.
pub fn valencies(n: usize) -> Vec<(Partition, BigUint)> {
    let order = BigUint::from(hyperoctahedral_order(n));
    partitions_of(n)
        .into_iter()
        .map(|rho| {
            let k = &order / z_number(&rho.doubled());
            (rho, k)
        })
        .collect()
}

/// Sphere sizes `|{m : coset_distance(m*, m) = ρ}|`, counted over all
/// matchings and checked against the closed form.
pub fn sphere_sizes(n: usize) -> Result<Vec<(Partition, BigUint)>> {
    let points = all_matchings(n)?;
    let index = RelationIndex::new(n);
    let base = Matching::base(n);
    let mut counts = alloc::vec![0u64; index.partitions().len()];
    for m in &points {
        counts[index.distance_index(&base, m)] += 1;
    }
    let formula = valencies(n);
    for ((_, k), &c) in formula.iter().zip(&counts) {
        if *k != BigUint::from(c) {
            return Err(Error::Invalid("sphere size disagrees with 2^n n!/z_2ρ"));
        }
    }
    Ok(formula)
}

/// Cycle types of `σ_ρ b` over all `b ∈ B_n`, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTally {
    pub rho: Partition,
    pub counts: Vec<(Partition, u64)>,
}

/// One pass over `B_n` for the relation `ρ`.
pub fn coset_class_tally(rho: &Partition) -> CosetTally {
    let n = rho.size();
    let sigma = coset_type_rep(rho);
    let s = sigma.raw();
    let mut composite = alloc::vec![0u8; 2 * n];
    let mut tally: BTreeMap<[u8; 16], u64> = BTreeMap::new();
    hyperoctahedral_elements(n).for_each_raw(|b| {
        for (c, &x) in composite.iter_mut().zip(b) {
            *c = s[x as usize];
        }
        *tally.entry(cycle_key(&composite)).or_insert(0) += 1;
    });
    let counts = tally
        .into_iter()
        .map(|(key, c)| {
            let parts: Vec<usize> = key.iter().take_while(|&&x| x > 0).map(|&x| x as usize).collect();
            (Partition::from_unsorted(parts), c)
        })
        .collect();
    CosetTally {
        rho: rho.clone(),
        counts,
    }
}

// Sorted cycle lengths, zero-padded. Needs at most 16 points.
fn cycle_key(images: &[u8]) -> [u8; 16] {
    let mut seen = 0u32;
    let mut key = [0u8; 16];
    let mut len = 0;
    for start in 0..images.len() {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut l = 0u8;
        let mut x = start;
        while seen >> x & 1 == 0 {
            seen |= 1 << x;
            l += 1;
            x = images[x] as usize;
        }
        key[len] = l;
        len += 1;
    }
    key[..len].sort_unstable_by(|a, b| b.cmp(a));
    key
}

/// Exact table of `ω^μ_ρ` with valencies `k_ρ` and degrees `χ^{2μ}(1)`.
///
/// Rows and columns both follow `partitions_of(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonalTable {
    n: usize,
    partitions: Vec<Partition>,
    omega: Vec<ExactScalar>,
    valency: Vec<BigUint>,
    degree: Vec<BigUint>,
}

/// Builds the table single-threaded.
pub fn zonal_table(n: usize) -> Result<ZonalTable> {
    check_n(n)?;
    let tallies = partitions_of(n).iter().map(coset_class_tally).collect();
    ZonalTable::from_tallies(n, tallies)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ZONAL_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            max: MAX_ZONAL_N,
        });
    }
    Ok(())
}

impl ZonalTable {
    /// Assembles the table from one tally per relation, in any order.
    pub fn from_tallies(n: usize, tallies: Vec<CosetTally>) -> Result<Self> {
        check_n(n)?;
        let partitions = partitions_of(n);
        let r = partitions.len();
        let mut by_rho: Vec<Option<CosetTally>> = alloc::vec![None; r];
        for t in tallies {
            let pos = partitions.iter().position(|p| *p == t.rho).ok_or(Error::SizeMismatch {
                expected: n,
                found: t.rho.size(),
            })?;
            by_rho[pos] = Some(t);
        }
        let order = hyperoctahedral_order(n);
        let mut chars = CharacterTable::new();
        let mut omega = Vec::with_capacity(r * r);
        let doubled: Vec<Partition> = partitions.iter().map(Partition::doubled).collect();
        for mu2 in &doubled {
            for t in &by_rho {
                let t = t.as_ref().ok_or(Error::Invalid("missing tally for a relation"))?;
                let mut sum = BigInt::zero();
                let mut total = 0u64;
                for (ty, c) in &t.counts {
                    sum += BigInt::from(chars.value(mu2, ty)?) * BigInt::from(*c);
                    total += c;
                }
                if total != order {
                    return Err(Error::Invalid("tally does not cover B_n"));
                }
                omega.push(ExactScalar::new(sum, BigInt::from(order)));
            }
        }
        Ok(ZonalTable {
            n,
            valency: valencies(n).into_iter().map(|(_, k)| k).collect(),
            degree: doubled.iter().map(character_degree).collect(),
            partitions,
            omega,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The common row/column labels.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Number of classes, `p(n)`.
    pub fn classes(&self) -> usize {
        self.partitions.len()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    /// `ω^μ_ρ` by index.
    pub fn omega(&self, mu: usize, rho: usize) -> &ExactScalar {
        &self.omega[mu * self.classes() + rho]
    }

    /// `ω^μ_ρ` by label.
    pub fn omega_at(&self, mu: &Partition, rho: &Partition) -> Result<&ExactScalar> {
        let i = self.position(mu).ok_or(Error::SizeMismatch {
            expected: self.n,
            found: mu.size(),
        })?;
        let j = self.position(rho).ok_or(Error::SizeMismatch {
            expected: self.n,
            found: rho.size(),
        })?;
        Ok(self.omega(i, j))
    }

    pub fn valency(&self, rho: usize) -> &BigUint {
        &self.valency[rho]
    }

    pub fn degree(&self, mu: usize) -> &BigUint {
        &self.degree[mu]
    }

    /// `|X| = (2n−1)!!`.
    pub fn points(&self) -> BigUint {
        odd_double_factorial(self.n)
    }

    /// Names of the defining identities that fail; empty when all hold.
    pub fn invariant_failures(&self) -> Vec<&'static str> {
        let r = self.classes();
        let x = from_uint(&self.points());
        let mut failures = Vec::new();
        if (0..r).any(|j| !self.omega(0, j).is_one()) {
            failures.push("trivial zonal function is not 1");
        }
        let last = r - 1;
        if (0..r).any(|j| *self.omega(last, j) != crate::scalar::neg_half_pow(self.n - self.partitions[j].len())) {
            failures.push("alternating zonal function is not (-1/2)^(n-l)");
        }
        let ksum: BigUint = self.valency.iter().sum();
        if ksum != self.points() {
            failures.push("valencies do not sum to (2n-1)!!");
        }
        'outer: for a in 0..r {
            for b in a..r {
                let mut s = ExactScalar::zero();
                for j in 0..r {
                    s += from_uint(&self.valency[j]) * self.omega(a, j) * self.omega(b, j);
                }
                s /= &x;
                let want = if a == b {
                    ExactScalar::one() / from_uint(&self.degree[a])
                } else {
                    ExactScalar::zero()
                };
                if s != want {
                    failures.push("orthogonality");
                    break 'outer;
                }
            }
        }
        let (p, q) = eigenvalue_matrices(self);
        if &p * &q != RatMatrix::identity(r).scale(&x) {
            failures.push("PQ != |X| I");
        }
        failures
    }
}

/// `(P, Q)` with `P[μ][ρ] = k_ρ ω^μ_ρ` and `Q[ρ][μ] = χ^{2μ}(1) ω^μ_ρ`.
///
/// `Q` is stored with relations as rows so that `P·Q = |X|·I` holds as a
/// plain matrix product.
pub fn eigenvalue_matrices(table: &ZonalTable) -> (RatMatrix, RatMatrix) {
    let r = table.classes();
    let p = RatMatrix::from_fn(r, r, |mu, rho| from_uint(table.valency(rho)) * table.omega(mu, rho));
    let q = RatMatrix::from_fn(r, r, |rho, mu| from_uint(table.degree(mu)) * table.omega(mu, rho));
    (p, q)
}

/// `Σ_ρ k_ρ (ω^{(1^n)}_ρ)³`, a positive multiple of the Krein parameter
/// `q^μ_{μμ}` for `μ = (1^n)`.
pub fn krein_q_mumumu(table: &ZonalTable) -> ExactScalar {
    let mu = table.classes() - 1;
    let mut s = ExactScalar::zero();
    for rho in 0..table.classes() {
        let w = table.omega(mu, rho);
        s += from_uint(table.valency(rho)) * w * w * w;
    }
    s
}
