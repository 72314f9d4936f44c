//! The association scheme of perfect matchings of `K_{2n}`.
//!
//! Points are perfect matchings, relations are coset types (partitions of
//! `n`), and eigenspaces are indexed by partitions of `n` through the
//! zonal spherical functions of the Gelfand pair `(S_{2n}, B_n)`. On top of
//! the scheme this crate checks λ-factorisations both by definition and as
//! Delsarte designs, screens parameters by divisibility, builds the known
//! constructions and decides small existence questions by exact-cover search.
//!
//! All arithmetic is exact. The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod character;
pub mod constructions;
pub mod distribution;
pub mod error;
pub mod factorisation;
pub mod feasibility;
pub mod field;
pub mod idempotent;
pub mod linalg;
pub mod matching;
pub mod partition;
pub mod perm;
pub mod scalar;
pub mod search;
pub mod setpartition;
pub mod zonal;

pub use constructions::{agl11_factorisation, full_set, hyperoval_factorisation, round_robin};
pub use distribution::{dual_distribution, inner_distribution, Distribution};
pub use error::{Error, Result};
pub use factorisation::{
    check_by_definition, check_by_design, derive, expected_size, index_conversion, FactorisationReport, Verdict,
};
pub use feasibility::{feasibility_screen, Violation};
pub use idempotent::{idempotents, Idempotents};
pub use matching::{all_matchings, apply_perm, coset_distance, Matching, MatchingSet};
pub use partition::{dominates, partitions_of, Partition};
pub use perm::{coset_type_rep, hyperoctahedral_elements, Permutation};
pub use scalar::ExactScalar;
pub use search::{build_system, seed_from_derivation, solve, ConstraintSystem, SearchOptions, SearchOutcome, Status};
pub use zonal::{eigenvalue_matrices, krein_q_mumumu, sphere_sizes, zonal_table, ZonalTable};
