//! Aggregation of conditional preference tables (CPTs) under swap disagreement.
//!
//! A CPT for a fixed target attribute orders the two values of the target in
//! every context of its parent set. Aggregating a tuple of CPTs means finding
//! one CPT whose summed swap disagreement with the inputs is minimal. This crate
//! provides the model types, the disagreement metrics, exact and approximate
//! solvers, and generators for the instance families used to study them.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command-line front end live in the `cptagg` crate.

#![no_std]

extern crate alloc;

pub mod algorithms;
pub mod attrs;
pub mod cpt;
pub mod error;
pub mod generators;
pub mod metrics;

pub use algorithms::{
    algorithm1, exact_union_majority, exhaustive_optimum, optimal_for_parent_set,
    remove_irrelevant_parents, trivial_best_input, AlgorithmKind, Limits, SolveReport,
};
pub use attrs::{enumerate_contexts, AttributeSet, Context};
pub use cpt::{Cpt, Instance, Preference};
pub use error::{Error, Result};
pub use generators::{gen_copy_parent, gen_random, gen_symmetric_disjoint, gen_tkn, FamilySpec};
pub use metrics::{
    build_matrix, config_histogram, freq, is_symmetric, majority_lower_bound, objective,
    per_input_disagreements, swap_disagreement, ConfigHistogram, Freq, Selection, VoteMatrix,
};

/// Largest supported attribute count, target included.
///
/// Swap counts are `2^(n-1)` and totals are `t * 2^(n-1)`; both stay well
/// inside `u64` at this bound.
pub const MAX_ATTRIBUTES: usize = 30;
