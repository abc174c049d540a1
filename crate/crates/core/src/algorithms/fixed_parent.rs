use alloc::vec;
use alloc::vec::Vec;

use bitvec::prelude::*;

use super::{AlgorithmKind, Limits, SolveReport};
use crate::attrs::AttributeSet;
use crate::cpt::{Bits, Cpt, Instance};
use crate::error::{Error, Resource, Result};

/// Per-input data for counting `0>1` swap votes under a context of `P`.
struct InputTally {
    /// Attributes of the input's parent set that also belong to `P`.
    shared: AttributeSet,
    /// Number of `0>1` rules per context of `shared`.
    zero_rules: Vec<u64>,
    /// `n - |Pa| - 1`: swaps ordered by one rule, as a power of two.
    rule_weight_log: usize,
    /// `|P \ Pa|`: contexts of `P` sharing one rule, as a power of two.
    split_log: usize,
}

impl InputTally {
    fn new(cpt: &Cpt, target_parents: AttributeSet) -> Self {
        let parents = cpt.parents();
        let shared = parents.intersection(target_parents);
        let mut zero_rules = vec![0u64; shared.context_count() as usize];
        for index in 0..parents.context_count() {
            if !cpt.vote(index) {
                zero_rules[shared.project(parents.expand(index)) as usize] += 1;
            }
        }
        InputTally {
            shared,
            zero_rules,
            rule_weight_log: cpt.n() - parents.len() - 1,
            split_log: target_parents.difference(parents).len(),
        }
    }

    /// Swaps consistent with the context `assignment` of `P` on which this input votes `0>1`.
    fn zero_votes(&self, assignment: u32) -> u64 {
        let rules = self.zero_rules[self.shared.project(assignment) as usize];
        let swaps = rules << self.rule_weight_log;
        debug_assert_eq!(swaps & ((1u64 << self.split_log) - 1), 0, "swap count must split evenly");
        swaps >> self.split_log
    }
}

/// Optimal CPT among all CPTs whose parents are contained in `parents`.
///
/// For every context of `parents` the rule is the majority over all swaps
/// consistent with it, counted from the input rules without building the vote
/// matrix. A tie yields `1>0`. Irrelevant parents are removed from the result.
pub fn optimal_for_parent_set(
    instance: &Instance,
    parents: AttributeSet,
    limits: &Limits,
) -> Result<SolveReport> {
    let n = instance.n();
    parents.check_universe(n)?;
    if parents.len() > limits.max_parent_bits {
        return Err(Error::ResourceExceeded {
            resource: Resource::ParentBits,
            requested: parents.len() as u64,
            limit: limits.max_parent_bits as u64,
        });
    }
    let tallies: Vec<InputTally> =
        instance.cpts().iter().map(|c| InputTally::new(c, parents)).collect();
    let votes_per_context = (instance.t() as u64) << (n - parents.len() - 1);

    let mut prefs: Bits = BitVec::with_capacity(parents.context_count() as usize);
    for gamma in 0..parents.context_count() {
        let assignment = parents.expand(gamma);
        let zero_votes: u64 = tallies.iter().map(|t| t.zero_votes(assignment)).sum();
        let one_votes = votes_per_context - zero_votes;
        prefs.push(zero_votes <= one_votes);
    }
    let raw = Cpt::new(n, parents, prefs)?;
    let output = remove_irrelevant_parents(&raw);
    SolveReport::evaluate(AlgorithmKind::FixedParent, instance, output, Some(parents))
}

fn is_irrelevant(cpt: &Cpt, attr: usize) -> bool {
    let Some(bit) = cpt.parents().index_bit(attr) else {
        return false;
    };
    let flip = 1u64 << bit;
    (0..cpt.parents().context_count())
        .filter(|i| i & flip == 0)
        .all(|i| cpt.vote(i) == cpt.vote(i | flip))
}

fn drop_parent(cpt: &Cpt, attr: usize) -> Cpt {
    let old = cpt.parents();
    let new = old.without(attr);
    let prefs: Bits = (0..new.context_count())
        .map(|index| cpt.vote(old.project(new.expand(index))))
        .collect();
    Cpt::new(cpt.n(), new, prefs).expect("dropping a parent keeps the CPT complete")
}

/// Removes parents whose value never changes the entailed preference.
///
/// Scans parents in ascending order and restarts after each removal, until no
/// parent can be removed. The result orders every swap like the input.
pub fn remove_irrelevant_parents(cpt: &Cpt) -> Cpt {
    let mut current = cpt.clone();
    while let Some(attr) = current.parents().iter().find(|&a| is_irrelevant(&current, a)) {
        current = drop_parent(&current, attr);
    }
    current
}
