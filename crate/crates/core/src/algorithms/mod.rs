//! Aggregation algorithms.
//!
//! * [`trivial_best_input`]: the input CPT with the smallest objective.
//! * [`optimal_for_parent_set`]: the optimal CPT among those whose parents lie
//!   in a given set, by per-context majority over swap counts.
//! * [`algorithm1`]: the best of [`optimal_for_parent_set`] over every input
//!   parent set.
//! * [`exact_union_majority`]: [`optimal_for_parent_set`] on the union of all
//!   input parent sets, which is globally optimal.
//! * [`exhaustive_optimum`]: brute-force enumeration, used as a test oracle.

mod exhaustive;
mod fixed_parent;

use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::attrs::AttributeSet;
use crate::cpt::{Cpt, Instance};
use crate::error::Result;
use crate::metrics::{objective, per_input_disagreements, DEFAULT_MAX_MATRIX_N};

pub use exhaustive::exhaustive_optimum;
pub use fixed_parent::{optimal_for_parent_set, remove_irrelevant_parents};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Trivial,
    Algorithm1,
    FixedParent,
    ExactUnion,
    Exhaustive,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 5] = [
        AlgorithmKind::Trivial,
        AlgorithmKind::Algorithm1,
        AlgorithmKind::FixedParent,
        AlgorithmKind::ExactUnion,
        AlgorithmKind::Exhaustive,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            AlgorithmKind::Trivial => "trivial",
            AlgorithmKind::Algorithm1 => "alg1",
            AlgorithmKind::FixedParent => "fixed-parent",
            AlgorithmKind::ExactUnion => "exact-union",
            AlgorithmKind::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for AlgorithmKind {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        AlgorithmKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or(())
    }
}

/// Resource guards. Exceeding one is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest parent set for [`optimal_for_parent_set`] (and the union solver).
    pub max_parent_bits: usize,
    /// Largest candidate pool for [`exhaustive_optimum`].
    pub max_pool_bits: usize,
    /// Largest attribute count for a materialized vote matrix.
    pub max_matrix_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_parent_bits: 24, max_pool_bits: 4, max_matrix_n: DEFAULT_MAX_MATRIX_N }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub algorithm: AlgorithmKind,
    pub output: Cpt,
    pub objective: u64,
    pub per_input: Vec<u64>,
    pub chosen_parent_set: Option<AttributeSet>,
    /// Left at zero here; callers with a clock fill it in.
    pub wall_time: Duration,
}

impl SolveReport {
    pub(crate) fn evaluate(
        algorithm: AlgorithmKind,
        instance: &Instance,
        output: Cpt,
        chosen_parent_set: Option<AttributeSet>,
    ) -> Result<Self> {
        let per_input = per_input_disagreements(instance, &output)?;
        Ok(SolveReport {
            algorithm,
            objective: per_input.iter().sum(),
            output,
            per_input,
            chosen_parent_set,
            wall_time: Duration::ZERO,
        })
    }

    pub fn with_wall_time(mut self, wall_time: Duration) -> Self {
        self.wall_time = wall_time;
        self
    }
}

/// Returns the input CPT minimizing the objective; ties go to the lowest index.
pub fn trivial_best_input(instance: &Instance) -> Result<SolveReport> {
    let mut best: Option<(usize, u64)> = None;
    for (s, cpt) in instance.cpts().iter().enumerate() {
        let value = objective(instance, cpt)?;
        if best.map_or(true, |(_, b)| value < b) {
            best = Some((s, value));
        }
    }
    let (s, _) = best.expect("instances are non-empty");
    SolveReport::evaluate(AlgorithmKind::Trivial, instance, instance.cpts()[s].clone(), None)
}

/// Best CPT whose parents are contained in some input parent set.
///
/// Identical parent sets are solved once; ties go to the set of the lowest
/// input index.
pub fn algorithm1(instance: &Instance, limits: &Limits) -> Result<SolveReport> {
    let mut distinct: Vec<AttributeSet> = Vec::new();
    for cpt in instance.cpts() {
        if !distinct.contains(&cpt.parents()) {
            distinct.push(cpt.parents());
        }
    }
    let mut best: Option<SolveReport> = None;
    for parents in distinct {
        let candidate = optimal_for_parent_set(instance, parents, limits)?;
        if best.as_ref().map_or(true, |b| candidate.objective < b.objective) {
            best = Some(candidate);
        }
    }
    let mut report = best.expect("instances are non-empty");
    report.algorithm = AlgorithmKind::Algorithm1;
    Ok(report)
}

/// Per-context majority over the union of all input parent sets.
pub fn exact_union_majority(instance: &Instance, limits: &Limits) -> Result<SolveReport> {
    let mut report = optimal_for_parent_set(instance, instance.union_of_parents(), limits)?;
    report.algorithm = AlgorithmKind::ExactUnion;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attrs::AttributeSet;
    use crate::cpt::Preference;
    use crate::generators::{gen_copy_parent, gen_symmetric_disjoint, gen_tkn};
    use alloc::vec;

    #[test]
    fn appendix_instance() {
        let inst = gen_tkn(3, 2).unwrap();
        let limits = Limits::default();
        let trivial = trivial_best_input(&inst).unwrap();
        assert_eq!(trivial.objective, 6);
        assert_eq!(trivial.output, inst.cpts()[0]);
        assert_eq!(trivial.per_input, [0, 2, 2, 2]);
        let alg1 = algorithm1(&inst, &limits).unwrap();
        assert_eq!(alg1.objective, 4);
        assert_eq!(alg1.output, Cpt::separable(3, Preference::ZeroOverOne).unwrap());
        assert_eq!(alg1.chosen_parent_set, Some(AttributeSet::from_bits(0b11)));
        let exact = exact_union_majority(&inst, &limits).unwrap();
        assert_eq!(exact.objective, 4);
        assert_eq!(exact.algorithm, AlgorithmKind::ExactUnion);
    }

    #[test]
    fn identical_inputs_are_reproduced() {
        let c = Cpt::from_votes(4, AttributeSet::singleton(2), [true, false]).unwrap();
        let inst = Instance::new(4, vec![c.clone(); 3]).unwrap();
        let limits = Limits::default();
        let trivial = trivial_best_input(&inst).unwrap();
        assert_eq!((trivial.objective, &trivial.output), (0, &c));
        let alg1 = algorithm1(&inst, &limits).unwrap();
        assert_eq!((alg1.objective, &alg1.output), (0, &c));
    }

    #[test]
    fn symmetric_disjoint_inputs_are_all_equally_good() {
        let inst = gen_symmetric_disjoint(4, 3, 0).unwrap();
        let limits = Limits::default();
        assert_eq!(trivial_best_input(&inst).unwrap().objective, 8);
        assert_eq!(algorithm1(&inst, &limits).unwrap().objective, 8);
        assert_eq!(exact_union_majority(&inst, &limits).unwrap().objective, 6);
    }

    #[test]
    fn tkn_five_two() {
        let inst = gen_tkn(5, 2).unwrap();
        let report = algorithm1(&inst, &Limits::default()).unwrap();
        assert_eq!(report.objective, 96);
        assert!(report.output.is_separable());
    }

    #[test]
    fn copy_parent_optimum_uses_every_parent() {
        let inst = gen_copy_parent(4).unwrap();
        let report = exact_union_majority(&inst, &Limits::default()).unwrap();
        assert_eq!(report.objective, 6);
        assert_eq!(report.output.parents(), AttributeSet::full(4));
    }

    #[test]
    fn single_input_is_its_own_optimum() {
        let c = Cpt::from_votes(4, AttributeSet::from_bits(0b101), [true, false, false, true])
            .unwrap();
        let inst = Instance::new(4, vec![c.clone()]).unwrap();
        let report = exact_union_majority(&inst, &Limits::default()).unwrap();
        assert_eq!(report.objective, 0);
        assert_eq!(report.output, c);
    }

    #[test]
    fn algorithm_tags_round_trip() {
        for kind in AlgorithmKind::ALL {
            assert_eq!(kind.as_str().parse::<AlgorithmKind>(), Ok(kind));
        }
    }
}
