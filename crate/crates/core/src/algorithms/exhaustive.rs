use super::{AlgorithmKind, Limits, SolveReport};
use crate::attrs::AttributeSet;
use crate::cpt::{Cpt, Instance};
use crate::error::{Error, Resource, Result};
use crate::metrics::objective;

/// Preference vectors are enumerated as `u64` values, so `2^|P|` must stay below 64.
const POOL_HARD_CAP: usize = 5;

/// Brute-force optimum over every complete CPT with parents inside `pool`.
///
/// Candidates are visited by parent-set size, then parent mask, then the
/// preference vector read as an integer (bit `i` is context `i`); the first
/// minimizer wins.
pub fn exhaustive_optimum(
    instance: &Instance,
    pool: AttributeSet,
    limits: &Limits,
) -> Result<SolveReport> {
    pool.check_universe(instance.n())?;
    let limit = limits.max_pool_bits.min(POOL_HARD_CAP);
    if pool.len() > limit {
        return Err(Error::ResourceExceeded {
            resource: Resource::ExhaustivePool,
            requested: pool.len() as u64,
            limit: limit as u64,
        });
    }
    let mut subsets: alloc::vec::Vec<AttributeSet> = pool.subsets().collect();
    subsets.sort_by_key(|s| (s.len(), s.bits()));

    let mut best: Option<(u64, Cpt)> = None;
    for parents in subsets {
        let rules = parents.context_count() as u32;
        for value in 0..(1u64 << rules) {
            let candidate =
                Cpt::from_votes(instance.n(), parents, (0..rules).map(|i| (value >> i) & 1 == 1))?;
            let score = objective(instance, &candidate)?;
            if best.as_ref().map_or(true, |(b, _)| score < *b) {
                best = Some((score, candidate));
            }
        }
    }
    let (_, output) = best.expect("the empty parent set is always enumerated");
    SolveReport::evaluate(AlgorithmKind::Exhaustive, instance, output, Some(pool))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpt::Preference;
    use crate::generators::gen_tkn;
    use alloc::vec;

    #[test]
    fn appendix_optimum() {
        let inst = gen_tkn(3, 2).unwrap();
        let report =
            exhaustive_optimum(&inst, AttributeSet::from_bits(0b11), &Limits::default()).unwrap();
        assert_eq!(report.objective, 4);
        assert!(report.output.is_separable());
    }

    #[test]
    fn single_separable_input() {
        let c = Cpt::separable(4, Preference::OneOverZero).unwrap();
        let inst = Instance::new(4, vec![c.clone()]).unwrap();
        let report = exhaustive_optimum(&inst, AttributeSet::empty(), &Limits::default()).unwrap();
        assert_eq!((report.objective, report.output), (0, c));
    }

    #[test]
    fn pool_guard() {
        let inst = Instance::new(7, vec![Cpt::separable(7, Preference::OneOverZero).unwrap()])
            .unwrap();
        let err = exhaustive_optimum(&inst, AttributeSet::from_bits(0b11111), &Limits::default())
            .unwrap_err();
        assert!(err.is_resource());
    }
}
