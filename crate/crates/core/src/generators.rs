//! Instance families and seeded random instances.
//!
//! Random choices come from ChaCha8 (`rand_chacha`), seeded with
//! `SeedableRng::seed_from_u64(seed)`. Each CPT draws from its own stream:
//! CPT `s` (0-based) uses stream `s`, so adding CPTs never changes earlier ones.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::attrs::{enumerate_contexts, AttributeSet};
use crate::cpt::{Cpt, Instance, Preference};
use crate::error::{Error, Resource, Result};
use crate::MAX_ATTRIBUTES;

/// Upper bound on the total number of rules a generator will materialize.
pub const MAX_GENERATED_RULES: u128 = 1 << 26;

/// Parameters of one generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// One CPT per (k-subset, context) pair; see [`gen_tkn`].
    Tkn { n: usize, k: usize },
    /// Symmetric CPTs with pairwise disjoint single parents; see [`gen_symmetric_disjoint`].
    SymmetricDisjoint { n: usize, t: usize, seed: u64 },
    /// `n-1` CPTs copying one distinct parent each; see [`gen_copy_parent`].
    CopyParent { n: usize },
    /// Uniform random CPTs; see [`gen_random`].
    Random { n: usize, t: usize, max_parents: usize, seed: u64 },
}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Tkn { .. } => "tkn",
            FamilySpec::SymmetricDisjoint { .. } => "symmetric-disjoint",
            FamilySpec::CopyParent { .. } => "copy-parent",
            FamilySpec::Random { .. } => "random",
        }
    }

    pub fn generate(&self) -> Result<Instance> {
        match *self {
            FamilySpec::Tkn { n, k } => gen_tkn(n, k),
            FamilySpec::SymmetricDisjoint { n, t, seed } => gen_symmetric_disjoint(n, t, seed),
            FamilySpec::CopyParent { n } => gen_copy_parent(n),
            FamilySpec::Random { n, t, max_parents, seed } => gen_random(n, t, max_parents, seed),
        }
    }
}

fn invalid(msg: alloc::string::String) -> Error {
    Error::InvalidParameters(msg)
}

fn check_rule_budget(rules: u128) -> Result<()> {
    if rules > MAX_GENERATED_RULES {
        return Err(Error::ResourceExceeded {
            resource: Resource::GeneratedRules,
            requested: u64::try_from(rules).unwrap_or(u64::MAX),
            limit: MAX_GENERATED_RULES as u64,
        });
    }
    Ok(())
}

/// All `k`-element subsets of `0..width` in ascending mask order.
fn k_subsets(width: usize, k: usize) -> impl Iterator<Item = AttributeSet> {
    let limit = 1u64 << width;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = (k <= width).then_some(first);
    core::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            // Gosper's hack
            let low = current & current.wrapping_neg();
            let ripple = current + low;
            let succ = (((ripple ^ current) >> 2) / low) | ripple;
            (succ < limit).then_some(succ)
        };
        Some(AttributeSet::from_bits(current as u32))
    })
}

/// The family with one CPT per pair of a `k`-subset `P` of the parents and a
/// context `γ` of `P`; that CPT has `γ: 1>0` and `0>1` everywhere else.
///
/// CPTs are ordered by subset mask, then by context index.
pub fn gen_tkn(n: usize, k: usize) -> Result<Instance> {
    if !(3..=MAX_ATTRIBUTES).contains(&n) || !(2..n).contains(&k) {
        return Err(invalid(format!("tkn needs 3 <= n <= {MAX_ATTRIBUTES} and 2 <= k <= n-1, got n={n}, k={k}")));
    }
    let t = num_integer::binomial((n - 1) as u128, k as u128) << k;
    check_rule_budget(t << k)?;
    let mut cpts = Vec::with_capacity(t as usize);
    for parents in k_subsets(n - 1, k) {
        for gamma in enumerate_contexts(parents) {
            cpts.push(Cpt::from_fn(n, parents, |c| Preference::from_vote(c == gamma))?);
        }
    }
    Instance::new(n, cpts)
}

/// CPT with the single parent `attr` that copies it (`0: 0>1`, `1: 1>0`), or
/// negates it when `negate` is set.
pub fn copy_parent_cpt(n: usize, attr: usize, negate: bool) -> Result<Cpt> {
    Cpt::from_votes(n, AttributeSet::singleton(attr), [negate, !negate])
}

/// `t` symmetric CPTs where CPT `s` has the single parent `s`.
///
/// The seed picks, per CPT, whether it copies or negates its parent.
pub fn gen_symmetric_disjoint(n: usize, t: usize, seed: u64) -> Result<Instance> {
    if !(3..=MAX_ATTRIBUTES).contains(&n) || t < 3 || t > n - 1 {
        return Err(invalid(format!("symmetric-disjoint needs 3 <= t <= n-1, got n={n}, t={t}")));
    }
    let cpts = (0..t)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            copy_parent_cpt(n, s, rng.random::<bool>())
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(n, cpts)
}

/// `n-1` CPTs, CPT `s` copying attribute `s`.
///
/// Stand-in for the family whose optimum needs every attribute as a parent
/// while the input has only two rules per CPT.
pub fn gen_copy_parent(n: usize) -> Result<Instance> {
    if !(4..=MAX_ATTRIBUTES).contains(&n) {
        return Err(invalid(format!("copy-parent needs 4 <= n <= {MAX_ATTRIBUTES}, got n={n}")));
    }
    let cpts = (0..n - 1).map(|s| copy_parent_cpt(n, s, false)).collect::<Result<Vec<_>>>()?;
    Instance::new(n, cpts)
}

/// `t` random CPTs.
///
/// For each CPT the parent-set size is uniform in `0..=max_parents`, the set
/// itself is a uniform subset of that size, and every rule is a fair coin.
pub fn gen_random(n: usize, t: usize, max_parents: usize, seed: u64) -> Result<Instance> {
    if !(2..=MAX_ATTRIBUTES).contains(&n) || t == 0 || max_parents > n - 1 {
        return Err(invalid(format!(
            "random needs 2 <= n <= {MAX_ATTRIBUTES}, t >= 1 and max_parents <= n-1, got n={n}, t={t}, max_parents={max_parents}"
        )));
    }
    check_rule_budget((t as u128) << max_parents)?;
    let cpts = (0..t)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            let size = rng.random_range(0..=max_parents);
            let parents: AttributeSet =
                rand::seq::index::sample(&mut rng, n - 1, size).into_iter().collect();
            let rules = parents.context_count();
            Cpt::from_votes(n, parents, (0..rules).map(|_| rng.random::<bool>()))
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(n, cpts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{is_symmetric, objective};

    #[test]
    fn k_subset_order() {
        let masks: Vec<u32> = k_subsets(4, 2).map(|s| s.bits()).collect();
        assert_eq!(masks, [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(k_subsets(3, 3).count(), 1);
        assert_eq!(k_subsets(2, 3).count(), 0);
    }

    #[test]
    fn tkn_three_two_is_the_appendix_instance() {
        let inst = gen_tkn(3, 2).unwrap();
        assert_eq!(inst.t(), 4);
        for (s, cpt) in inst.cpts().iter().enumerate() {
            assert_eq!(cpt.parents(), AttributeSet::from_bits(0b11));
            let votes: Vec<bool> = cpt.prefs().iter().map(|b| *b).collect();
            let expected: Vec<bool> = (0..4).map(|i| i == s).collect();
            assert_eq!(votes, expected);
        }
    }

    #[test]
    fn tkn_counts() {
        let inst = gen_tkn(4, 3).unwrap();
        assert_eq!(inst.t(), 8);
        assert!(inst.cpts().iter().all(|c| c.parents() == AttributeSet::full(4)));
        assert_eq!(gen_tkn(5, 2).unwrap().t(), 24);
        for (n, k) in [(2, 2), (3, 1), (3, 3), (31, 2)] {
            assert!(matches!(gen_tkn(n, k), Err(Error::InvalidParameters(_))), "n={n} k={k}");
        }
    }

    #[test]
    fn symmetric_disjoint_members() {
        for seed in 0..8 {
            let inst = gen_symmetric_disjoint(4, 3, seed).unwrap();
            for (s, c) in inst.cpts().iter().enumerate() {
                assert!(is_symmetric(c));
                assert_eq!(c.parents(), AttributeSet::singleton(s));
                assert_eq!(objective(&inst, c), Ok(8));
            }
        }
        assert!(gen_symmetric_disjoint(4, 4, 0).is_err());
        assert!(gen_symmetric_disjoint(6, 2, 0).is_err());
    }

    #[test]
    fn seeds_change_polarity() {
        let distinct: Vec<_> = (0..16).map(|seed| gen_symmetric_disjoint(6, 5, seed).unwrap()).collect();
        assert!(distinct.iter().any(|i| i != &distinct[0]));
    }

    #[test]
    fn copy_parent_family() {
        let inst = gen_copy_parent(4).unwrap();
        assert_eq!(inst.t(), 3);
        assert_eq!(inst.rule_count(), 6);
        assert!(inst.cpts().iter().all(|c| c.rule_count() == 2));
        assert!(gen_copy_parent(3).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(gen_random(3, 2, 1, 42).unwrap(), gen_random(3, 2, 1, 42).unwrap());
        let inst = gen_random(6, 10, 3, 7).unwrap();
        assert!(inst.cpts().iter().all(|c| c.parents().len() <= 3));
        for bad in [(1, 1, 0), (4, 0, 1), (4, 2, 4)] {
            assert!(gen_random(bad.0, bad.1, bad.2, 0).is_err());
        }
    }

    #[test]
    fn random_prefix_is_stable_when_t_grows() {
        let short = gen_random(5, 3, 2, 11).unwrap();
        let long = gen_random(5, 6, 2, 11).unwrap();
        assert_eq!(short.cpts(), &long.cpts()[..3]);
    }

    #[test]
    fn rule_budget() {
        let err = gen_random(30, 4, 29, 0).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn family_spec_dispatch() {
        let spec = FamilySpec::Tkn { n: 3, k: 2 };
        assert_eq!(spec.family_name(), "tkn");
        assert_eq!(spec.generate().unwrap(), gen_tkn(3, 2).unwrap());
    }
}
