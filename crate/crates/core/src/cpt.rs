//! Complete CPTs for the target attribute and instance tuples.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use bitvec::prelude::*;

use crate::attrs::{enumerate_contexts, AttributeSet, Context};
use crate::error::{Error, Result};
use crate::MAX_ATTRIBUTES;

/// Bit vector type used for preference columns and vote rows.
pub type Bits = BitVec<u64, Lsb0>;

/// Ordering of the two target values entailed by one rule.
///
/// As a vote, `ZeroOverOne` is `0` and `OneOverZero` is `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preference {
    ZeroOverOne,
    OneOverZero,
}

impl Preference {
    pub const fn from_vote(vote: bool) -> Self {
        if vote {
            Preference::OneOverZero
        } else {
            Preference::ZeroOverOne
        }
    }

    pub const fn vote(self) -> bool {
        matches!(self, Preference::OneOverZero)
    }

    pub const fn flipped(self) -> Self {
        Preference::from_vote(!self.vote())
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Preference::ZeroOverOne => "0>1",
            Preference::OneOverZero => "1>0",
        }
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preference {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "0>1" => Ok(Preference::ZeroOverOne),
            "1>0" => Ok(Preference::OneOverZero),
            _ => Err(()),
        }
    }
}

pub(crate) fn check_attribute_count(n: usize) -> Result<()> {
    if (1..=MAX_ATTRIBUTES).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedAttributeCount(n))
    }
}

/// A complete conditional preference table for the target attribute.
///
/// `prefs[i]` is the vote of the rule for context index `i` of `parents`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cpt {
    n: usize,
    parents: AttributeSet,
    prefs: Bits,
}

impl Cpt {
    pub fn new(n: usize, parents: AttributeSet, prefs: Bits) -> Result<Self> {
        check_attribute_count(n)?;
        parents.check_universe(n)?;
        let expected = 1usize << parents.len();
        if prefs.len() != expected {
            return Err(Error::IncompleteCpt { expected, found: prefs.len() });
        }
        Ok(Cpt { n, parents, prefs })
    }

    pub fn from_votes<I: IntoIterator<Item = bool>>(
        n: usize,
        parents: AttributeSet,
        votes: I,
    ) -> Result<Self> {
        Cpt::new(n, parents, votes.into_iter().collect())
    }

    pub fn from_fn<F: FnMut(Context) -> Preference>(
        n: usize,
        parents: AttributeSet,
        mut rule: F,
    ) -> Result<Self> {
        check_attribute_count(n)?;
        parents.check_universe(n)?;
        Cpt::new(n, parents, enumerate_contexts(parents).map(|c| rule(c).vote()).collect())
    }

    /// The CPT with no parents and a single unconditional rule.
    pub fn separable(n: usize, pref: Preference) -> Result<Self> {
        Cpt::from_votes(n, AttributeSet::empty(), [pref.vote()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parents(&self) -> AttributeSet {
        self.parents
    }

    pub fn prefs(&self) -> &BitSlice<u64, Lsb0> {
        &self.prefs
    }

    pub fn rule_count(&self) -> usize {
        self.prefs.len()
    }

    pub fn is_separable(&self) -> bool {
        self.parents.is_empty()
    }

    /// Vote of the rule at context index `index`.
    pub fn vote(&self, index: u64) -> bool {
        self.prefs[index as usize]
    }

    pub fn preference(&self, context: &Context) -> Preference {
        debug_assert_eq!(context.parents(), self.parents);
        Preference::from_vote(self.vote(context.index()))
    }

    /// Vote on the swap whose remaining attributes take the values of `assignment`.
    pub fn vote_on(&self, assignment: u32) -> bool {
        self.vote(self.parents.project(assignment))
    }

    /// Rules in ascending context order.
    pub fn rules(&self) -> impl Iterator<Item = (Context, Preference)> + '_ {
        enumerate_contexts(self.parents).map(|c| (c, Preference::from_vote(self.vote(c.index()))))
    }

    /// Number of swaps ordered by a single rule, `2^(n-1-|parents|)`.
    pub fn swaps_per_rule(&self) -> u64 {
        1u64 << (self.n - 1 - self.parents.len())
    }
}

/// A tuple of CPTs for the same target over one attribute universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    n: usize,
    cpts: Vec<Cpt>,
}

impl Instance {
    pub fn new(n: usize, cpts: Vec<Cpt>) -> Result<Self> {
        check_attribute_count(n)?;
        if cpts.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if let Some(bad) = cpts.iter().find(|c| c.n != n) {
            return Err(Error::UniverseMismatch { left: n, right: bad.n });
        }
        Ok(Instance { n, cpts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of input CPTs.
    pub fn t(&self) -> usize {
        self.cpts.len()
    }

    pub fn cpts(&self) -> &[Cpt] {
        &self.cpts
    }

    pub fn into_cpts(self) -> Vec<Cpt> {
        self.cpts
    }

    pub fn rule_count(&self) -> usize {
        self.cpts.iter().map(Cpt::rule_count).sum()
    }

    /// Number of swaps of the target, `2^(n-1)`.
    pub fn swap_count(&self) -> u64 {
        1u64 << (self.n - 1)
    }

    pub fn union_of_parents(&self) -> AttributeSet {
        self.cpts.iter().fold(AttributeSet::empty(), |acc, c| acc.union(c.parents))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn completeness_is_enforced() {
        let parents = AttributeSet::singleton(0);
        let err = Cpt::from_votes(3, parents, [false]).unwrap_err();
        assert_eq!(err, Error::IncompleteCpt { expected: 2, found: 1 });
        assert!(Cpt::from_votes(3, parents, [false, true]).is_ok());
    }

    #[test]
    fn parents_must_exclude_the_target() {
        let err = Cpt::from_votes(3, AttributeSet::singleton(2), [false, true]).unwrap_err();
        assert_eq!(err, Error::AttributeOutOfRange { attr: 2, n: 3 });
    }

    #[test]
    fn attribute_count_cap() {
        assert!(Cpt::separable(30, Preference::ZeroOverOne).is_ok());
        assert_eq!(
            Cpt::separable(31, Preference::ZeroOverOne).unwrap_err(),
            Error::UnsupportedAttributeCount(31)
        );
    }

    #[test]
    fn instance_validation() {
        assert_eq!(Instance::new(3, vec![]).unwrap_err(), Error::EmptyInstance);
        let a = Cpt::separable(3, Preference::ZeroOverOne).unwrap();
        let b = Cpt::separable(4, Preference::ZeroOverOne).unwrap();
        assert_eq!(
            Instance::new(3, vec![a.clone(), b]).unwrap_err(),
            Error::UniverseMismatch { left: 3, right: 4 }
        );
        let inst = Instance::new(3, vec![a]).unwrap();
        assert_eq!(inst.t(), 1);
        assert_eq!(inst.swap_count(), 4);
    }

    #[test]
    fn vote_on_swap_restricts_to_parents() {
        // copy of attribute 1
        let c = Cpt::from_votes(4, AttributeSet::singleton(1), [false, true]).unwrap();
        assert!(!c.vote_on(0b101));
        assert!(c.vote_on(0b010));
        assert_eq!(c.swaps_per_rule(), 4);
    }

    #[test]
    fn preference_text() {
        assert_eq!("0>1".parse::<Preference>(), Ok(Preference::ZeroOverOne));
        assert_eq!("1>0".parse::<Preference>(), Ok(Preference::OneOverZero));
        assert!("1<0".parse::<Preference>().is_err());
        assert_eq!(Preference::OneOverZero.flipped(), Preference::ZeroOverOne);
    }
}
