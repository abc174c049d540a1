//! Attribute sets and contexts.
//!
//! Attributes are numbered from 0. In a universe of `n` attributes the target
//! is implicit and the potential parents are `0..n-1`.
//!
//! A context over a parent set `P` is identified by its index in
//! `0..2^|P|`. The smallest attribute of `P` is the most significant bit of
//! the index, so ascending indices coincide with the lexicographic order of the
//! printed bit strings (`"00"`, `"01"`, `"10"`, `"11"`), where character `i`
//! is the value of the `i`-th smallest parent.
//!
//! Full assignments are plain masks: bit `a` of a `u32` assignment is the
//! value of attribute `a`.

use alloc::string::String;
use core::fmt;

use crate::error::{Error, Result};

/// A set of parent attributes, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AttributeSet(u32);

impl AttributeSet {
    pub const fn empty() -> Self {
        AttributeSet(0)
    }

    /// All potential parents `0..n-1` of a universe with `n` attributes.
    pub fn full(n: usize) -> Self {
        let width = n.saturating_sub(1);
        if width >= 32 {
            AttributeSet(u32::MAX)
        } else {
            AttributeSet((1u32 << width) - 1)
        }
    }

    pub const fn from_bits(bits: u32) -> Self {
        AttributeSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(attr: usize) -> Self {
        assert!(attr < 32, "attribute index {attr} does not fit the mask");
        AttributeSet(1 << attr)
    }

    /// Builds a set from attribute indices, checking them against a universe of `n` attributes.
    pub fn try_from_indices<I: IntoIterator<Item = usize>>(indices: I, n: usize) -> Result<Self> {
        let mut set = AttributeSet::empty();
        for attr in indices {
            if attr + 1 >= n.max(1) || attr >= 31 {
                return Err(Error::AttributeOutOfRange { attr, n });
            }
            set.0 |= 1 << attr;
        }
        Ok(set)
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, attr: usize) -> bool {
        attr < 32 && self.0 & (1 << attr) != 0
    }

    pub fn with(self, attr: usize) -> Self {
        AttributeSet(self.0 | Self::singleton(attr).0)
    }

    pub fn without(self, attr: usize) -> Self {
        if attr >= 32 {
            return self;
        }
        AttributeSet(self.0 & !(1 << attr))
    }

    pub const fn union(self, other: Self) -> Self {
        AttributeSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        AttributeSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        AttributeSet(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Attributes in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Checks that every attribute is a potential parent in a universe of `n` attributes.
    pub fn check_universe(self, n: usize) -> Result<()> {
        match self.iter().max() {
            Some(attr) if attr + 1 >= n => Err(Error::AttributeOutOfRange { attr, n }),
            _ => Ok(()),
        }
    }

    /// Number of contexts, `2^|self|`.
    pub const fn context_count(self) -> u64 {
        1u64 << self.len()
    }

    /// Position of `attr` among the members in ascending order.
    pub fn rank(self, attr: usize) -> Option<usize> {
        if !self.contains(attr) {
            return None;
        }
        Some((self.0 & ((1u32 << attr) - 1)).count_ones() as usize)
    }

    /// Bit of a context index that carries the value of `attr`.
    pub fn index_bit(self, attr: usize) -> Option<usize> {
        self.rank(attr).map(|r| self.len() - 1 - r)
    }

    /// Context index of a full assignment restricted to this set.
    pub fn project(self, assignment: u32) -> u64 {
        self.iter()
            .fold(0u64, |idx, attr| (idx << 1) | u64::from((assignment >> attr) & 1))
    }

    /// Assignment mask (restricted to this set) of a context index.
    pub fn expand(self, index: u64) -> u32 {
        let k = self.len();
        self.iter().enumerate().fold(0u32, |mask, (r, attr)| {
            let bit = (index >> (k - 1 - r)) & 1;
            mask | ((bit as u32) << attr)
        })
    }

    /// Every subset of this set as a mask, in ascending numeric order of the mask.
    pub fn subsets(self) -> Subsets {
        Subsets { universe: self.0, next: Some(0) }
    }
}

impl fmt::Display for AttributeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, attr) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{attr}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for AttributeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(AttributeSet::empty(), AttributeSet::with)
    }
}

#[derive(Debug, Clone)]
pub struct Iter(u32);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let attr = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(attr)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Subsets of a mask, enumerated in increasing order.
#[derive(Debug, Clone)]
pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = AttributeSet;

    fn next(&mut self) -> Option<AttributeSet> {
        let current = self.next?;
        self.next = if current == self.universe {
            None
        } else {
            Some((current.wrapping_sub(self.universe)) & self.universe)
        };
        Some(AttributeSet(current))
    }
}

/// An instantiation of a parent set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    parents: AttributeSet,
    index: u64,
}

impl Context {
    /// The unique context of the empty parent set.
    pub const EMPTY: Context = Context { parents: AttributeSet::empty(), index: 0 };

    pub fn new(parents: AttributeSet, index: u64) -> Option<Self> {
        (index < parents.context_count()).then_some(Context { parents, index })
    }

    /// Restriction of a full assignment to `parents`.
    pub fn from_assignment(parents: AttributeSet, assignment: u32) -> Self {
        Context { parents, index: parents.project(assignment) }
    }

    /// Parses a bit string where character `i` is the value of the `i`-th smallest parent.
    pub fn parse(parents: AttributeSet, text: &str) -> Option<Self> {
        if text.len() != parents.len() {
            return None;
        }
        let mut index = 0u64;
        for c in text.bytes() {
            let bit = match c {
                b'0' => 0,
                b'1' => 1,
                _ => return None,
            };
            index = (index << 1) | bit;
        }
        Some(Context { parents, index })
    }

    pub fn parents(&self) -> AttributeSet {
        self.parents
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    /// Value assigned to `attr`, if it belongs to the parent set.
    pub fn value(&self, attr: usize) -> Option<bool> {
        self.parents.index_bit(attr).map(|bit| (self.index >> bit) & 1 == 1)
    }

    /// Values in ascending parent order.
    pub fn assignment(&self) -> impl Iterator<Item = bool> + '_ {
        let k = self.len();
        (0..k).map(move |r| (self.index >> (k - 1 - r)) & 1 == 1)
    }

    /// The context as an assignment mask over its own parents.
    pub fn mask(&self) -> u32 {
        self.parents.expand(self.index)
    }

    /// True when both contexts agree on every shared attribute.
    pub fn is_consistent_with(&self, other: &Context) -> bool {
        let shared = self.parents.intersection(other.parents).bits();
        self.mask() & shared == other.mask() & shared
    }

    pub fn to_bit_string(&self) -> String {
        self.assignment().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for b in self.assignment() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// All `2^|parents|` contexts of `parents` in ascending index order.
pub fn enumerate_contexts(parents: AttributeSet) -> impl Iterator<Item = Context> + Clone {
    (0..parents.context_count()).map(move |index| Context { parents, index })
}
