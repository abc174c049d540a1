//! Swap disagreement, the aggregation objective and the vote matrix.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use bitvec::prelude::*;

use crate::attrs::{AttributeSet, Context};
use crate::cpt::{Bits, Cpt, Instance};
use crate::error::{Error, Resource, Result};

/// Default attribute bound for [`build_matrix`].
pub const DEFAULT_MAX_MATRIX_N: usize = 20;

/// Number of swaps the two CPTs order differently.
///
/// Works over the contexts of the union of both parent sets; every such
/// context stands for `2^(n-1-|union|)` swaps.
pub fn swap_disagreement(a: &Cpt, b: &Cpt) -> Result<u64> {
    if a.n() != b.n() {
        return Err(Error::UniverseMismatch { left: a.n(), right: b.n() });
    }
    let union = a.parents().union(b.parents());
    let differing = union
        .subsets()
        .filter(|m| a.vote_on(m.bits()) != b.vote_on(m.bits()))
        .count() as u64;
    Ok(differing << (a.n() - 1 - union.len()))
}

/// `Δ(candidate, N_s)` for every input, in input order.
pub fn per_input_disagreements(instance: &Instance, candidate: &Cpt) -> Result<Vec<u64>> {
    instance.cpts().iter().map(|c| swap_disagreement(candidate, c)).collect()
}

/// Summed swap disagreement of `candidate` with every input.
pub fn objective(instance: &Instance, candidate: &Cpt) -> Result<u64> {
    if candidate.n() != instance.n() {
        return Err(Error::UniverseMismatch { left: instance.n(), right: candidate.n() });
    }
    instance.cpts().iter().map(|c| swap_disagreement(candidate, c)).sum()
}

/// The explicit `2^(n-1) x t` vote matrix.
///
/// Row `μ` is the swap whose non-target attributes take the values of context
/// `μ` of the full attribute set; column `ν` holds the votes of input `ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteMatrix {
    n: usize,
    t: usize,
    rows: Vec<Bits>,
}

impl VoteMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn get(&self, row: usize, column: usize) -> bool {
        self.rows[row][column]
    }

    pub fn column(&self, column: usize) -> Bits {
        self.rows.iter().map(|r| r[column]).collect()
    }

    /// Attributes indexing the rows.
    pub fn attributes(&self) -> AttributeSet {
        AttributeSet::full(self.n)
    }

    /// Bit string naming row `row`, smallest attribute first.
    pub fn row_label(&self, row: usize) -> String {
        Context::new(self.attributes(), row as u64)
            .map(|c| c.to_bit_string())
            .unwrap_or_default()
    }

    /// Assignment mask of the swap at `row`.
    pub fn row_assignment(&self, row: usize) -> u32 {
        self.attributes().expand(row as u64)
    }
}

/// Materializes the vote matrix, refusing universes with more than `max_n` attributes.
pub fn build_matrix(instance: &Instance, max_n: usize) -> Result<VoteMatrix> {
    let n = instance.n();
    if n > max_n {
        return Err(Error::ResourceExceeded {
            resource: Resource::MatrixAttributes,
            requested: n as u64,
            limit: max_n as u64,
        });
    }
    let full = AttributeSet::full(n);
    let rows = (0..instance.swap_count())
        .map(|mu| {
            let assignment = full.expand(mu);
            instance.cpts().iter().map(|c| c.vote_on(assignment)).collect()
        })
        .collect();
    Ok(VoteMatrix { n, t: instance.t(), rows })
}

/// A sub-matrix: rows consistent with a fixed context, restricted to some columns.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Selection {
    pub fixed: Option<Context>,
    pub columns: Option<Vec<usize>>,
}

impl Selection {
    pub fn all() -> Self {
        Selection::default()
    }

    pub fn with_context(mut self, context: Context) -> Self {
        self.fixed = Some(context);
        self
    }

    pub fn with_columns(mut self, columns: Vec<usize>) -> Self {
        self.columns = Some(columns);
        self
    }
}

/// Vote counts over a selection: `zeros` for `0>1`, `ones` for `1>0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Freq {
    pub zeros: u64,
    pub ones: u64,
}

impl Freq {
    pub fn total(&self) -> u64 {
        self.zeros + self.ones
    }
}

pub fn freq(matrix: &VoteMatrix, selection: &Selection) -> Result<Freq> {
    if let Some(ctx) = &selection.fixed {
        ctx.parents().check_universe(matrix.n)?;
    }
    let columns: Vec<usize> = match &selection.columns {
        Some(cols) if cols.is_empty() => {
            return Err(Error::InvalidSelection("empty column subset".into()));
        }
        Some(cols) => {
            if let Some(&bad) = cols.iter().find(|&&c| c >= matrix.t) {
                return Err(Error::InvalidSelection(format!(
                    "column {bad} out of range for t = {}",
                    matrix.t
                )));
            }
            cols.clone()
        }
        None => (0..matrix.t).collect(),
    };
    let mut out = Freq::default();
    for (mu, row) in matrix.rows.iter().enumerate() {
        if let Some(ctx) = &selection.fixed {
            if ctx.parents().project(matrix.row_assignment(mu)) != ctx.index() {
                continue;
            }
        }
        let ones = columns.iter().filter(|&&c| row[c]).count() as u64;
        out.ones += ones;
        out.zeros += columns.len() as u64 - ones;
    }
    Ok(out)
}

/// Number of swaps per distinct voting configuration (row vector).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigHistogram {
    counts: BTreeMap<Bits, u64>,
}

impl ConfigHistogram {
    pub fn counts(&self) -> &BTreeMap<Bits, u64> {
        &self.counts
    }

    pub fn get(&self, config: &BitSlice<u64, Lsb0>) -> u64 {
        self.counts.get(&Bits::from_bitslice(config)).copied().unwrap_or(0)
    }

    /// Number of distinct configurations that occur.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The common count when every one of the `2^t` configurations occurs equally often.
    pub fn uniform_count(&self, t: usize) -> Option<u64> {
        if t >= 64 || self.counts.len() as u64 != 1u64 << t {
            return None;
        }
        let first = *self.counts.values().next()?;
        self.counts.values().all(|&c| c == first).then_some(first)
    }
}

pub fn config_histogram(matrix: &VoteMatrix) -> ConfigHistogram {
    let mut counts = BTreeMap::new();
    for row in &matrix.rows {
        *counts.entry(row.clone()).or_insert(0u64) += 1;
    }
    ConfigHistogram { counts }
}

/// Sum over rows of the minority vote count.
///
/// The per-row majority is realised by a CPT over all attributes, so this is
/// the optimum objective.
pub fn majority_lower_bound(matrix: &VoteMatrix) -> u64 {
    matrix
        .rows
        .iter()
        .map(|row| {
            let ones = row.count_ones() as u64;
            ones.min(matrix.t as u64 - ones)
        })
        .sum()
}

/// Whether every context of every proper subset of the parents is balanced.
///
/// Balance on every context of each `(|P|-1)`-subset implies balance on all
/// coarser subsets, and those cells have exactly two members, so the test
/// reduces to: flipping any single parent always flips the preference.
/// Separable CPTs are not symmetric.
pub fn is_symmetric(cpt: &Cpt) -> bool {
    let parents = cpt.parents();
    if parents.is_empty() {
        return false;
    }
    let k = parents.len();
    (0..k).all(|bit| {
        let flip = 1u64 << bit;
        (0..cpt.parents().context_count())
            .filter(|i| i & flip == 0)
            .all(|i| cpt.vote(i) != cpt.vote(i | flip))
    })
}
