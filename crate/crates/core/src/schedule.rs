//! Greedy factor ordering and the batched reduction driver.
//!
//! Factors are ordered so that variables closest to exhausting their
//! availability are multiplied in first; the ordered list is then cut into
//! batches, each ending when some variable's running count first reaches its
//! availability. Pruning happens inside every single multiplication, so the
//! batches only delimit reporting.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Result;
use crate::polycore::{BinomialTerm, CapVector, CappedPolynomial};

/// Factors in multiplication order with running per-variable counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedTermList {
    terms: Vec<BinomialTerm>,
    /// `appearance_counts[n][i]`: occurrences of variable `i` in `terms[..n]`.
    appearance_counts: Vec<Vec<u32>>,
}

impl OrderedTermList {
    /// Wraps `terms` in the given order.
    pub fn from_order(terms: Vec<BinomialTerm>, num_vars: usize) -> Self {
        let mut counts = vec![0u32; num_vars];
        let mut appearance_counts = Vec::with_capacity(terms.len() + 1);
        appearance_counts.push(counts.clone());
        for t in &terms {
            counts[t.a] += 1;
            counts[t.b] += 1;
            appearance_counts.push(counts.clone());
        }
        Self { terms, appearance_counts }
    }

    pub fn terms(&self) -> &[BinomialTerm] {
        &self.terms
    }

    pub fn appearance_counts(&self) -> &[Vec<u32>] {
        &self.appearance_counts
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Contiguous runs of an [`OrderedTermList`], as half-open index ranges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchPlan {
    pub batches: Vec<std::ops::Range<usize>>,
}

impl BatchPlan {
    pub fn len(&self) -> usize {
        self.batches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.batches.is_empty()
    }
}

/// Orders `terms` greedily: at each step pick the unselected factor whose
/// smaller residual `avail[v] - count[v]` over its two variables is least.
/// Ties go to the earliest input position.
pub fn greedy_order(terms: &[BinomialTerm], avail: &[u32]) -> OrderedTermList {
    let num_vars = avail.len();
    let mut counts = vec![0u32; num_vars];
    let mut remaining: Vec<BinomialTerm> = terms.to_vec();
    let mut ordered = Vec::with_capacity(terms.len());
    let residual = |v: usize, counts: &[u32]| avail[v] as i64 - counts[v] as i64;
    while !remaining.is_empty() {
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .map(|(i, t)| (i, residual(t.a, &counts).min(residual(t.b, &counts))))
            .min_by_key(|&(i, r)| (r, i))
            .expect("remaining is non-empty");
        // `remove` keeps the rest in input order, so position ties stay stable.
        let t = remaining.remove(pos);
        counts[t.a] += 1;
        counts[t.b] += 1;
        ordered.push(t);
    }
    OrderedTermList::from_order(ordered, num_vars)
}

/// Cuts `ordered` into batches. A batch ends at the first factor after which
/// some variable's cumulative count reaches its availability for the first
/// time; whatever is left forms the final batch.
pub fn batch_partition(ordered: &OrderedTermList, avail: &[u32]) -> BatchPlan {
    let mut batches = Vec::new();
    let mut start = 0;
    for n in 1..=ordered.len() {
        let t = ordered.terms[n - 1];
        let counts = &ordered.appearance_counts[n];
        let saturated = [t.a, t.b].iter().any(|&v| counts[v] == avail[v]);
        if saturated {
            batches.push(start..n);
            start = n;
        }
    }
    if start < ordered.len() || batches.is_empty() {
        batches.push(start..ordered.len());
    }
    BatchPlan { batches }
}

/// Which factor order [`reduce_product_with`] multiplies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    #[default]
    Greedy,
    Input,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchStats {
    pub first_term: usize,
    pub last_term: usize,
    pub monomials_before: usize,
    pub monomials_after: usize,
    pub peak_monomials: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStats {
    pub order: TermOrder,
    pub term_count: usize,
    pub peak_monomials: usize,
    pub batches: Vec<BatchStats>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Capped product of all `terms`, using the greedy order.
pub fn reduce_product(terms: &[BinomialTerm], caps: &CapVector) -> Result<CappedPolynomial> {
    reduce_product_with(terms, caps, TermOrder::Greedy).map(|(p, _)| p)
}

/// Capped product of all `terms` in the requested order, with per-batch
/// statistics. The result does not depend on the order.
pub fn reduce_product_with(
    terms: &[BinomialTerm],
    caps: &CapVector,
    order: TermOrder,
) -> Result<(CappedPolynomial, ReductionStats)> {
    let start = Instant::now();
    let num_vars = caps.len();
    for t in terms {
        t.check(num_vars)?;
    }
    let avail: Vec<u32> = caps.as_slice().iter().map(|&c| c as u32 + 1).collect();
    let ordered = match order {
        TermOrder::Greedy => greedy_order(terms, &avail),
        TermOrder::Input => OrderedTermList::from_order(terms.to_vec(), num_vars),
    };
    let plan = batch_partition(&ordered, &avail);
    let mut p = CappedPolynomial::one(num_vars, caps.clone())?;
    let mut stats = ReductionStats {
        order,
        term_count: terms.len(),
        peak_monomials: p.len(),
        batches: Vec::with_capacity(plan.len()),
        elapsed: Duration::ZERO,
    };
    for range in &plan.batches {
        let batch_start = Instant::now();
        let before = p.len();
        let mut peak = before;
        for t in &ordered.terms()[range.clone()] {
            if p.is_empty() {
                break;
            }
            p.multiply_binomial_in_place(*t)?;
            peak = peak.max(p.len());
        }
        stats.peak_monomials = stats.peak_monomials.max(peak);
        stats.batches.push(BatchStats {
            first_term: range.start,
            last_term: range.end,
            monomials_before: before,
            monomials_after: p.len(),
            peak_monomials: peak,
            elapsed: batch_start.elapsed(),
        });
    }
    stats.elapsed = start.elapsed();
    Ok((p, stats))
}
