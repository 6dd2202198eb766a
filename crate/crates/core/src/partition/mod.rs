//! Exact k-partition solvers and exhaustive allocation search.
//!
//! [`mms_value`], [`leximin_partition`] and [`minimax_partition`] are
//! branch-and-bound searches. [`oracle`] holds the unpruned enumeration they
//! are cross-checked against, and [`table`] computes the same quantities for
//! every subset at once by dynamic programming.

mod bnb;
pub mod oracle;
pub mod search;
pub mod table;

use std::cell::Cell;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{GoodSet, Instance, Valuation};
use crate::scalar::Scalar;

pub use search::{exhaustive_allocation_search, for_each_allocation, Requirement, SearchOutcome};
pub use table::{ShareTable, TableOracle};

/// Node limit for a single search. Exhausting it is an error, never an
/// approximate answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

    pub fn new(max_nodes: u64) -> Self {
        SearchBudget { max_nodes }
    }

    pub(crate) fn counter(self) -> NodeCounter {
        NodeCounter {
            used: Cell::new(0),
            max: self.max_nodes,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Self::DEFAULT_MAX_NODES)
    }
}

pub(crate) struct NodeCounter {
    used: Cell<u64>,
    max: u64,
}

impl NodeCounter {
    pub(crate) fn tick(&self) -> Result<()> {
        let used = self.used.get() + 1;
        self.used.set(used);
        if used > self.max {
            Err(Error::BudgetExhausted { max_nodes: self.max })
        } else {
            Ok(())
        }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.get()
    }
}

/// A k-partition of a good set, parts listed canonically: non-empty parts by
/// smallest good, then the empty parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct PartitionResult<S: Scalar> {
    pub parts: Vec<GoodSet>,
    /// Part values sorted non-decreasingly.
    #[serde(serialize_with = "crate::model::json::scalar_text::many")]
    pub value_vector: Vec<S>,
}

impl<S: Scalar> PartitionResult<S> {
    pub fn from_parts(v: &Valuation<S>, mut parts: Vec<GoodSet>) -> Self {
        sort_canonical(&mut parts);
        let mut value_vector: Vec<S> = parts.iter().map(|p| v.value(*p)).collect();
        value_vector.sort();
        PartitionResult {
            parts,
            value_vector,
        }
    }

    /// Smallest part value (0 for an empty partition list).
    pub fn min_value(&self) -> S {
        self.value_vector.first().cloned().unwrap_or_else(S::zero)
    }

    pub fn max_value(&self) -> S {
        self.value_vector.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn union(&self) -> GoodSet {
        self.parts.iter().fold(GoodSet::EMPTY, |acc, p| acc.union(*p))
    }

    /// True when the parts are disjoint, cover `goods` exactly, and the
    /// value vector matches `v`.
    pub fn is_consistent(&self, v: &Valuation<S>, goods: GoodSet) -> bool {
        let mut seen = GoodSet::EMPTY;
        for p in &self.parts {
            if !p.is_disjoint(seen) {
                return false;
            }
            seen = seen.union(*p);
        }
        let mut values: Vec<S> = self.parts.iter().map(|p| v.value(*p)).collect();
        values.sort();
        seen == goods && values == self.value_vector
    }

    /// Part label of every good of `goods` (ascending), under the canonical
    /// part order. This is the restricted-growth string used as leximin
    /// tie-break: smaller is preferred.
    pub fn canonical_labels(&self, goods: GoodSet) -> Vec<usize> {
        canonical_labels(&self.parts, goods)
    }
}

pub(crate) fn sort_canonical(parts: &mut [GoodSet]) {
    parts.sort_by_key(|p| p.first().unwrap_or(usize::MAX));
}

pub(crate) fn canonical_labels(parts: &[GoodSet], goods: GoodSet) -> Vec<usize> {
    let mut sorted = parts.to_vec();
    sort_canonical(&mut sorted);
    goods
        .iter()
        .map(|g| {
            sorted
                .iter()
                .position(|p| p.contains(g))
                .expect("good covered by partition")
        })
        .collect()
}

fn check_inputs<S: Scalar>(v: &Valuation<S>, goods: GoodSet, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroParts);
    }
    if let Some(good) = goods.difference(GoodSet::full(v.goods())).first() {
        return Err(Error::GoodOutOfRange { good, m: v.goods() });
    }
    Ok(())
}

/// Maximin share of `goods` split into `k` parts, with a maximizing partition.
pub fn mms_value<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    budget: SearchBudget,
) -> Result<(S, PartitionResult<S>)> {
    check_inputs(v, goods, k)?;
    let parts = bnb::maximin(v, goods, k, &budget.counter())?;
    let result = PartitionResult::from_parts(v, parts);
    Ok((result.min_value(), result))
}

/// The leximin k-partition: lexicographically largest sorted value vector.
/// Ties go to the partition with the smallest [`PartitionResult::canonical_labels`].
pub fn leximin_partition<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    budget: SearchBudget,
) -> Result<PartitionResult<S>> {
    check_inputs(v, goods, k)?;
    let counter = budget.counter();
    let best = bnb::leximin_vector(v, goods, k, &counter)?;
    let parts = bnb::first_with_vector(v, goods, k, &best, &counter)?;
    Ok(PartitionResult::from_parts(v, parts))
}

/// Smallest achievable largest part over k-partitions, with a witness.
pub fn minimax_partition<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    budget: SearchBudget,
) -> Result<(S, PartitionResult<S>)> {
    check_inputs(v, goods, k)?;
    let parts = bnb::minimax(v, goods, k, &budget.counter())?;
    let result = PartitionResult::from_parts(v, parts);
    Ok((result.max_value(), result))
}

/// Source of maximin and minimax partitions for the fairness checkers.
pub trait ShareOracle<S: Scalar> {
    fn maximin(
        &self,
        inst: &Instance<S>,
        agent: usize,
        goods: GoodSet,
        k: usize,
    ) -> Result<PartitionResult<S>>;

    fn minimax(
        &self,
        inst: &Instance<S>,
        agent: usize,
        goods: GoodSet,
        k: usize,
    ) -> Result<PartitionResult<S>>;
}

/// Answers oracle queries with the branch-and-bound solvers.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolverOracle {
    pub budget: SearchBudget,
}

impl SolverOracle {
    pub fn new(budget: SearchBudget) -> Self {
        SolverOracle { budget }
    }
}

impl<S: Scalar> ShareOracle<S> for SolverOracle {
    fn maximin(
        &self,
        inst: &Instance<S>,
        agent: usize,
        goods: GoodSet,
        k: usize,
    ) -> Result<PartitionResult<S>> {
        mms_value(inst.valuation(agent), goods, k, self.budget).map(|(_, p)| p)
    }

    fn minimax(
        &self,
        inst: &Instance<S>,
        agent: usize,
        goods: GoodSet,
        k: usize,
    ) -> Result<PartitionResult<S>> {
        minimax_partition(inst.valuation(agent), goods, k, self.budget).map(|(_, p)| p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ratio, Rational};

    fn table1() -> Valuation<Rational> {
        let mut values = vec![ratio(1, 1)];
        values.extend(std::iter::repeat(ratio(2, 5)).take(3));
        values.extend(std::iter::repeat(ratio(1, 10)).take(4));
        Valuation::additive(values).unwrap()
    }

    fn unit(m: usize) -> Valuation<Rational> {
        Valuation::additive(vec![ratio(1, 1); m]).unwrap()
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn mms_two_goods_high_low() {
        let v = Valuation::additive(vec![ratio(100, 1), ratio(1, 1)]).unwrap();
        let (value, witness) = mms_value(&v, GoodSet::full(2), 2, budget()).unwrap();
        assert_eq!(value, ratio(1, 1));
        assert!(witness.is_consistent(&v, GoodSet::full(2)));
    }

    #[test]
    fn mms_eight_goods_values() {
        let v = table1();
        assert_eq!(mms_value(&v, GoodSet::full(8), 4, budget()).unwrap().0, ratio(1, 2));
        let rest = GoodSet::from_labels([1, 2, 3, 4]);
        assert_eq!(mms_value(&v, rest, 3, budget()).unwrap().0, ratio(2, 5));
    }

    #[test]
    fn mms_binary_is_floor() {
        let v = Valuation::additive(
            [1, 0, 1, 1, 0, 1, 1, 1, 0, 1].iter().map(|&x| ratio(x, 1)).collect(),
        )
        .unwrap();
        let ones = 7;
        for k in 1..=5 {
            let (value, _) = mms_value(&v, GoodSet::full(10), k, budget()).unwrap();
            assert_eq!(value, ratio(ones / k as i64, 1), "k = {k}");
        }
    }

    #[test]
    fn k_one_and_k_exceeding_goods() {
        let v = table1();
        let s = GoodSet::from_labels([1, 5]);
        assert_eq!(mms_value(&v, s, 1, budget()).unwrap().0, ratio(11, 10));
        let (value, witness) = mms_value(&v, s, 3, budget()).unwrap();
        assert_eq!(value, ratio(0, 1));
        assert_eq!(witness.parts.len(), 3);
        assert!(witness.parts[2].is_empty());
    }

    #[test]
    fn zero_parts_rejected() {
        assert_eq!(
            mms_value(&unit(2), GoodSet::full(2), 0, budget()).unwrap_err(),
            Error::ZeroParts
        );
        assert_eq!(
            minimax_partition(&unit(2), GoodSet::from_labels([3]), 1, budget()).unwrap_err(),
            Error::GoodOutOfRange { good: 2, m: 2 }
        );
    }

    #[test]
    fn leximin_unit_three_into_two() {
        let p = leximin_partition(&unit(3), GoodSet::full(3), 2, budget()).unwrap();
        assert_eq!(p.value_vector, vec![ratio(1, 1), ratio(2, 1)]);
        // RGS tie-break: {1,2},{3} has labels [0,0,1].
        assert_eq!(p.parts, vec![GoodSet::from_labels([1, 2]), GoodSet::from_labels([3])]);
    }

    #[test]
    fn leximin_single_part() {
        let v = table1();
        let s = GoodSet::from_labels([2, 4, 6]);
        let p = leximin_partition(&v, s, 1, budget()).unwrap();
        assert_eq!(p.parts, vec![s]);
    }

    #[test]
    fn minimax_small_cases() {
        assert_eq!(minimax_partition(&unit(3), GoodSet::full(3), 2, budget()).unwrap().0, ratio(2, 1));
        let v = Valuation::additive(vec![ratio(100, 1), ratio(1, 1)]).unwrap();
        assert_eq!(minimax_partition(&v, GoodSet::full(2), 2, budget()).unwrap().0, ratio(100, 1));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let v = table1();
        let err = leximin_partition(&v, GoodSet::full(8), 4, SearchBudget::new(3)).unwrap_err();
        assert_eq!(err, Error::BudgetExhausted { max_nodes: 3 });
    }

    #[test]
    fn integer_scalars_work() {
        let v = Valuation::additive(vec![3i64, 3, 3, 1, 1, 1, 1]).unwrap();
        let p = leximin_partition(&v, GoodSet::full(7), 4, budget()).unwrap();
        assert_eq!(p.value_vector, vec![3, 3, 3, 4]);
    }
}
