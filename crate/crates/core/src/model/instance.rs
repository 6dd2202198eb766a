use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::goods::{GoodSet, MAX_GOODS};
use crate::model::valuation::Valuation;
use crate::scalar::Scalar;

/// Agents, goods and one valuation per agent.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<S> {
    m: usize,
    valuations: Vec<Valuation<S>>,
}

impl<S: Scalar> Instance<S> {
    /// Validates that there is at least one agent, that every valuation is
    /// over the same goods, and that each good is worth something to someone.
    pub fn new(valuations: Vec<Valuation<S>>) -> Result<Self> {
        let Some(first) = valuations.first() else {
            return Err(Error::InvalidInstance {
                path: "valuations".into(),
                reason: "at least one agent is required".into(),
            });
        };
        let m = first.goods();
        if m > MAX_GOODS {
            return Err(Error::TooManyGoods {
                m,
                limit: MAX_GOODS,
            });
        }
        for (i, v) in valuations.iter().enumerate() {
            if v.goods() != m {
                return Err(Error::InvalidInstance {
                    path: format!("valuations[{i}]"),
                    reason: format!("covers {} goods, expected {m}", v.goods()),
                });
            }
        }
        for good in 0..m {
            if valuations.iter().all(|v| v.good_value(good).is_zero()) {
                return Err(Error::InvalidInstance {
                    path: format!("goods[{}]", good + 1),
                    reason: format!("good {} has zero value to every agent", good + 1),
                });
            }
        }
        Ok(Instance { m, valuations })
    }

    /// Every agent shares the valuation `v`.
    pub fn identical(v: Valuation<S>, n: usize) -> Result<Self> {
        Self::new(vec![v; n])
    }

    /// One additive agent per row.
    pub fn additive(rows: Vec<Vec<S>>) -> Result<Self> {
        let valuations = rows
            .into_iter()
            .map(Valuation::additive)
            .collect::<Result<Vec<_>>>()?;
        Self::new(valuations)
    }

    pub fn agents(&self) -> usize {
        self.valuations.len()
    }

    pub fn goods(&self) -> usize {
        self.m
    }

    pub fn all_goods(&self) -> GoodSet {
        GoodSet::full(self.m)
    }

    pub fn valuation(&self, agent: usize) -> &Valuation<S> {
        &self.valuations[agent]
    }

    pub fn valuations(&self) -> &[Valuation<S>] {
        &self.valuations
    }

    /// `v_agent(set)`
    pub fn value(&self, agent: usize, set: GoodSet) -> S {
        self.valuations[agent].value(set)
    }

    pub fn all_additive(&self) -> bool {
        self.valuations.iter().all(|v| v.is_additive())
    }

    pub fn all_subadditive(&self) -> bool {
        self.valuations.iter().all(|v| v.class().subadditive)
    }
}

/// One bundle per agent; bundles are disjoint and cover every good.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Allocation {
    pub bundles: Vec<GoodSet>,
}

impl Allocation {
    /// Checks disjointness and coverage of `0..m`.
    pub fn new(bundles: Vec<GoodSet>, m: usize) -> Result<Self> {
        let alloc = Allocation { bundles };
        alloc.validate_goods(m)?;
        Ok(alloc)
    }

    /// Builds an allocation from per-agent 1-based label lists.
    pub fn from_labels<I>(bundles: I, m: usize) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: IntoIterator<Item = usize>,
    {
        let sets = bundles
            .into_iter()
            .map(|b| {
                let indices = b
                    .into_iter()
                    .map(|label| {
                        label
                            .checked_sub(1)
                            .ok_or(Error::GoodOutOfRange { good: 0, m })
                    })
                    .collect::<Result<Vec<_>>>()?;
                GoodSet::from_indices(indices, m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets, m)
    }

    /// Bundle owner for every good.
    pub fn from_assignment(owner: &[usize], n: usize) -> Self {
        let mut bundles = vec![GoodSet::EMPTY; n];
        for (good, &agent) in owner.iter().enumerate() {
            bundles[agent].insert(good);
        }
        Allocation { bundles }
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, agent: usize) -> GoodSet {
        self.bundles[agent]
    }

    /// `A_{-i}`: every good not held by `agent`.
    pub fn others(&self, agent: usize) -> GoodSet {
        self.bundles
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != agent)
            .fold(GoodSet::EMPTY, |acc, (_, b)| acc.union(*b))
    }

    /// Validates against an instance: one bundle per agent, a partition of M.
    pub fn validate<S: Scalar>(&self, inst: &Instance<S>) -> Result<()> {
        if self.bundles.len() != inst.agents() {
            return Err(Error::InvalidAllocation(format!(
                "{} bundles for {} agents",
                self.bundles.len(),
                inst.agents()
            )));
        }
        self.validate_goods(inst.goods())
    }

    fn validate_goods(&self, m: usize) -> Result<()> {
        let mut seen = GoodSet::EMPTY;
        let full = GoodSet::full(m);
        for (i, bundle) in self.bundles.iter().enumerate() {
            if let Some(good) = bundle.difference(full).first() {
                return Err(Error::InvalidAllocation(format!(
                    "bundle {} holds good {} but there are only {m} goods",
                    i + 1,
                    good + 1
                )));
            }
            if let Some(good) = bundle.intersection(seen).first() {
                return Err(Error::InvalidAllocation(format!(
                    "good {} is in more than one bundle",
                    good + 1
                )));
            }
            seen = seen.union(*bundle);
        }
        if let Some(good) = full.difference(seen).first() {
            return Err(Error::InvalidAllocation(format!(
                "good {} is not allocated",
                good + 1
            )));
        }
        Ok(())
    }
}
