//! Matching rounds with envy-cycle elimination.
//!
//! Each round matches unenvied agents to unallocated goods by maximum
//! marginal weight, then rotates bundles along envy cycles until some agent
//! is unenvied again. At least one good is allocated per round.

use serde::Serialize;

use super::envy::{build_envy_graph, Rotation};
use super::matching::max_weight_matching;
use crate::fairness::Notion;
use crate::model::json::one_based;
use crate::model::{Allocation, GoodSet, Instance};
use crate::scalar::Scalar;

/// What the output guarantees, by how many agents hold more than one good.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuaranteeClass {
    /// Additive, at least two agents hold more than one good.
    MmaHalf,
    /// Additive, exactly one agent holds more than one good.
    MmaxHalf,
    /// Additive, every bundle has at most one good.
    MmaxExact,
    /// Non-additive, at least two agents hold more than one good.
    EfHalf,
    /// Non-additive, exactly one agent holds more than one good.
    EfxHalf,
    /// Non-additive, every bundle has at most one good.
    EfxExact,
}

impl GuaranteeClass {
    pub fn classify(additive: bool, large_bundles: usize) -> Self {
        match (additive, large_bundles) {
            (true, 0) => GuaranteeClass::MmaxExact,
            (true, 1) => GuaranteeClass::MmaxHalf,
            (true, _) => GuaranteeClass::MmaHalf,
            (false, 0) => GuaranteeClass::EfxExact,
            (false, 1) => GuaranteeClass::EfxHalf,
            (false, _) => GuaranteeClass::EfHalf,
        }
    }

    /// The notion and factor the class promises to every agent.
    pub fn target<S: Scalar>(self) -> (Notion, S) {
        let half = || S::one() / (S::one() + S::one());
        match self {
            GuaranteeClass::MmaHalf => (Notion::Mma, half()),
            GuaranteeClass::MmaxHalf => (Notion::Mmax, half()),
            GuaranteeClass::MmaxExact => (Notion::Mmax, S::one()),
            GuaranteeClass::EfHalf => (Notion::Ef, half()),
            GuaranteeClass::EfxHalf => (Notion::Efx, half()),
            GuaranteeClass::EfxExact => (Notion::Efx, S::one()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct MatchingRound<S: Scalar> {
    /// 1-based round number.
    pub round: usize,
    /// Unenvied agents at the start of the round.
    #[serde(rename = "L", serialize_with = "one_based::many")]
    pub unenvied: Vec<usize>,
    /// Unallocated goods at the start of the round.
    #[serde(rename = "R", serialize_with = "one_based::many")]
    pub remaining: Vec<usize>,
    /// `weights[a][g]`: marginal value of `remaining[g]` to `unenvied[a]`.
    #[serde(serialize_with = "weights_text")]
    pub weights: Vec<Vec<S>>,
    /// All weights were zero, so a maximum-cardinality matching was used.
    pub cardinality_fallback: bool,
    /// `(agent, good)` pairs.
    #[serde(serialize_with = "one_based::pairs")]
    pub matching: Vec<(usize, usize)>,
    /// Envy-cycle rotations applied after the matching, in order.
    pub rotations: Vec<Rotation>,
}

fn weights_text<S: Scalar, Ser: serde::Serializer>(w: &[Vec<S>], s: Ser) -> Result<Ser::Ok, Ser::Error> {
    s.collect_seq(w.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct AllocationRun<S: Scalar> {
    pub allocation: Allocation,
    pub guarantee: GuaranteeClass,
    pub rounds: Vec<MatchingRound<S>>,
    /// The last good each agent's bundle received (bundles keep their last
    /// good through rotations).
    #[serde(serialize_with = "one_based::maybe_many")]
    pub last_goods: Vec<Option<usize>>,
}

impl<S: Scalar> AllocationRun<S> {
    /// Agents holding more than one good.
    pub fn large_bundles(&self) -> usize {
        self.allocation.bundles.iter().filter(|b| b.len() > 1).count()
    }
}

/// Runs matching rounds until every good is allocated.
pub fn allocate_matching<S: Scalar>(inst: &Instance<S>) -> AllocationRun<S> {
    let n = inst.agents();
    let mut bundles = vec![GoodSet::EMPTY; n];
    let mut last_goods: Vec<Option<usize>> = vec![None; n];
    let mut remaining = inst.all_goods();
    let mut unenvied: Vec<usize> = (0..n).collect();
    let mut rounds = Vec::new();
    while !remaining.is_empty() && n > 0 {
        let goods: Vec<usize> = remaining.iter().collect();
        let weights: Vec<Vec<S>> = unenvied
            .iter()
            .map(|&i| {
                let own = inst.value(i, bundles[i]);
                goods
                    .iter()
                    .map(|&g| inst.value(i, bundles[i].with(g)) - own.clone())
                    .collect()
            })
            .collect();
        let cardinality_fallback = weights.iter().flatten().all(|w| w.is_zero());
        let pairs = if cardinality_fallback {
            let unit = vec![vec![S::one(); goods.len()]; unenvied.len()];
            max_weight_matching(&unit)
        } else {
            max_weight_matching(&weights)
        };
        let matching: Vec<(usize, usize)> = pairs.iter().map(|&(a, g)| (unenvied[a], goods[g])).collect();
        for &(agent, good) in &matching {
            bundles[agent].insert(good);
            last_goods[agent] = Some(good);
            remaining.remove(good);
        }
        let mut rotations = Vec::new();
        loop {
            let alloc = Allocation {
                bundles: bundles.clone(),
            };
            let Some(cycle) = build_envy_graph(inst, &alloc).find_cycle() else {
                break;
            };
            let rotation = Rotation { cycle };
            rotation.apply(&mut bundles);
            rotation.apply(&mut last_goods);
            rotations.push(rotation);
        }
        rounds.push(MatchingRound {
            round: rounds.len() + 1,
            unenvied: unenvied.clone(),
            remaining: goods,
            weights,
            cardinality_fallback,
            matching,
            rotations,
        });
        unenvied = build_envy_graph(inst, &Allocation { bundles: bundles.clone() }).unenvied();
    }
    let allocation = Allocation { bundles };
    let large = allocation.bundles.iter().filter(|b| b.len() > 1).count();
    AllocationRun {
        allocation,
        guarantee: GuaranteeClass::classify(inst.all_additive(), large),
        rounds,
        last_goods,
    }
}
