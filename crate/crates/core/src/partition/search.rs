//! Exhaustive search over all `n^m` allocations.
//!
//! Goods are assigned one at a time. For bundle-local notions (and plain
//! value thresholds) an agent's condition is upward closed in her bundle, so
//! a branch dies as soon as some agent fails even when handed every
//! unassigned good. For EF the envied bundles only grow, which gives a
//! similar cut; EF1 and EFX are checked at the leaves only.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::Result;
use crate::fairness::{agent_verdict, bundle_verdict, Notion};
use crate::model::{Allocation, GoodSet, Instance};
use crate::partition::{NodeCounter, SearchBudget, ShareOracle};
use crate::scalar::Scalar;

/// What every agent must get.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Requirement<S> {
    /// The notion at factor `alpha`, for every agent.
    Notion { notion: Notion, alpha: S },
    /// A bundle worth at least this much to its owner.
    MinValue(S),
}

impl<S: Scalar> Requirement<S> {
    pub fn exact(notion: Notion) -> Self {
        Requirement::Notion {
            notion,
            alpha: S::one(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub exists: bool,
    pub witness: Option<Allocation>,
    pub nodes: u64,
}

struct Walker<'a, S: Scalar, O> {
    inst: &'a Instance<S>,
    requirement: &'a Requirement<S>,
    oracle: &'a O,
    prune: bool,
    order: Vec<usize>,
    rest: Vec<GoodSet>,
    memo: HashMap<(usize, u64), bool>,
    counter: NodeCounter,
}

impl<S: Scalar, O: ShareOracle<S>> Walker<'_, S, O> {
    fn bundle_ok(&mut self, agent: usize, bundle: GoodSet) -> Result<bool> {
        if let Some(&ok) = self.memo.get(&(agent, bundle.bits())) {
            return Ok(ok);
        }
        let ok = match self.requirement {
            Requirement::MinValue(t) => self.inst.value(agent, bundle) >= *t,
            Requirement::Notion { notion, alpha } => {
                bundle_verdict(self.inst, agent, bundle, *notion, alpha, self.oracle)?.satisfied
            }
        };
        self.memo.insert((agent, bundle.bits()), ok);
        Ok(ok)
    }

    fn bundle_local(&self) -> bool {
        match self.requirement {
            Requirement::MinValue(_) => true,
            Requirement::Notion { notion, .. } => notion.is_bundle_local(),
        }
    }

    fn viable(&mut self, bundles: &[GoodSet], rest: GoodSet) -> Result<bool> {
        if self.bundle_local() {
            for (i, b) in bundles.iter().enumerate() {
                if !self.bundle_ok(i, b.union(rest))? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        if let Requirement::Notion {
            notion: Notion::Ef,
            alpha,
        } = self.requirement
        {
            for (i, b) in bundles.iter().enumerate() {
                let ceiling = self.inst.value(i, b.union(rest));
                for (j, other) in bundles.iter().enumerate() {
                    if i != j && ceiling < alpha.clone() * self.inst.value(i, *other) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn accepts(&mut self, bundles: &[GoodSet]) -> Result<bool> {
        if self.bundle_local() {
            for (i, b) in bundles.iter().enumerate() {
                if !self.bundle_ok(i, *b)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let Requirement::Notion { notion, alpha } = self.requirement else {
            unreachable!()
        };
        let alloc = Allocation {
            bundles: bundles.to_vec(),
        };
        for i in 0..bundles.len() {
            if !agent_verdict(self.inst, &alloc, i, *notion, alpha, self.oracle)?.satisfied {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn walk(
        &mut self,
        t: usize,
        bundles: &mut Vec<GoodSet>,
        visit: &mut dyn FnMut(&Allocation) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.counter.tick()?;
        if t == self.order.len() {
            if self.accepts(bundles)? {
                return Ok(visit(&Allocation {
                    bundles: bundles.clone(),
                }));
            }
            return Ok(ControlFlow::Continue(()));
        }
        if self.prune && !self.viable(bundles, self.rest[t])? {
            return Ok(ControlFlow::Continue(()));
        }
        let g = self.order[t];
        for agent in 0..bundles.len() {
            bundles[agent].insert(g);
            let flow = self.walk(t + 1, bundles, visit)?;
            bundles[agent].remove(g);
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Calls `visit` on every allocation meeting `requirement`, until it breaks.
/// Returns the number of search nodes used. With `prune == false` every one
/// of the `n^m` leaves is visited and tested.
pub fn for_each_allocation<S: Scalar, O: ShareOracle<S>>(
    inst: &Instance<S>,
    requirement: &Requirement<S>,
    oracle: &O,
    budget: SearchBudget,
    prune: bool,
    mut visit: impl FnMut(&Allocation) -> ControlFlow<()>,
) -> Result<u64> {
    let n = inst.agents();
    // High-value goods first: their placement decides most branches.
    let mut order: Vec<usize> = (0..inst.goods()).collect();
    let weight = |g: usize| {
        inst.valuations()
            .iter()
            .fold(S::zero(), |acc, v| acc + v.good_value(g))
    };
    order.sort_by(|&a, &b| weight(b).cmp(&weight(a)).then(a.cmp(&b)));
    let mut rest = vec![GoodSet::EMPTY; order.len() + 1];
    for t in (0..order.len()).rev() {
        rest[t] = rest[t + 1].with(order[t]);
    }
    let mut walker = Walker {
        inst,
        requirement,
        oracle,
        prune,
        order,
        rest,
        memo: HashMap::new(),
        counter: budget.counter(),
    };
    let mut bundles = vec![GoodSet::EMPTY; n];
    let _ = walker.walk(0, &mut bundles, &mut visit)?;
    Ok(walker.counter.used())
}

/// Whether any allocation meets `requirement`, with the first one found.
pub fn exhaustive_allocation_search<S: Scalar, O: ShareOracle<S>>(
    inst: &Instance<S>,
    requirement: &Requirement<S>,
    oracle: &O,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    let mut witness = None;
    let nodes = for_each_allocation(inst, requirement, oracle, budget, true, |a| {
        witness = Some(a.clone());
        ControlFlow::Break(())
    })?;
    Ok(SearchOutcome {
        exists: witness.is_some(),
        witness,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::SolverOracle;
    use crate::ratio;

    fn unit(n: usize, m: usize) -> Instance<crate::Rational> {
        Instance::additive(vec![vec![ratio(1, 1); m]; n]).unwrap()
    }

    fn count(inst: &Instance<crate::Rational>, req: &Requirement<crate::Rational>, prune: bool) -> usize {
        let mut found = 0;
        for_each_allocation(inst, req, &SolverOracle::default(), SearchBudget::default(), prune, |_| {
            found += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        found
    }

    #[test]
    fn pruning_keeps_every_solution() {
        let inst = Instance::additive(vec![
            vec![ratio(3, 1), ratio(1, 1), ratio(2, 1), ratio(1, 2), ratio(1, 1)],
            vec![ratio(1, 1), ratio(2, 1), ratio(2, 1), ratio(1, 1), ratio(0, 1)],
            vec![ratio(1, 1), ratio(1, 3), ratio(1, 1), ratio(2, 1), ratio(1, 1)],
        ])
        .unwrap();
        for notion in Notion::ALL {
            let req = Requirement::exact(notion);
            assert_eq!(count(&inst, &req, true), count(&inst, &req, false), "{notion}");
        }
        let req = Requirement::MinValue(ratio(2, 1));
        assert_eq!(count(&inst, &req, true), count(&inst, &req, false));
    }

    #[test]
    fn no_mma_with_three_unit_goods() {
        let out = exhaustive_allocation_search(
            &unit(2, 3),
            &Requirement::exact(Notion::Mma),
            &SolverOracle::default(),
            SearchBudget::default(),
        )
        .unwrap();
        assert!(!out.exists);
        assert!(out.witness.is_none());
    }

    #[test]
    fn budget_exhaustion() {
        let err = exhaustive_allocation_search(
            &unit(3, 6),
            &Requirement::exact(Notion::Ef1),
            &SolverOracle::default(),
            SearchBudget::new(5),
        )
        .unwrap_err();
        assert!(matches!(err, crate::Error::BudgetExhausted { .. }));
    }

    #[test]
    fn single_agent_takes_everything() {
        let out = exhaustive_allocation_search(
            &unit(1, 3),
            &Requirement::exact(Notion::Mms),
            &SolverOracle::default(),
            SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(out.witness.unwrap().bundles, vec![GoodSet::full(3)]);
    }
}
