//! Divide-and-choose for three additive agents.
//!
//! Agent 3 (index 2) cuts the goods into her leximin 3-partition. Agents 1
//! and 2 then pick, with a repartition by leximin 2-split when their
//! preferences collide. Favorite ties go to the lowest bundle index, and
//! the chooser after a 2-split takes the first part on a tie.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Allocation, GoodSet, Instance};
use crate::partition::{leximin_partition, SearchBudget};
use crate::scalar::Scalar;

/// Which branch produced the allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// Agents 1 and 2 have different favorites and take them.
    DistinctFavorites,
    /// Same favorite and same second favorite: agent 2 splits the two,
    /// agent 1 chooses.
    SameSecond,
    /// Both second favorites are worth more than the average of the other
    /// two bundles, so each takes her second favorite.
    BothPrefer,
    /// Agent 1's second favorite is not worth it: agent 2 splits her two
    /// favorites, agent 1 chooses.
    SecondRepartitions,
    /// Mirror image: agent 1 splits her two favorites, agent 2 chooses.
    FirstRepartitions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivideAndChoose {
    pub allocation: Allocation,
    pub case: Case,
    /// Agent 3's leximin 3-partition, canonical order.
    pub cut: Vec<GoodSet>,
}

/// Bundle indices by decreasing value to `agent`, ties to the lower index.
fn ranking<S: Scalar>(inst: &Instance<S>, agent: usize, bundles: &[GoodSet]) -> Vec<usize> {
    let values: Vec<S> = bundles.iter().map(|b| inst.value(agent, *b)).collect();
    let mut order: Vec<usize> = (0..bundles.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));
    order
}

/// `splitter` leximin-splits `pool`; `chooser` takes the part she values
/// more (the first on a tie). Returns `(chooser's part, splitter's part)`.
fn split_and_choose<S: Scalar>(
    inst: &Instance<S>,
    splitter: usize,
    chooser: usize,
    pool: GoodSet,
    budget: SearchBudget,
) -> Result<(GoodSet, GoodSet)> {
    let split = leximin_partition(inst.valuation(splitter), pool, 2, budget)?;
    let (b1, b2) = (split.parts[0], split.parts[1]);
    if inst.value(chooser, b1) >= inst.value(chooser, b2) {
        Ok((b1, b2))
    } else {
        Ok((b2, b1))
    }
}

pub fn allocate_three_agents<S: Scalar>(inst: &Instance<S>, budget: SearchBudget) -> Result<DivideAndChoose> {
    if inst.agents() != 3 {
        return Err(Error::Unsupported(format!(
            "divide-and-choose needs exactly 3 agents, got {}",
            inst.agents()
        )));
    }
    if !inst.all_additive() {
        return Err(Error::Unsupported("divide-and-choose needs additive valuations".into()));
    }
    let m = inst.goods();
    let cut = leximin_partition(inst.valuation(2), inst.all_goods(), 3, budget)?.parts;
    let first = ranking(inst, 0, &cut);
    let second = ranking(inst, 1, &cut);
    let done = |a: GoodSet, b: GoodSet, c: GoodSet, case: Case| -> Result<DivideAndChoose> {
        Ok(DivideAndChoose {
            allocation: Allocation::new(vec![a, b, c], m)?,
            case,
            cut: cut.clone(),
        })
    };

    if first[0] != second[0] {
        let rest = 3 - first[0] - second[0];
        return done(cut[first[0]], cut[second[0]], cut[rest], Case::DistinctFavorites);
    }
    let x = first[0];
    if first[1] == second[1] {
        let y = first[1];
        let z = 3 - x - y;
        let (to1, to2) = split_and_choose(inst, 1, 0, cut[x].union(cut[y]), budget)?;
        return done(to1, to2, cut[z], Case::SameSecond);
    }
    // agent 1 ranks x, y, z and agent 2 ranks x, z, y
    let (y, z) = (first[1], second[1]);
    let two = S::one() + S::one();
    let v = |agent: usize, bundle: usize| inst.value(agent, cut[bundle]);
    let first_wants = two.clone() * v(0, y) > v(0, x) + v(0, z);
    let second_wants = two * v(1, z) > v(1, x) + v(1, y);
    if first_wants && second_wants {
        done(cut[y], cut[z], cut[x], Case::BothPrefer)
    } else if !first_wants {
        let (to1, to2) = split_and_choose(inst, 1, 0, cut[x].union(cut[z]), budget)?;
        done(to1, to2, cut[y], Case::SecondRepartitions)
    } else {
        let (to2, to1) = split_and_choose(inst, 0, 1, cut[x].union(cut[y]), budget)?;
        done(to1, to2, cut[z], Case::FirstRepartitions)
    }
}
