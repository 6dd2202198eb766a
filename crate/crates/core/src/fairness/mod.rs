//! Per-agent fairness verdicts with re-checkable witnesses.
//!
//! Every notion is checked exactly at a rational factor `alpha` in `[0, 1]`:
//! the defining inequality `own >= alpha * rhs` is evaluated with the
//! right-hand side computed by an exact [`ShareOracle`].
//!
//! Conventions: with one agent every notion holds. For the maximin-aware
//! notions an agent whose complement `A_{-i}` is empty is satisfied.

mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Allocation, GoodSet, Instance};
use crate::partition::{PartitionResult, SearchBudget, ShareOracle, SolverOracle};
use crate::scalar::Scalar;

pub use report::{AgentVerdict, FairnessReport, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notion {
    Ef,
    Ef1,
    Efx,
    Prop,
    Mms,
    Eef,
    Mma,
    Mma1,
    Mmax,
}

impl Notion {
    pub const ALL: [Notion; 9] = [
        Notion::Ef,
        Notion::Ef1,
        Notion::Efx,
        Notion::Prop,
        Notion::Mms,
        Notion::Eef,
        Notion::Mma,
        Notion::Mma1,
        Notion::Mmax,
    ];

    /// Whether an agent's verdict depends only on her own bundle. All such
    /// notions are also upward closed: a superset of a satisfying bundle
    /// satisfies.
    pub fn is_bundle_local(self) -> bool {
        !matches!(self, Notion::Ef | Notion::Ef1 | Notion::Efx)
    }

    pub fn name(self) -> &'static str {
        match self {
            Notion::Ef => "ef",
            Notion::Ef1 => "ef1",
            Notion::Efx => "efx",
            Notion::Prop => "prop",
            Notion::Mms => "mms",
            Notion::Eef => "eef",
            Notion::Mma => "mma",
            Notion::Mma1 => "mma1",
            Notion::Mmax => "mmax",
        }
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Notion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Notion::ALL
            .into_iter()
            .find(|n| n.name() == lower)
            .ok_or_else(|| Error::Parse {
                path: "notion".into(),
                message: format!("unknown notion {s:?}"),
            })
    }
}

fn check_alpha<S: Scalar>(alpha: &S) -> Result<()> {
    if *alpha < S::zero() || *alpha > S::one() {
        return Err(Error::Parse {
            path: "alpha".into(),
            message: format!("alpha = {alpha} is outside [0, 1]"),
        });
    }
    Ok(())
}

/// `own >= alpha * rhs`
fn meets<S: Scalar>(own: &S, alpha: &S, rhs: &S) -> bool {
    *own >= alpha.clone() * rhs.clone()
}

/// Goods ordered by the agent's singleton value; `ascending` breaks ties
/// toward higher indices, descending toward lower ones.
fn goods_by_value<S: Scalar>(inst: &Instance<S>, agent: usize, goods: GoodSet, ascending: bool) -> Vec<usize> {
    let v = inst.valuation(agent);
    let mut order: Vec<usize> = goods.iter().collect();
    if ascending {
        order.sort_by(|&a, &b| v.good_value(a).cmp(&v.good_value(b)).then(b.cmp(&a)));
    } else {
        order.sort_by(|&a, &b| v.good_value(b).cmp(&v.good_value(a)).then(a.cmp(&b)));
    }
    order
}

/// Verdict for one agent, holding `bundle`, under a bundle-local notion.
pub fn bundle_verdict<S: Scalar, O: ShareOracle<S>>(
    inst: &Instance<S>,
    agent: usize,
    bundle: GoodSet,
    notion: Notion,
    alpha: &S,
    oracle: &O,
) -> Result<AgentVerdict<S>> {
    if !notion.is_bundle_local() {
        return Err(Error::Unsupported(format!(
            "{notion} depends on the whole allocation"
        )));
    }
    let n = inst.agents();
    let v = inst.valuation(agent);
    let own = v.value(bundle);
    let mut verdict = AgentVerdict::satisfied(agent, own.clone());
    if n == 1 {
        return Ok(verdict);
    }
    let rest = inst.all_goods().difference(bundle);
    match notion {
        Notion::Prop => {
            let total = v.value(inst.all_goods());
            if own.times(n) < alpha.clone() * total.clone() {
                verdict.violate(Witness::Proportional {
                    own_value: own,
                    total_value: total,
                    agents: n,
                });
            }
        }
        Notion::Mms => {
            let share = oracle.maximin(inst, agent, inst.all_goods(), n)?;
            if !meets(&own, alpha, &share.min_value()) {
                verdict.violate(Witness::Share {
                    removed: None,
                    partition: share,
                });
            }
        }
        Notion::Eef => {
            let split = oracle.minimax(inst, agent, rest, n - 1)?;
            if meets(&own, alpha, &split.max_value()) {
                verdict.witness = Some(Witness::Reallocation { partition: split });
            } else {
                verdict.satisfied = false;
            }
        }
        Notion::Mma => {
            if !rest.is_empty() {
                let share = oracle.maximin(inst, agent, rest, n - 1)?;
                if !meets(&own, alpha, &share.min_value()) {
                    verdict.violate(Witness::Share {
                        removed: None,
                        partition: share,
                    });
                }
            }
        }
        Notion::Mma1 => {
            if !rest.is_empty() {
                let mut weakest: Option<(usize, PartitionResult<S>)> = None;
                let mut satisfied = false;
                for e in goods_by_value(inst, agent, rest, false) {
                    let share = oracle.maximin(inst, agent, rest.without(e), n - 1)?;
                    if meets(&own, alpha, &share.min_value()) {
                        satisfied = true;
                        break;
                    }
                    let replace = match &weakest {
                        None => true,
                        Some((_, w)) => share.min_value() < w.min_value(),
                    };
                    if replace {
                        weakest = Some((e, share));
                    }
                }
                if !satisfied {
                    let (e, partition) = weakest.expect("rest is non-empty");
                    verdict.violate(Witness::Share {
                        removed: Some(e),
                        partition,
                    });
                }
            }
        }
        Notion::Mmax => {
            for e in goods_by_value(inst, agent, rest, true) {
                let share = oracle.maximin(inst, agent, rest.without(e), n - 1)?;
                if !meets(&own, alpha, &share.min_value()) {
                    verdict.violate(Witness::Share {
                        removed: Some(e),
                        partition: share,
                    });
                    break;
                }
            }
        }
        Notion::Ef | Notion::Ef1 | Notion::Efx => unreachable!(),
    }
    Ok(verdict)
}

/// Envy-based verdict for one agent.
fn envy_verdict<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    agent: usize,
    notion: Notion,
    alpha: &S,
) -> AgentVerdict<S> {
    let v = inst.valuation(agent);
    let own = v.value(alloc.bundle(agent));
    let mut verdict = AgentVerdict::satisfied(agent, own.clone());
    for (j, &other) in alloc.bundles.iter().enumerate() {
        if j == agent {
            continue;
        }
        let witness = match notion {
            Notion::Ef => {
                let value = v.value(other);
                (!meets(&own, alpha, &value)).then_some(Witness::Envy {
                    envied: j,
                    removed: None,
                    envied_value: value,
                })
            }
            Notion::Ef1 => {
                // Violated only if even the best single removal leaves envy.
                let best = other
                    .iter()
                    .map(|e| (v.value(other.without(e)), e))
                    .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
                match best {
                    Some((value, e)) if !meets(&own, alpha, &value) => Some(Witness::Envy {
                        envied: j,
                        removed: Some(e),
                        envied_value: value,
                    }),
                    _ => None,
                }
            }
            Notion::Efx => goods_by_value(inst, agent, other, true)
                .into_iter()
                .map(|e| (e, v.value(other.without(e))))
                .find(|(_, value)| !meets(&own, alpha, value))
                .map(|(e, value)| Witness::Envy {
                    envied: j,
                    removed: Some(e),
                    envied_value: value,
                }),
            _ => unreachable!(),
        };
        if let Some(w) = witness {
            verdict.violate(w);
            break;
        }
    }
    verdict
}

/// Verdict for one agent of a full allocation, any notion.
pub fn agent_verdict<S: Scalar, O: ShareOracle<S>>(
    inst: &Instance<S>,
    alloc: &Allocation,
    agent: usize,
    notion: Notion,
    alpha: &S,
    oracle: &O,
) -> Result<AgentVerdict<S>> {
    if notion.is_bundle_local() {
        bundle_verdict(inst, agent, alloc.bundle(agent), notion, alpha, oracle)
    } else {
        Ok(envy_verdict(inst, alloc, agent, notion, alpha))
    }
}

/// Checks every agent of `alloc` under `notion` at factor `alpha`.
pub fn check<S: Scalar, O: ShareOracle<S>>(
    inst: &Instance<S>,
    alloc: &Allocation,
    notion: Notion,
    alpha: &S,
    oracle: &O,
) -> Result<FairnessReport<S>> {
    alloc.validate(inst)?;
    check_alpha(alpha)?;
    let agents = (0..inst.agents())
        .map(|i| agent_verdict(inst, alloc, i, notion, alpha, oracle))
        .collect::<Result<Vec<_>>>()?;
    Ok(FairnessReport::new(notion, alpha.clone(), agents))
}

pub fn check_envy<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    notion: Notion,
    alpha: &S,
) -> Result<FairnessReport<S>> {
    if notion.is_bundle_local() {
        return Err(Error::Unsupported(format!("{notion} is not an envy notion")));
    }
    check(inst, alloc, notion, alpha, &SolverOracle::default())
}

pub fn check_prop<S: Scalar>(inst: &Instance<S>, alloc: &Allocation, alpha: &S) -> Result<FairnessReport<S>> {
    check(inst, alloc, Notion::Prop, alpha, &SolverOracle::default())
}

pub fn check_mms<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    alpha: &S,
    budget: SearchBudget,
) -> Result<FairnessReport<S>> {
    check(inst, alloc, Notion::Mms, alpha, &SolverOracle::new(budget))
}

pub fn check_eef<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    budget: SearchBudget,
) -> Result<FairnessReport<S>> {
    check(inst, alloc, Notion::Eef, &S::one(), &SolverOracle::new(budget))
}

pub fn check_mma<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    alpha: &S,
    budget: SearchBudget,
) -> Result<FairnessReport<S>> {
    check(inst, alloc, Notion::Mma, alpha, &SolverOracle::new(budget))
}

pub fn check_mma1<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    alpha: &S,
    budget: SearchBudget,
) -> Result<FairnessReport<S>> {
    check(inst, alloc, Notion::Mma1, alpha, &SolverOracle::new(budget))
}

pub fn check_mmax<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    alpha: &S,
    budget: SearchBudget,
) -> Result<FairnessReport<S>> {
    check(inst, alloc, Notion::Mmax, alpha, &SolverOracle::new(budget))
}

/// Re-derives a violation from its witness using only valuation lookups.
/// Returns `false` when the witness does not demonstrate the violation.
/// Satisfied verdicts, and EEF violations (which carry no witness), return
/// `true` when there is nothing to check.
pub fn witness_reproduces<S: Scalar>(
    inst: &Instance<S>,
    alloc: &Allocation,
    notion: Notion,
    alpha: &S,
    verdict: &AgentVerdict<S>,
) -> bool {
    let i = verdict.agent;
    let v = inst.valuation(i);
    let own = v.value(alloc.bundle(i));
    if own != verdict.own_value {
        return false;
    }
    match (&verdict.witness, verdict.satisfied) {
        (Some(Witness::Reallocation { partition }), true) => {
            notion == Notion::Eef
                && partition.is_consistent(v, alloc.others(i))
                && meets(&own, alpha, &partition.max_value())
        }
        (_, true) => true,
        (None, false) => notion == Notion::Eef,
        (Some(w), false) => match w {
            Witness::Envy {
                envied,
                removed,
                envied_value,
            } => {
                let other = alloc.bundle(*envied);
                let reduced = match removed {
                    Some(e) if other.contains(*e) => other.without(*e),
                    Some(_) => return false,
                    None => other,
                };
                let direct = v.value(reduced);
                if direct != *envied_value || meets(&own, alpha, &direct) {
                    return false;
                }
                match notion {
                    Notion::Ef => removed.is_none(),
                    Notion::Efx => removed.is_some(),
                    // every removal must still leave envy
                    Notion::Ef1 => other
                        .iter()
                        .all(|e| !meets(&own, alpha, &v.value(other.without(e)))),
                    _ => false,
                }
            }
            Witness::Proportional {
                own_value,
                total_value,
                agents,
            } => {
                notion == Notion::Prop
                    && *own_value == own
                    && *total_value == v.value(inst.all_goods())
                    && own.times(*agents) < alpha.clone() * total_value.clone()
            }
            Witness::Share { removed, partition } => {
                let (goods, k) = match (notion, removed) {
                    (Notion::Mms, None) => (inst.all_goods(), inst.agents()),
                    (Notion::Mma, None) => (alloc.others(i), inst.agents() - 1),
                    (Notion::Mma1 | Notion::Mmax, Some(e)) if alloc.others(i).contains(*e) => {
                        (alloc.others(i).without(*e), inst.agents() - 1)
                    }
                    _ => return false,
                };
                partition.parts.len() == k
                    && partition.is_consistent(v, goods)
                    && !meets(&own, alpha, &partition.min_value())
            }
            Witness::Reallocation { .. } => false,
        },
    }
}
