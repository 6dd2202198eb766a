//! Bundled fixture instances with the verdicts they are known to produce.

use std::ops::ControlFlow;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::fairness::{self, Notion};
use crate::model::json::scalar_text;
use crate::model::{Allocation, GoodSet};
use crate::partition::{
    exhaustive_allocation_search, for_each_allocation, mms_value, Requirement, SearchBudget,
    SolverOracle,
};
use crate::{ratio, Instance, Rational};

/// One agent's (or, with `agent == None`, every agent's) verdict on one of
/// the entry's allocations.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectedVerdict {
    pub allocation: usize,
    pub notion: Notion,
    #[serde(serialize_with = "scalar_text::one")]
    pub alpha: Rational,
    pub agent: Option<usize>,
    pub satisfied: bool,
    pub note: &'static str,
}

/// `MMS_agent(goods, k) == value`.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectedShare {
    pub agent: usize,
    pub goods: GoodSet,
    pub k: usize,
    #[serde(serialize_with = "scalar_text::one")]
    pub value: Rational,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchTarget {
    Notion(Notion),
    #[serde(serialize_with = "scalar_text::one")]
    MinValue(Rational),
}

impl SearchTarget {
    pub fn requirement(&self) -> Requirement<Rational> {
        match self {
            SearchTarget::Notion(n) => Requirement::exact(*n),
            SearchTarget::MinValue(t) => Requirement::MinValue(t.clone()),
        }
    }
}

/// Outcome of an exhaustive existence search.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectedSearch {
    pub target: SearchTarget,
    pub exists: bool,
    /// When set, the only satisfying allocation.
    pub unique: Option<Allocation>,
    /// Expensive; skipped unless explicitly requested.
    pub slow: bool,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceCatalogEntry {
    pub id: String,
    pub description: String,
    pub instance: Instance,
    pub allocations: Vec<Allocation>,
    pub verdicts: Vec<ExpectedVerdict>,
    pub shares: Vec<ExpectedShare>,
    pub searches: Vec<ExpectedSearch>,
}

/// One reproduced expectation.
#[derive(Debug, Clone, Serialize)]
pub struct Reproduction {
    pub entry: String,
    pub what: String,
    pub passed: bool,
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn pow2_inv(e: u32) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(2).pow(e))
}

fn additive(rows: Vec<Vec<Rational>>) -> Instance {
    Instance::additive(rows).expect("fixture is valid")
}

fn alloc(bundles: &[&[usize]], m: usize) -> Allocation {
    Allocation::from_labels(bundles.iter().map(|b| b.iter().copied()), m).expect("fixture is valid")
}

fn verdict(
    allocation: usize,
    notion: Notion,
    agent: Option<usize>,
    satisfied: bool,
    note: &'static str,
) -> ExpectedVerdict {
    ExpectedVerdict {
        allocation,
        notion,
        alpha: Rational::one(),
        agent,
        satisfied,
        note,
    }
}

/// Two agents, two goods, each worth `h` to one agent and 1 to the other.
pub fn crossed_pair(h: i64) -> InstanceCatalogEntry {
    let inst = additive(vec![vec![r(h), r(1)], vec![r(1), r(h)]]);
    let swapped = alloc(&[&[2], &[1]], 2);
    let natural = alloc(&[&[1], &[2]], 2);
    InstanceCatalogEntry {
        id: "crossed_pair".into(),
        description: format!("2 agents with mirrored values ({h}, 1); MMS allows mutual envy"),
        instance: inst,
        allocations: vec![swapped, natural.clone()],
        verdicts: vec![
            verdict(0, Notion::Mms, None, true, "each agent gets her MMS of 1"),
            verdict(0, Notion::Mma, Some(0), false, "1 < MMS of the other good"),
            verdict(0, Notion::Mma, Some(1), false, "1 < MMS of the other good"),
            verdict(0, Notion::Ef, None, false, "mutual envy"),
            verdict(1, Notion::Mma, None, true, "each agent keeps her large good"),
            verdict(1, Notion::Prop, None, true, "h >= (h + 1) / 2"),
            verdict(1, Notion::Eef, None, true, "two agents: same as EF"),
        ],
        shares: (0..2)
            .map(|agent| ExpectedShare {
                agent,
                goods: GoodSet::full(2),
                k: 2,
                value: r(1),
                note: "MMS is the small good",
            })
            .collect(),
        searches: vec![ExpectedSearch {
            target: SearchTarget::Notion(Notion::Mma),
            exists: true,
            unique: Some(natural),
            slow: false,
            note: "the only MMA allocation",
        }],
    }
}

/// Agent 1's values: one good worth 1, three worth 2/5, four worth 1/10.
pub fn eight_goods_values() -> Vec<Rational> {
    let mut v = vec![r(1)];
    v.extend(std::iter::repeat_n(ratio(2, 5), 3));
    v.extend(std::iter::repeat_n(ratio(1, 10), 4));
    v
}

pub fn eight_goods() -> InstanceCatalogEntry {
    let zero = Rational::zero;
    let only = |goods: &[usize]| -> Vec<Rational> {
        (1..=8).map(|g| if goods.contains(&g) { r(1) } else { zero() }).collect()
    };
    let inst = additive(vec![eight_goods_values(), only(&[1]), only(&[2]), only(&[3, 4])]);
    let a = alloc(&[&[5, 6, 7, 8], &[1], &[2], &[3, 4]], 8);
    InstanceCatalogEntry {
        id: "eight_goods".into(),
        description: "4 agents, 8 goods; agent 1 holds the four small goods".into(),
        instance: inst,
        allocations: vec![a],
        verdicts: vec![
            verdict(0, Notion::Mms, Some(0), false, "2/5 < MMS 1/2"),
            verdict(0, Notion::Mma, Some(0), true, "2/5 >= MMS of the rest among 3"),
            verdict(0, Notion::Prop, Some(0), false, "2/5 < 13/20"),
        ],
        shares: vec![
            ExpectedShare {
                agent: 0,
                goods: GoodSet::full(8),
                k: 4,
                value: ratio(1, 2),
                note: "MMS over all goods",
            },
            ExpectedShare {
                agent: 0,
                goods: GoodSet::from_labels([1, 2, 3, 4]),
                k: 3,
                value: ratio(2, 5),
                note: "MMS of the complement",
            },
        ],
        searches: vec![],
    }
}

/// `n + 1` identical agents and `2n + 1` goods: `n` goods worth `n`, the rest
/// worth 1.
pub fn ef1_floor_instance(n: usize) -> Instance {
    let row: Vec<Rational> = (0..2 * n + 1)
        .map(|g| if g < n { r(n as i64) } else { r(1) })
        .collect();
    additive(vec![row; n + 1])
}

/// Bundles `{i, n + i}` for `i <= n` and `{2n + 1}` (1-based).
pub fn ef1_floor_allocation(n: usize) -> Allocation {
    let mut bundles: Vec<GoodSet> = (0..n).map(|i| GoodSet::from_bits(0).with(i).with(n + i)).collect();
    bundles.push(GoodSet::EMPTY.with(2 * n));
    Allocation { bundles }
}

pub fn ef1_floor(n: usize) -> InstanceCatalogEntry {
    InstanceCatalogEntry {
        id: format!("ef1_floor_n{n}"),
        description: format!("{} identical agents, {} goods; an EF1 allocation leaves one agent with 1", n + 1, 2 * n + 1),
        instance: ef1_floor_instance(n),
        allocations: vec![ef1_floor_allocation(n)],
        verdicts: vec![verdict(0, Notion::Ef1, None, true, "EF1 with a last agent worth 1")],
        shares: vec![],
        searches: vec![],
    }
}

/// The two 4x4 matrices of the no-MMS instance, with `eps = 2^-10` and
/// `tiny = 2^-100`. Goods are the non-zero cells, row-major.
pub fn no_mms_matrices() -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let e = pow2_inv(10);
    let t = pow2_inv(100);
    let e2 = &e * &e;
    let e3 = &e2 * &e;
    let e4 = &e3 * &e;
    let z = Rational::zero();
    let base = |dp: [Rational; 4], dq: [Rational; 4]| -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let rows = [
            [ratio(7, 8), e4.clone(), z.clone(), ratio(1, 8) - &e4],
            [e3.clone(), ratio(3, 4), &e2 - &e3, ratio(1, 4) - &e2],
            [z.clone(), &e - &e4, ratio(1, 2), ratio(1, 2) + &e4 - &e],
            [ratio(1, 8) - &e3, ratio(1, 4) - &e, ratio(1, 2) + &e3 - &e2, ratio(1, 8) + &e2 + &e],
        ];
        let p = rows.iter().enumerate().map(|(i, row)| {
            row.iter().enumerate().map(|(j, x)| if j == 3 { x + &dp[i] } else { x.clone() }).collect()
        });
        let q = rows.iter().enumerate().map(|(i, row)| {
            row.iter().enumerate().map(|(j, x)| if i == 3 { x + &dq[j] } else { x.clone() }).collect()
        });
        (p.collect(), q.collect())
    };
    let mt = -t.clone();
    base(
        [mt.clone(), mt.clone(), mt.clone(), &t * r(3)],
        [mt.clone(), mt.clone(), mt, &t * r(3)],
    )
}

pub fn no_mms_allocation() -> InstanceCatalogEntry {
    let (p, q) = no_mms_matrices();
    let cells: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&(i, j)| !p[i][j].is_zero())
        .collect();
    let flat = |mat: &Vec<Vec<Rational>>| cells.iter().map(|&(i, j)| mat[i][j].clone()).collect::<Vec<_>>();
    let inst = additive(vec![flat(&p), flat(&p), flat(&q), flat(&q)]);
    let m = cells.len();
    let owner: Vec<usize> = cells.iter().map(|&(i, _)| i).collect();
    let rows = Allocation::from_assignment(&owner, 4);
    InstanceCatalogEntry {
        id: "no_mms_allocation".into(),
        description: format!("4 agents, {m} goods; MMS 1 for everyone but no allocation reaches it"),
        instance: inst,
        allocations: vec![rows],
        verdicts: vec![
            verdict(0, Notion::Mmax, None, true, "row allocation"),
            verdict(0, Notion::Mma1, None, true, "row allocation"),
            verdict(0, Notion::Mms, Some(0), false, "row worth 1 - tiny"),
            verdict(0, Notion::Mms, Some(1), false, "row worth 1 - tiny"),
        ],
        shares: (0..4)
            .map(|agent| ExpectedShare {
                agent,
                goods: GoodSet::full(m),
                k: 4,
                value: r(1),
                note: "columns each sum to 1",
            })
            .collect(),
        searches: vec![ExpectedSearch {
            target: SearchTarget::MinValue(r(1)),
            exists: false,
            unique: None,
            slow: true,
            note: "no allocation gives every agent 1",
        }],
    }
}

/// Agent 1's values in the EFX-but-not-MMAX instance.
pub fn efx_not_mmax_values() -> Vec<Rational> {
    vec![r(1), r(1), ratio(3, 5), ratio(2, 5), ratio(1, 5), ratio(1, 5), ratio(1, 5)]
}

pub fn efx_not_mmax_allocation() -> Allocation {
    alloc(&[&[1], &[2, 4], &[3, 5, 6, 7]], 7)
}

pub fn efx_not_mmax() -> InstanceCatalogEntry {
    let only = |goods: &[usize]| -> Vec<Rational> {
        (1..=7).map(|g| if goods.contains(&g) { r(1) } else { Rational::zero() }).collect()
    };
    let inst = additive(vec![efx_not_mmax_values(), only(&[2, 4]), only(&[3, 5, 6, 7])]);
    InstanceCatalogEntry {
        id: "efx_not_mmax".into(),
        description: "3 agents, 7 goods; EFX for agent 1 but not MMAX".into(),
        instance: inst,
        allocations: vec![efx_not_mmax_allocation()],
        verdicts: vec![
            verdict(0, Notion::Efx, Some(0), true, "no envy after removing any good"),
            verdict(0, Notion::Mmax, Some(0), false, "dropping good 7 leaves two parts worth 6/5"),
        ],
        shares: vec![ExpectedShare {
            agent: 0,
            goods: GoodSet::from_labels([2, 3, 4, 5, 6]),
            k: 2,
            value: ratio(6, 5),
            note: "complement without good 7",
        }],
        searches: vec![],
    }
}

/// `n` identical agents and `kn - 1` unit goods.
pub fn unit_goods(n: usize, k: usize) -> InstanceCatalogEntry {
    let m = k * n - 1;
    InstanceCatalogEntry {
        id: format!("unit_goods_n{n}_k{k}"),
        description: format!("{n} identical agents, {m} unit goods"),
        instance: additive(vec![vec![r(1); m]; n]),
        allocations: vec![],
        verdicts: vec![],
        shares: vec![],
        searches: [(Notion::Mma, false), (Notion::Mma1, true), (Notion::Mmax, true)]
            .into_iter()
            .map(|(notion, exists)| ExpectedSearch {
                target: SearchTarget::Notion(notion),
                exists,
                unique: None,
                slow: false,
                note: "identical binary additive agents",
            })
            .collect(),
    }
}

/// Three agents, two unit goods: whoever gets nothing has no guarantee.
pub fn three_agents_two_goods() -> InstanceCatalogEntry {
    InstanceCatalogEntry {
        id: "three_agents_two_goods".into(),
        description: "3 agents, 2 unit goods".into(),
        instance: additive(vec![vec![r(1); 2]; 3]),
        allocations: vec![alloc(&[&[1], &[2], &[]], 2)],
        verdicts: vec![
            verdict(0, Notion::Eef, Some(2), false, "the empty-handed agent"),
            verdict(0, Notion::Prop, Some(2), false, "the empty-handed agent"),
            verdict(0, Notion::Mma, Some(2), false, "the two goods split between two others give 1"),
            verdict(0, Notion::Mma1, Some(2), true, "one good among two others gives 0"),
            verdict(0, Notion::Mmax, Some(2), true, "removing a good leaves an empty part"),
        ],
        shares: vec![],
        searches: vec![],
    }
}

/// Every bundled fixture.
pub fn fixture_instances() -> Vec<InstanceCatalogEntry> {
    vec![
        crossed_pair(100),
        eight_goods(),
        ef1_floor(2),
        ef1_floor(3),
        no_mms_allocation(),
        efx_not_mmax(),
        unit_goods(2, 2),
        unit_goods(3, 2),
        three_agents_two_goods(),
    ]
}

pub fn entry(id: &str) -> Option<InstanceCatalogEntry> {
    fixture_instances().into_iter().find(|e| e.id == id)
}

/// Re-runs every expectation of `entry`. Slow searches run only with
/// `include_slow`.
pub fn reproduce(entry: &InstanceCatalogEntry, include_slow: bool, budget: SearchBudget) -> Result<Vec<Reproduction>> {
    let inst = &entry.instance;
    let oracle = SolverOracle::new(budget);
    let mut out = Vec::new();
    let mut record = |what: String, passed: bool| {
        out.push(Reproduction {
            entry: entry.id.clone(),
            what,
            passed,
        })
    };
    for e in &entry.verdicts {
        let report = fairness::check(inst, &entry.allocations[e.allocation], e.notion, &e.alpha, &oracle)?;
        let got = match e.agent {
            Some(i) => report.agent(i).satisfied,
            None => report.satisfied,
        };
        let who = e.agent.map_or("all agents".to_string(), |i| format!("agent {}", i + 1));
        record(
            format!("allocation {} {} at {}: {} {}", e.allocation + 1, e.notion, e.alpha, who, if e.satisfied { "satisfied" } else { "violated" }),
            got == e.satisfied,
        );
    }
    for s in &entry.shares {
        let (value, _) = mms_value(inst.valuation(s.agent), s.goods, s.k, budget)?;
        record(
            format!("MMS of agent {} on {} among {} = {}", s.agent + 1, s.goods, s.k, s.value),
            value == s.value,
        );
    }
    for s in entry.searches.iter().filter(|s| include_slow || !s.slow) {
        let req = s.target.requirement();
        let label = match &s.target {
            SearchTarget::Notion(n) => n.to_string(),
            SearchTarget::MinValue(t) => format!("every value >= {t}"),
        };
        let passed = match &s.unique {
            None => exhaustive_allocation_search(inst, &req, &oracle, budget)?.exists == s.exists,
            Some(only) => {
                let mut found = Vec::new();
                for_each_allocation(inst, &req, &oracle, budget, true, |a| {
                    found.push(a.clone());
                    if found.len() > 1 {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })?;
                found == [only.clone()]
            }
        };
        record(format!("search {label}: exists = {}", s.exists), passed);
    }
    Ok(out)
}
