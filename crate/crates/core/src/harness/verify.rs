//! Randomized and exhaustive checks of implications between notions.
//!
//! Implications are checked per agent, which is stronger than the
//! allocation-level statement: whenever an agent meets the premise she must
//! meet the conclusion. When both notions only look at the agent's own
//! bundle, every bundle of every agent is tried. Otherwise allocations are
//! enumerated (or sampled when `n^m` is too large).

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fairness::{agent_verdict, bundle_verdict, witness_reproduces, AgentVerdict, Notion};
use crate::harness::catalog;
use crate::harness::generate::{generate_instance, random_allocation, TrialConfig, ValuationFamily};
use crate::model::json::scalar_text;
use crate::model::{Allocation, GoodSet};
use crate::partition::{for_each_allocation, Requirement, SearchBudget, ShareOracle, SolverOracle, TableOracle};
use crate::{ratio, Instance, Rational};

/// Exhaustive enumeration up to this many allocations, sampling beyond.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
/// Allocations drawn per instance when sampling.
pub const SAMPLES: usize = 2_000;

/// A notion at a factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub notion: Notion,
    #[serde(serialize_with = "scalar_text::one")]
    pub alpha: Rational,
}

impl Condition {
    pub fn exact(notion: Notion) -> Self {
        Condition {
            notion,
            alpha: Rational::one(),
        }
    }

    pub fn at(notion: Notion, alpha: Rational) -> Self {
        Condition { notion, alpha }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.alpha.is_one() {
            write!(f, "{}", self.notion.name().to_uppercase())
        } else {
            write!(f, "{}-{}", self.alpha, self.notion.name().to_uppercase())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimKind {
    /// Premise implies conclusion on the listed families.
    Implication {
        premise: Condition,
        conclusion: Condition,
        families: Vec<ValuationFamily>,
        agents: (usize, usize),
        goods: (usize, usize),
    },
    /// A catalog allocation meets the premise for every agent but fails the
    /// conclusion for some agent.
    NonImplication {
        premise: Condition,
        conclusion: Condition,
        entry: &'static str,
        allocation: usize,
    },
    /// For every notion, holding at a factor implies holding at every smaller one.
    AlphaMonotone {
        families: Vec<ValuationFamily>,
        agents: (usize, usize),
        goods: (usize, usize),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Refuted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub statement: String,
    pub expectation: Expectation,
    pub note: Option<&'static str>,
    #[serde(flatten)]
    pub kind: ClaimKind,
}

fn one_based<Ser: Serializer>(i: &usize, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    s.serialize_u64(*i as u64 + 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub trial: Option<usize>,
    pub instance: Instance,
    pub allocation: Allocation,
    #[serde(serialize_with = "one_based")]
    pub agent: usize,
    pub premise: AgentVerdict<Rational>,
    pub conclusion: AgentVerdict<Rational>,
    /// Re-checked from scratch with the branch-and-bound oracle, and the
    /// conclusion's witness reproduced.
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Counterexample,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub id: &'static str,
    pub statement: String,
    pub expectation: Expectation,
    pub status: ClaimStatus,
    /// Status agrees with the expectation (and any counterexample verified).
    pub as_expected: bool,
    pub trials: usize,
    /// Bundles or allocations examined.
    pub checked: u64,
    /// Trials that sampled allocations instead of enumerating them all.
    pub sampled_trials: usize,
    pub caveat: Option<String>,
    pub counterexample: Option<Box<Counterexample>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub trials: usize,
    pub all_as_expected: bool,
    pub claims: Vec<ClaimReport>,
}

const ALL_FAMILIES: [ValuationFamily; 5] = ValuationFamily::ALL;

/// Every registered claim.
pub fn claims() -> Vec<Claim> {
    use Notion::*;
    use ValuationFamily::*;
    let imp = |id, premise: Condition, conclusion: Condition, families: &[ValuationFamily], goods| {
        let statement = format!(
            "{premise} => {conclusion} ({})",
            families.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
        );
        Claim {
            id,
            statement,
            expectation: Expectation::Holds,
            note: None,
            kind: ClaimKind::Implication {
                premise,
                conclusion,
                families: families.to_vec(),
                agents: (2, 4),
                goods,
            },
        }
    };
    let local = (1, 10);
    let envy = (1, 8);
    let e = Condition::exact;
    let mut out = vec![
        imp("mma-mms-binary", e(Mma), e(Mms), &[BinaryAdditive], local),
        imp("ef-eef-additive", e(Ef), e(Eef), &[Additive, BinaryAdditive], envy),
        imp("eef-prop-additive", e(Eef), e(Prop), &[Additive, BinaryAdditive], local),
        imp("prop-mma-additive", e(Prop), e(Mma), &[Additive, BinaryAdditive], local),
        imp("mms-mma1-submodular", e(Mms), e(Mma1), &[SubmodularTable, BinaryAdditive], local),
        imp("mma1-mms-binary", e(Mma1), e(Mms), &[BinaryAdditive], local),
        imp("mms-mma1-binary", e(Mms), e(Mma1), &[BinaryAdditive], local),
        imp("efx-mmax-binary", e(Efx), e(Mmax), &[BinaryAdditive], envy),
        imp("ef-efx", e(Ef), e(Efx), &ALL_FAMILIES, envy),
        imp("efx-ef1", e(Efx), e(Ef1), &ALL_FAMILIES, envy),
        imp("mma-mmax", e(Mma), e(Mmax), &ALL_FAMILIES, local),
        imp("mmax-mma1", e(Mmax), e(Mma1), &ALL_FAMILIES, local),
    ];
    let mut scaled = imp(
        "alpha-mms-alpha-mma1-submodular",
        Condition::at(Mms, ratio(1, 2)),
        Condition::at(Mma1, ratio(1, 2)),
        &[SubmodularTable, BinaryAdditive],
        local,
    );
    scaled.expectation = Expectation::Refuted;
    scaled.note = Some(
        "fails below 1: with 2 agents and 9 unit goods, a 2-good bundle is 1/2-MMS, \
         but the other 7 minus one good are worth 6 > 2 / (1/2)",
    );
    out.push(scaled);
    out.push(Claim {
        id: "alpha-monotone",
        statement: "every notion at factor a implies it at every factor below a".into(),
        expectation: Expectation::Holds,
        note: None,
        kind: ClaimKind::AlphaMonotone {
            families: ALL_FAMILIES.to_vec(),
            agents: (2, 4),
            goods: (1, 8),
        },
    });
    let non = |id, premise: Condition, conclusion: Condition, entry| Claim {
        id,
        statement: format!("{premise} does not imply {conclusion} (fixture {entry})"),
        expectation: Expectation::Refuted,
        note: None,
        kind: ClaimKind::NonImplication {
            premise,
            conclusion,
            entry,
            allocation: 0,
        },
    };
    out.push(non("mms-not-mma", e(Mms), e(Mma), "crossed_pair"));
    out.push(non("mma-not-mms", e(Mma), e(Mms), "eight_goods"));
    out.push(non("efx-not-mmax", e(Efx), e(Mmax), "efx_not_mmax"));
    out.push(non("mma1-not-mms", e(Mma1), e(Mms), "no_mms_allocation"));
    out
}

pub fn claim(id: &str) -> Option<Claim> {
    claims().into_iter().find(|c| c.id == id)
}

/// Verdict cache for one instance and one oracle.
struct Judge<'a, O> {
    inst: &'a Instance,
    oracle: &'a O,
    memo: HashMap<(usize, u64, Notion, Rational), AgentVerdict<Rational>>,
}

impl<'a, O: ShareOracle<Rational>> Judge<'a, O> {
    fn new(inst: &'a Instance, oracle: &'a O) -> Self {
        Judge {
            inst,
            oracle,
            memo: HashMap::new(),
        }
    }

    fn bundle(&mut self, agent: usize, bundle: GoodSet, c: &Condition) -> Result<AgentVerdict<Rational>> {
        let key = (agent, bundle.bits(), c.notion, c.alpha.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = bundle_verdict(self.inst, agent, bundle, c.notion, &c.alpha, self.oracle)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    fn agent(&mut self, alloc: &Allocation, agent: usize, c: &Condition) -> Result<AgentVerdict<Rational>> {
        if c.notion.is_bundle_local() {
            self.bundle(agent, alloc.bundle(agent), c)
        } else {
            agent_verdict(self.inst, alloc, agent, c.notion, &c.alpha, self.oracle)
        }
    }
}

/// Any allocation giving `bundle` to `agent`.
fn completion(inst: &Instance, agent: usize, bundle: GoodSet) -> Allocation {
    let n = inst.agents();
    let mut bundles = vec![GoodSet::EMPTY; n];
    bundles[agent] = bundle;
    if n > 1 {
        bundles[(agent + 1) % n] = inst.all_goods().difference(bundle);
    }
    Allocation { bundles }
}

/// Re-derives both verdicts with the branch-and-bound oracle.
fn confirm(inst: &Instance, alloc: &Allocation, agent: usize, premise: &Condition, conclusion: &Condition) -> Result<bool> {
    let oracle = SolverOracle::default();
    let p = agent_verdict(inst, alloc, agent, premise.notion, &premise.alpha, &oracle)?;
    let c = agent_verdict(inst, alloc, agent, conclusion.notion, &conclusion.alpha, &oracle)?;
    Ok(p.satisfied
        && !c.satisfied
        && witness_reproduces(inst, alloc, conclusion.notion, &conclusion.alpha, &c)
        && (p.witness.is_none() || witness_reproduces(inst, alloc, premise.notion, &premise.alpha, &p)))
}

fn counterexample(
    trial: Option<usize>,
    inst: &Instance,
    alloc: Allocation,
    agent: usize,
    premise: (&Condition, AgentVerdict<Rational>),
    conclusion: (&Condition, AgentVerdict<Rational>),
) -> Result<Box<Counterexample>> {
    let verified = confirm(inst, &alloc, agent, premise.0, conclusion.0)?;
    Ok(Box::new(Counterexample {
        trial,
        instance: inst.clone(),
        allocation: alloc,
        agent,
        premise: premise.1,
        conclusion: conclusion.1,
        verified,
    }))
}

struct TrialOutcome {
    checked: u64,
    sampled: bool,
    counterexample: Option<Box<Counterexample>>,
}

/// Every allocation (or a sample), in a fixed order.
fn allocations(inst: &Instance, trial_rng: &mut impl Rng, mut visit: impl FnMut(&Allocation) -> Result<bool>) -> Result<(u64, bool)> {
    let (n, m) = (inst.agents(), inst.goods());
    let total = (n as u64).checked_pow(m as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT);
    let mut checked = 0;
    match total {
        Some(_) => {
            let oracle = SolverOracle::new(SearchBudget::new(u64::MAX));
            let req = Requirement::MinValue(Rational::zero());
            let mut failure = None;
            for_each_allocation(inst, &req, &oracle, SearchBudget::new(u64::MAX), false, |a| {
                checked += 1;
                match visit(a) {
                    Ok(true) => ControlFlow::Continue(()),
                    Ok(false) => ControlFlow::Break(()),
                    Err(e) => {
                        failure = Some(e);
                        ControlFlow::Break(())
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            Ok((checked, false))
        }
        None => {
            for _ in 0..SAMPLES {
                checked += 1;
                if !visit(&random_allocation(trial_rng, n, m))? {
                    break;
                }
            }
            Ok((checked, true))
        }
    }
}

fn implication_trial(
    trial: usize,
    inst: &Instance,
    rng: &mut impl Rng,
    premise: &Condition,
    conclusion: &Condition,
) -> Result<TrialOutcome> {
    let oracle = TableOracle::build(inst, inst.agents())?;
    let mut judge = Judge::new(inst, &oracle);
    let n = inst.agents();
    if premise.notion.is_bundle_local() && conclusion.notion.is_bundle_local() {
        let mut checked = 0;
        for agent in 0..n {
            for bundle in inst.all_goods().subsets() {
                checked += 1;
                let p = judge.bundle(agent, bundle, premise)?;
                if !p.satisfied {
                    continue;
                }
                let c = judge.bundle(agent, bundle, conclusion)?;
                if !c.satisfied {
                    let alloc = completion(inst, agent, bundle);
                    return Ok(TrialOutcome {
                        checked,
                        sampled: false,
                        counterexample: Some(counterexample(Some(trial), inst, alloc, agent, (premise, p), (conclusion, c))?),
                    });
                }
            }
        }
        return Ok(TrialOutcome {
            checked,
            sampled: false,
            counterexample: None,
        });
    }
    let mut found = None;
    let (checked, sampled) = allocations(inst, rng, |alloc| {
        for agent in 0..n {
            let p = judge.agent(alloc, agent, premise)?;
            if !p.satisfied {
                continue;
            }
            let c = judge.agent(alloc, agent, conclusion)?;
            if !c.satisfied {
                found = Some((alloc.clone(), agent, p, c));
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let counterexample = match found {
        Some((alloc, agent, p, c)) => Some(counterexample(Some(trial), inst, alloc, agent, (premise, p), (conclusion, c))?),
        None => None,
    };
    Ok(TrialOutcome {
        checked,
        sampled,
        counterexample,
    })
}

fn alpha_grid() -> Vec<Rational> {
    vec![ratio(1, 1), ratio(3, 4), ratio(2, 3), ratio(1, 2), ratio(1, 3), ratio(0, 1)]
}

fn alpha_trial(trial: usize, inst: &Instance, rng: &mut impl Rng) -> Result<TrialOutcome> {
    let oracle = TableOracle::build(inst, inst.agents())?;
    let mut judge = Judge::new(inst, &oracle);
    let grid = alpha_grid();
    let n = inst.agents();
    let mut checked = 0;
    // The satisfied factors must form a prefix of the descending grid's tail.
    let scan = |judge: &mut Judge<_>, alloc: &Allocation, agent: usize, notion: Notion| -> Result<Option<Box<Counterexample>>> {
        let mut held: Option<(Condition, AgentVerdict<Rational>)> = None;
        for alpha in &grid {
            let c = Condition::at(notion, alpha.clone());
            let v = judge.agent(alloc, agent, &c)?;
            match (&held, v.satisfied) {
                (Some((hc, hv)), false) => {
                    return Ok(Some(counterexample(Some(trial), inst, alloc.clone(), agent, (hc, hv.clone()), (&c, v))?));
                }
                (None, true) => held = Some((c, v)),
                _ => {}
            }
        }
        Ok(None)
    };
    for notion in Notion::ALL {
        if notion.is_bundle_local() {
            for agent in 0..n {
                for bundle in inst.all_goods().subsets() {
                    checked += 1;
                    let alloc = completion(inst, agent, bundle);
                    if let Some(cx) = scan(&mut judge, &alloc, agent, notion)? {
                        return Ok(TrialOutcome {
                            checked,
                            sampled: false,
                            counterexample: Some(cx),
                        });
                    }
                }
            }
        } else {
            for _ in 0..200 {
                checked += 1;
                let alloc = random_allocation(rng, n, inst.goods());
                for agent in 0..n {
                    if let Some(cx) = scan(&mut judge, &alloc, agent, notion)? {
                        return Ok(TrialOutcome {
                            checked,
                            sampled: true,
                            counterexample: Some(cx),
                        });
                    }
                }
            }
        }
    }
    Ok(TrialOutcome {
        checked,
        sampled: true,
        counterexample: None,
    })
}

fn run_trials(
    base: &TrialConfig,
    families: &[ValuationFamily],
    run: impl Fn(usize, &Instance, &mut rand_chacha::ChaCha8Rng) -> Result<TrialOutcome> + Sync,
) -> Result<(u64, usize, Option<Box<Counterexample>>)> {
    let outcomes: Vec<Result<TrialOutcome>> = (0..base.trials)
        .into_par_iter()
        .map(|t| {
            let cfg = TrialConfig {
                family: families[t % families.len()],
                ..base.clone()
            };
            let inst = generate_instance(&cfg, t);
            // separate stream for allocation sampling
            let mut rng = cfg.rng(t + (1 << 32));
            run(t, &inst, &mut rng)
        })
        .collect();
    let mut checked = 0;
    let mut sampled = 0;
    for o in outcomes {
        let o = o?;
        checked += o.checked;
        sampled += o.sampled as usize;
        if o.counterexample.is_some() {
            return Ok((checked, sampled, o.counterexample));
        }
    }
    Ok((checked, sampled, None))
}

/// Checks `premise => conclusion` per agent on the instance stream of `cfg`.
/// Returns the first counterexample, by trial index.
pub fn verify_implication(premise: &Condition, conclusion: &Condition, cfg: &TrialConfig) -> Result<Option<Box<Counterexample>>> {
    let (_, _, cx) = run_trials(cfg, &[cfg.family], |t, inst, rng| {
        implication_trial(t, inst, rng, premise, conclusion)
    })?;
    Ok(cx)
}

fn non_implication(premise: &Condition, conclusion: &Condition, entry: &str, allocation: usize) -> Result<(u64, Option<Box<Counterexample>>)> {
    let entry = catalog::entry(entry).ok_or_else(|| Error::Unsupported(format!("no fixture {entry}")))?;
    let inst = &entry.instance;
    let alloc = &entry.allocations[allocation];
    let oracle = SolverOracle::default();
    let mut judge = Judge::new(inst, &oracle);
    for agent in 0..inst.agents() {
        if !judge.agent(alloc, agent, premise)?.satisfied {
            return Ok((1, None));
        }
    }
    for agent in 0..inst.agents() {
        let c = judge.agent(alloc, agent, conclusion)?;
        if !c.satisfied {
            let p = judge.agent(alloc, agent, premise)?;
            return Ok((1, Some(counterexample(None, inst, alloc.clone(), agent, (premise, p), (conclusion, c))?)));
        }
    }
    Ok((1, None))
}

/// Runs one claim with `trials` random instances (ignored for fixture claims).
pub fn verify_claim(claim: &Claim, seed: u64, trials: usize) -> Result<ClaimReport> {
    let (trials, checked, sampled, cx) = match &claim.kind {
        ClaimKind::Implication {
            premise,
            conclusion,
            families,
            agents,
            goods,
        } => {
            let base = TrialConfig::new(families[0], *agents, *goods, seed, trials);
            let (checked, sampled, cx) = run_trials(&base, families, |t, inst, rng| {
                implication_trial(t, inst, rng, premise, conclusion)
            })?;
            (trials, checked, sampled, cx)
        }
        ClaimKind::AlphaMonotone { families, agents, goods } => {
            let base = TrialConfig::new(families[0], *agents, *goods, seed, trials);
            let (checked, sampled, cx) = run_trials(&base, families, alpha_trial)?;
            (trials, checked, sampled, cx)
        }
        ClaimKind::NonImplication {
            premise,
            conclusion,
            entry,
            allocation,
        } => {
            let (checked, cx) = non_implication(premise, conclusion, entry, *allocation)?;
            (1, checked, 0, cx)
        }
    };
    let status = if cx.is_some() {
        ClaimStatus::Counterexample
    } else {
        ClaimStatus::Pass
    };
    let as_expected = match (claim.expectation, &cx) {
        (Expectation::Holds, None) => true,
        (Expectation::Refuted, Some(c)) => c.verified,
        _ => false,
    };
    let caveat = (sampled > 0 && !matches!(claim.kind, ClaimKind::AlphaMonotone { .. })).then(|| {
        format!("{sampled} of {trials} trials sampled {SAMPLES} allocations instead of enumerating all")
    });
    Ok(ClaimReport {
        id: claim.id,
        statement: claim.statement.clone(),
        expectation: claim.expectation,
        status,
        as_expected,
        trials,
        checked,
        sampled_trials: sampled,
        caveat,
        counterexample: cx,
    })
}

/// Runs the claims in order.
pub fn verify_claims(claims: &[Claim], seed: u64, trials: usize) -> Result<VerificationReport> {
    let reports = claims
        .iter()
        .map(|c| verify_claim(c, seed, trials))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        seed,
        trials,
        all_as_expected: reports.iter().all(|r| r.as_expected),
        claims: reports,
    })
}

/// Minimum agent values over the MMA1 and MMAX allocations of the
/// `n + 1`-agent, `2n + 1`-good instance with `n` big goods.
#[derive(Debug, Clone, Serialize)]
pub struct EgalitarianReport {
    pub n: usize,
    pub allocations: u64,
    pub mma1_allocations: u64,
    pub mma1_min_value: Option<String>,
    /// `ceil(n / 2)`
    pub mma1_bound: usize,
    pub mmax_allocations: u64,
    pub mmax_min_value: Option<String>,
    /// `n`
    pub mmax_bound: usize,
    /// Smallest agent value in the EF1 fixture allocation.
    pub ef1_fixture_min_value: String,
    pub ef1_fixture_is_ef1: bool,
    pub holds: bool,
}

pub fn verify_egalitarian_bounds(n: usize) -> Result<EgalitarianReport> {
    if n == 0 || n > 3 {
        return Err(Error::Unsupported(format!("exhaustive check needs 1 <= n <= 3, got {n}")));
    }
    let inst = catalog::ef1_floor_instance(n);
    let oracle = TableOracle::build(&inst, inst.agents())?;
    let unbounded = SearchBudget::new(u64::MAX);
    let min_value = |a: &Allocation| (0..inst.agents()).map(|i| inst.value(i, a.bundle(i))).min().expect("agents");
    let scan = |notion| -> Result<(u64, Option<Rational>)> {
        let mut count = 0;
        let mut low: Option<Rational> = None;
        for_each_allocation(&inst, &Requirement::exact(notion), &oracle, unbounded, true, |a| {
            count += 1;
            let v = min_value(a);
            if low.as_ref().is_none_or(|l| v < *l) {
                low = Some(v);
            }
            ControlFlow::Continue(())
        })?;
        Ok((count, low))
    };
    let (mma1_allocations, mma1_low) = scan(Notion::Mma1)?;
    let (mmax_allocations, mmax_low) = scan(Notion::Mmax)?;
    let fixture = catalog::ef1_floor_allocation(n);
    let ef1 = crate::fairness::check(&inst, &fixture, Notion::Ef1, &Rational::one(), &oracle)?.satisfied;
    let mma1_bound = n.div_ceil(2);
    let at_least = |low: &Option<Rational>, bound: usize| {
        low.as_ref().is_none_or(|l| *l >= Rational::from_integer(bound.into()))
    };
    let holds = at_least(&mma1_low, mma1_bound) && at_least(&mmax_low, n) && ef1;
    Ok(EgalitarianReport {
        n,
        allocations: ((n + 1) as u64).pow((2 * n + 1) as u32),
        mma1_allocations,
        mma1_min_value: mma1_low.map(|v| v.to_string()),
        mma1_bound,
        mmax_allocations,
        mmax_min_value: mmax_low.map(|v| v.to_string()),
        mmax_bound: n,
        ef1_fixture_min_value: min_value(&fixture).to_string(),
        ef1_fixture_is_ef1: ef1,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_are_unique() {
        let all = claims();
        let mut ids: Vec<_> = all.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
    }

    #[test]
    fn fixture_non_implications_verify() {
        for c in claims().iter().filter(|c| matches!(c.kind, ClaimKind::NonImplication { .. })) {
            let r = verify_claim(c, 0, 1).unwrap();
            assert!(r.as_expected, "{}", c.id);
        }
    }

    #[test]
    fn few_trials_of_each_implication() {
        for c in claims().iter().filter(|c| !matches!(c.kind, ClaimKind::NonImplication { .. })) {
            let r = verify_claim(c, 1, 8).unwrap();
            if c.expectation == Expectation::Holds {
                assert_eq!(r.status, ClaimStatus::Pass, "{}: {:?}", c.id, r.counterexample);
            }
        }
    }

    #[test]
    fn scaled_mms_claim_fails_on_unit_goods() {
        let inst = Instance::additive(vec![vec![ratio(1, 1); 9]; 2]).unwrap();
        let alloc = Allocation::from_labels([vec![1, 2], vec![3, 4, 5, 6, 7, 8, 9]], 9).unwrap();
        let half = ratio(1, 2);
        assert!(confirm(&inst, &alloc, 0, &Condition::at(Notion::Mms, half.clone()), &Condition::at(Notion::Mma1, half)).unwrap());
    }

    #[test]
    fn egalitarian_bounds_small() {
        let r = verify_egalitarian_bounds(2).unwrap();
        assert!(r.holds);
        assert_eq!(r.mma1_bound, 1);
        assert_eq!(r.mmax_bound, 2);
        assert_eq!(r.ef1_fixture_min_value, "1");
    }
}
