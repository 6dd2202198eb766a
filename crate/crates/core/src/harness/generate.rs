//! Seeded random instances.
//!
//! Instance `index` of a config is drawn from its own ChaCha stream, so a
//! trial can be regenerated alone and parallel runs match sequential ones.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Allocation, GoodSet};
use crate::Valuation;
use crate::{Instance, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValuationFamily {
    Additive,
    BinaryAdditive,
    /// Fractionally subadditive (max of additive clauses); usually not submodular.
    SubadditiveTable,
    /// Weighted coverage functions.
    SubmodularTable,
    /// Fractionally subadditive plus a positive additive term.
    StrictlyIncreasingSubadditiveTable,
}

impl ValuationFamily {
    pub const ALL: [ValuationFamily; 5] = [
        ValuationFamily::Additive,
        ValuationFamily::BinaryAdditive,
        ValuationFamily::SubadditiveTable,
        ValuationFamily::SubmodularTable,
        ValuationFamily::StrictlyIncreasingSubadditiveTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ValuationFamily::Additive => "additive",
            ValuationFamily::BinaryAdditive => "binary-additive",
            ValuationFamily::SubadditiveTable => "subadditive-table",
            ValuationFamily::SubmodularTable => "submodular-table",
            ValuationFamily::StrictlyIncreasingSubadditiveTable => "strictly-increasing-subadditive-table",
        }
    }

    /// Whether a valuation belongs to the family.
    pub fn admits(self, v: &Valuation) -> bool {
        let c = v.class();
        match self {
            ValuationFamily::Additive => c.additive,
            ValuationFamily::BinaryAdditive => c.binary_additive,
            ValuationFamily::SubadditiveTable => c.subadditive,
            ValuationFamily::SubmodularTable => c.submodular,
            ValuationFamily::StrictlyIncreasingSubadditiveTable => c.subadditive && c.strictly_increasing,
        }
    }
}

impl fmt::Display for ValuationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ValuationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ValuationFamily::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::Parse {
                path: "family".into(),
                message: format!("unknown valuation family {s:?}"),
            })
    }
}

/// Instance stream parameters. Agent and good counts are drawn uniformly
/// from the inclusive ranges per instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub family: ValuationFamily,
    pub agents: (usize, usize),
    pub goods: (usize, usize),
    /// Values are `p/q` with `1 <= q <= max_denominator`, `0 <= p <= q`.
    pub max_denominator: u32,
    pub seed: u64,
    pub trials: usize,
}

impl TrialConfig {
    pub fn new(family: ValuationFamily, agents: (usize, usize), goods: (usize, usize), seed: u64, trials: usize) -> Self {
        TrialConfig {
            family,
            agents,
            goods,
            max_denominator: 64,
            seed,
            trials,
        }
    }

    /// RNG for trial `index`.
    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

fn value(rng: &mut impl Rng, max_denominator: u32) -> Rational {
    let q = rng.random_range(1..=max_denominator.max(1)) as i64;
    let p = rng.random_range(0..=q);
    crate::ratio(p, q)
}

fn positive(rng: &mut impl Rng, max_denominator: u32) -> Rational {
    let q = rng.random_range(1..=max_denominator.max(1)) as i64;
    let p = rng.random_range(1..=q);
    crate::ratio(p, q)
}

/// A weighted coverage function: good `j` covers a random non-empty subset
/// of a small universe, and a bundle is worth the weight of what it covers.
fn coverage(rng: &mut impl Rng, m: usize, max_denominator: u32) -> Valuation {
    let universe = (m + 2).min(20);
    let weights: Vec<Rational> = (0..universe).map(|_| positive(rng, max_denominator)).collect();
    let covers: Vec<u32> = (0..m)
        .map(|_| loop {
            let c: u32 = (0..universe).filter(|_| rng.random_bool(0.3)).fold(0, |acc, u| acc | 1 << u);
            if c != 0 {
                break c;
            }
        })
        .collect();
    Valuation::table_from_fn(m, |s| {
        let covered = s.iter().fold(0u32, |acc, g| acc | covers[g]);
        (0..universe)
            .filter(|u| covered >> u & 1 == 1)
            .map(|u| weights[u].clone())
            .sum()
    })
    .expect("coverage functions are monotone")
}

/// Max of 2 or 3 random additive clauses, plus `extra` per good.
fn fractionally_subadditive(rng: &mut impl Rng, m: usize, max_denominator: u32, extra: &[Rational]) -> Valuation {
    let clauses = rng.random_range(2..=3);
    let weights: Vec<Vec<Rational>> = (0..clauses)
        .map(|_| (0..m).map(|_| value(rng, max_denominator)).collect())
        .collect();
    Valuation::table_from_fn(m, |s| {
        let base = weights
            .iter()
            .map(|w| s.iter().map(|g| w[g].clone()).sum::<Rational>())
            .max()
            .unwrap_or_default();
        s.iter().fold(base, |acc, g| acc + &extra[g])
    })
    .expect("clause maxima are monotone")
}

fn valuation(family: ValuationFamily, rng: &mut impl Rng, m: usize, max_denominator: u32) -> Valuation {
    match family {
        ValuationFamily::Additive => {
            Valuation::additive((0..m).map(|_| value(rng, max_denominator)).collect()).expect("non-negative")
        }
        ValuationFamily::BinaryAdditive => Valuation::additive(
            (0..m)
                .map(|_| crate::ratio(rng.random_bool(0.5) as i64, 1))
                .collect(),
        )
        .expect("non-negative"),
        ValuationFamily::SubmodularTable => coverage(rng, m, max_denominator),
        ValuationFamily::SubadditiveTable => {
            fractionally_subadditive(rng, m, max_denominator, &vec![Rational::default(); m])
        }
        ValuationFamily::StrictlyIncreasingSubadditiveTable => {
            let extra: Vec<Rational> = (0..m).map(|_| positive(rng, max_denominator)).collect();
            fractionally_subadditive(rng, m, max_denominator, &extra)
        }
    }
}

/// Instance `index` of the stream described by `cfg`.
///
/// Draws are rejected until every good is worth something to some agent.
pub fn generate_instance(cfg: &TrialConfig, index: usize) -> Instance {
    let mut rng = cfg.rng(index);
    let n = rng.random_range(cfg.agents.0..=cfg.agents.1.max(cfg.agents.0));
    let m = rng.random_range(cfg.goods.0..=cfg.goods.1.max(cfg.goods.0));
    loop {
        let valuations: Vec<Valuation> = (0..n)
            .map(|_| valuation(cfg.family, &mut rng, m, cfg.max_denominator))
            .collect();
        if let Ok(inst) = Instance::new(valuations) {
            return inst;
        }
    }
}

/// A uniformly random allocation of `m` goods to `n` agents.
pub fn random_allocation(rng: &mut impl Rng, n: usize, m: usize) -> Allocation {
    let owner: Vec<usize> = (0..m).map(|_| rng.random_range(0..n)).collect();
    Allocation::from_assignment(&owner, n)
}

/// A uniformly random subset of `goods`.
pub fn random_bundle(rng: &mut impl Rng, goods: GoodSet) -> GoodSet {
    goods.iter().filter(|_| rng.random_bool(0.5)).collect()
}
